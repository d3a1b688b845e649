#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "mokw/errors.hpp"

namespace mokw::cli {

using nlohmann::json;

namespace {

// JSON has no inf/nan; those travel as strings.
json num(double x) {
    if (std::isfinite(x)) return x;
    if (std::isnan(x)) return "nan";
    return x > 0 ? "inf" : "-inf";
}

double num(const json& j) {
    if (j.is_number()) return j.get<double>();
    const auto s = j.get<std::string>();
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    if (s == "nan") return NAN;
    throw std::invalid_argument("bad number '" + s + "'");
}

json vec(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(num(x));
    return a;
}

std::vector<double> vec(const json& j) {
    std::vector<double> v;
    for (const auto& x : j) v.push_back(num(x));
    return v;
}

json mat(const Matrix& m) {
    json a = json::array();
    for (std::size_t i = 0; i < m.rows; ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < m.cols; ++k) row.push_back(num(m(i, k)));
        a.push_back(std::move(row));
    }
    return a;
}

Matrix mat(const json& j) {
    if (j.empty()) return {};
    Matrix m(j.size(), j[0].size());
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t k = 0; k < m.cols; ++k) m(i, k) = num(j[i][k]);
    return m;
}

std::string hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

json model_json(const ModelSpec& s) {
    return {{"family", to_string(s.family)},
            {"baseline", short_name(s.baseline)},
            {"shape", to_string(s.shape)},
            {"name", s.name()}};
}

ModelSpec model_from(const json& j) {
    ModelSpec s;
    s.family = parse_family(j.at("family").get<std::string>());
    s.baseline = parse_baseline_kind(j.at("baseline").get<std::string>());
    s.shape = parse_ew_shape(j.at("shape").get<std::string>());
    return s;
}

json provenance_json(const Provenance& p, std::size_t n, std::uint64_t hash) {
    return {{"dataset", p.dataset}, {"source", p.source},          {"n", n},
            {"data_hash", hex(hash)}, {"seed", p.seed},            {"starts", p.starts},
            {"prefer_interior", p.prefer_interior}};
}

std::string pad(const std::string& s, std::size_t w, bool left = false) {
    if (s.size() >= w) return s;
    return left ? s + std::string(w - s.size(), ' ') : std::string(w - s.size(), ' ') + s;
}

}  // namespace

std::string model_key(const ModelSpec& spec) {
    std::string k = std::string(to_string(spec.family)) + ":" + std::string(short_name(spec.baseline));
    if (spec.baseline == BaselineKind::ExtendedWeibull) k += ":" + std::string(to_string(spec.shape));
    return k;
}

ModelSpec parse_model(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() < 2 || parts.size() > 3) throw InvalidParameter("model must be family:baseline[:shape], got '" + text + "'");
    ModelSpec s;
    s.family = parse_family(parts[0]);
    s.baseline = parse_baseline_kind(parts[1]);
    if (parts.size() == 3) {
        if (s.baseline != BaselineKind::ExtendedWeibull) throw InvalidParameter("shape applies only to the ew baseline");
        s.shape = parse_ew_shape(parts[2]);
    }
    return s;
}

FitReport make_report(FitResult fit, Provenance provenance, std::string format) {
    FitReport r;
    r.criteria = criteria(fit.theta_hat.values.size(), fit.n, fit.loglik);
    r.fit = std::move(fit);
    r.provenance = std::move(provenance);
    r.format = std::move(format);
    return r;
}

json to_json(const FitReport& r) {
    const FitResult& f = r.fit;
    json params = json::array();
    for (std::size_t i = 0; i < f.theta_hat.values.size(); ++i) {
        json p = {{"name", f.theta_hat.names[i]}, {"value", num(f.theta_hat.values[i])}};
        p["positive"] = static_cast<bool>(f.theta_hat.positive[i]);
        if (f.se) {
            p["se"] = num((*f.se)[i]);
            p["ci_low"] = num(f.ci_low[i]);
            p["ci_high"] = num(f.ci_high[i]);
        } else {
            p["se"] = nullptr;
        }
        params.push_back(std::move(p));
    }
    json trace = json::array();
    for (const auto& t : f.trace)
        trace.push_back({{"index", t.index},
                         {"loglik", num(t.loglik)},
                         {"evaluations", t.evaluations},
                         {"converged", t.converged},
                         {"boundary", t.boundary}});
    const CriteriaSet& c = r.criteria;
    return {
        {"schema", kReportSchema},
        {"schema_version", kSchemaVersion},
        {"format", r.format},
        {"model", model_json(f.spec)},
        {"provenance", provenance_json(r.provenance, f.n, f.data_hash)},
        {"fit",
         {{"parameters", params},
          {"loglik", num(f.loglik)},
          {"score", vec(f.score_at_opt)},
          {"converged", f.converged},
          {"boundary", f.boundary},
          {"iterations", f.iterations},
          {"vcov_indefinite", f.vcov_indefinite},
          {"ill_conditioned", f.ill_conditioned},
          {"condition_number", num(f.condition_number)},
          {"information", mat(f.information)},
          {"vcov", mat(f.vcov)},
          {"trace", trace}}},
        {"criteria",
         {{"k", c.k},
          {"n", c.n},
          {"loglik", num(c.loglik)},
          {"aic", num(c.aic)},
          {"bic", num(c.bic)},
          {"caic", num(c.caic)},
          {"hqic", num(c.hqic)}}},
    };
}

FitReport report_from_json(const json& j) {
    if (j.value("schema", "") != kReportSchema) throw std::invalid_argument("not a fit report");
    if (j.value("schema_version", 0) != kSchemaVersion)
        throw std::invalid_argument("unsupported fit report version " + std::to_string(j.value("schema_version", 0)));
    FitReport r;
    r.format = j.at("format").get<std::string>();

    const json& pj = j.at("provenance");
    r.provenance.dataset = pj.at("dataset").get<std::string>();
    r.provenance.source = pj.at("source").get<std::string>();
    r.provenance.seed = pj.at("seed").get<std::uint64_t>();
    r.provenance.starts = pj.at("starts").get<std::size_t>();
    r.provenance.prefer_interior = pj.at("prefer_interior").get<bool>();

    FitResult& f = r.fit;
    f.spec = model_from(j.at("model"));
    f.n = pj.at("n").get<std::size_t>();
    f.data_hash = std::stoull(pj.at("data_hash").get<std::string>(), nullptr, 16);

    const json& fj = j.at("fit");
    bool have_se = false;
    for (const auto& p : fj.at("parameters")) {
        f.theta_hat.names.push_back(p.at("name").get<std::string>());
        f.theta_hat.values.push_back(num(p.at("value")));
        f.theta_hat.positive.push_back(p.at("positive").get<bool>());
        if (!p.at("se").is_null()) {
            if (!have_se) f.se.emplace();
            have_se = true;
            f.se->push_back(num(p.at("se")));
            f.ci_low.push_back(num(p.at("ci_low")));
            f.ci_high.push_back(num(p.at("ci_high")));
        }
    }
    f.loglik = num(fj.at("loglik"));
    f.score_at_opt = vec(fj.at("score"));
    f.converged = fj.at("converged").get<bool>();
    f.boundary = fj.at("boundary").get<bool>();
    f.iterations = fj.at("iterations").get<int>();
    f.vcov_indefinite = fj.at("vcov_indefinite").get<bool>();
    f.ill_conditioned = fj.at("ill_conditioned").get<bool>();
    f.condition_number = num(fj.at("condition_number"));
    f.information = mat(fj.at("information"));
    f.vcov = mat(fj.at("vcov"));
    for (const auto& t : fj.at("trace")) {
        f.trace.push_back({t.at("index").get<std::size_t>(), num(t.at("loglik")), t.at("evaluations").get<int>(),
                           t.at("converged").get<bool>(), t.at("boundary").get<bool>()});
    }

    const json& cj = j.at("criteria");
    r.criteria = {cj.at("k").get<std::size_t>(), cj.at("n").get<std::size_t>(), num(cj.at("loglik")),
                  num(cj.at("aic")),             num(cj.at("bic")),             num(cj.at("caic")),
                  num(cj.at("hqic"))};
    return r;
}

std::string render_text(const FitReport& r) {
    const FitResult& f = r.fit;
    std::ostringstream o;
    o << "model     " << f.spec.name() << "\n";
    o << "data      " << r.provenance.dataset << " (n = " << f.n << ", " << r.provenance.source << ")\n";
    o << "starts    " << r.provenance.starts << ", seed " << r.provenance.seed << "\n\n";
    o << pad("param", 8, true) << pad("estimate", 14) << pad("se", 14) << pad("95% ci", 30) << "\n";
    for (std::size_t i = 0; i < f.theta_hat.values.size(); ++i) {
        o << pad(f.theta_hat.names[i], 8, true) << pad(fmt("%.6g", f.theta_hat.values[i]), 14);
        if (f.se) {
            o << pad(fmt("%.4g", (*f.se)[i]), 14)
              << pad("(" + fmt("%.4g", f.ci_low[i]) + ", " + fmt("%.4g", f.ci_high[i]) + ")", 30);
        } else {
            o << pad("-", 14) << pad("-", 30);
        }
        o << "\n";
    }
    const CriteriaSet& c = r.criteria;
    o << "\nloglik    " << fmt("%.4f", f.loglik) << "\n";
    o << "AIC       " << fmt("%.4f", c.aic) << "\n";
    o << "BIC       " << fmt("%.4f", c.bic) << "\n";
    o << "CAIC      " << fmt("%.4f", c.caic) << "\n";
    o << "HQIC      " << fmt("%.4f", c.hqic) << "\n";
    if (!f.converged) o << "warning: optimizer did not meet its tolerance\n";
    if (f.boundary) o << "warning: estimate lies on the parameter-range face (limit of the family)\n";
    if (!f.se) o << "note: information matrix singular, standard errors omitted\n";
    if (f.vcov_indefinite) o << "note: information matrix not positive definite\n";
    if (f.ill_conditioned) o << "note: information condition number " << fmt("%.3g", f.condition_number) << "\n";
    return o.str();
}

json comparison_to_json(const std::vector<ComparisonEntry>& entries, const ComparisonTable* table,
                        const Provenance& provenance) {
    json rows = json::array();
    for (const auto& e : entries) {
        json row = {{"model", e.spec.name()}};
        if (e.report)
            row["report"] = to_json(*e.report);
        else
            row["error"] = e.error;
        rows.push_back(std::move(row));
    }
    json out = {{"schema", kComparisonSchema},
                {"schema_version", kSchemaVersion},
                {"dataset", provenance.dataset},
                {"seed", provenance.seed},
                {"rows", rows}};
    if (table) {
        const char* keys[] = {"aic", "bic", "caic", "hqic"};
        json best;
        for (int c = 0; c < 4; ++c) best[keys[c]] = table->rows[table->best[c]].model;
        out["best"] = best;
    }
    return out;
}

std::string render_comparison(const std::vector<ComparisonEntry>& entries, const ComparisonTable* table,
                              const Provenance& provenance) {
    std::vector<std::string> params;
    for (const auto& e : entries)
        for (const auto& n : e.spec.param_names())
            if (std::find(params.begin(), params.end(), n) == params.end()) params.push_back(n);

    // Successful entries map onto table rows in order.
    std::vector<int> row_of(entries.size(), -1);
    for (std::size_t i = 0, r = 0; i < entries.size(); ++i)
        if (entries[i].report) row_of[i] = static_cast<int>(r++);

    constexpr std::size_t w0 = 10, w = 22;
    std::ostringstream o;
    o << "data: " << provenance.dataset << ", seed " << provenance.seed << "\n\n";
    o << pad("", w0, true);
    for (const auto& e : entries) o << pad(e.spec.name(), w);
    o << "\n";

    auto cell = [&](std::size_t i, const std::string& name, int line) -> std::string {
        const auto& e = entries[i];
        if (!e.report) return line == 0 ? "failed" : "";
        const FitResult& f = e.report->fit;
        const auto& names = f.theta_hat.names;
        const auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) return line == 0 ? "-" : "";
        const auto k = static_cast<std::size_t>(it - names.begin());
        if (line == 0) return fmt("%.4g", f.theta_hat.values[k]);
        if (!f.se) return "";
        if (line == 1) return "(" + fmt("%.4g", (*f.se)[k]) + ")";
        return "(" + fmt("%.4g", f.ci_low[k]) + ", " + fmt("%.4g", f.ci_high[k]) + ")";
    };
    for (const auto& name : params) {
        for (int line = 0; line < 3; ++line) {
            o << pad(line == 0 ? name : "", w0, true);
            for (std::size_t i = 0; i < entries.size(); ++i) o << pad(cell(i, name, line), w);
            o << "\n";
        }
    }

    o << "\n" << pad("loglik", w0, true);
    for (std::size_t i = 0; i < entries.size(); ++i)
        o << pad(entries[i].report ? fmt("%.2f", entries[i].report->fit.loglik) : "-", w);
    o << "\n";
    const char* labels[] = {"AIC", "BIC", "CAIC", "HQIC"};
    for (int c = 0; c < 4; ++c) {
        o << pad(labels[c], w0, true);
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (row_of[i] < 0 || !table) {
                o << pad("-", w);
                continue;
            }
            const auto& cs = table->rows[static_cast<std::size_t>(row_of[i])].criteria;
            const double v = c == 0 ? cs.aic : c == 1 ? cs.bic : c == 2 ? cs.caic : cs.hqic;
            const bool best = table->is_best(static_cast<std::size_t>(row_of[i]), static_cast<Criterion>(c));
            o << pad(fmt("%.2f", v) + (best ? "*" : " "), w);
        }
        o << "\n";
    }

    bool notes = false;
    for (const auto& e : entries) {
        std::string msg;
        if (!e.report)
            msg = "fit failed: " + e.error;
        else if (e.report->fit.boundary)
            msg = "estimate on the parameter-range face";
        else if (!e.report->fit.se)
            msg = "singular information, no standard errors";
        if (msg.empty()) continue;
        if (!notes) o << "\n";
        notes = true;
        o << e.spec.name() << ": " << msg << "\n";
    }
    return o.str();
}

}  // namespace mokw::cli
