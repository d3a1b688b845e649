#include "app.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mokw/datasets.hpp"
#include "mokw/errors.hpp"
#include "mokw/selection.hpp"
#include "plot.hpp"
#include "report.hpp"

namespace mokw::cli {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kDefaultSeed = 20160101;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class F>
auto usage_guard(F&& f) {
    try {
        return f();
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
}

fs::path output_path(const std::string& p) {
    fs::path path(p);
    if (path.is_relative()) {
        if (const char* dir = std::getenv("MOKW_OUTPUT_DIR"); dir && *dir) path = fs::path(dir) / path;
    }
    return path;
}

void write_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
    }
    std::ofstream f(path, std::ios::binary);
    f << text;
    f.flush();
    if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
}

void emit(const std::string& out_file, const std::string& text, std::ostream& out) {
    if (out_file.empty())
        out << text;
    else
        write_file(output_path(out_file), text);
}

struct Common {
    std::string data;
    std::size_t starts = 20;
    std::uint64_t seed = kDefaultSeed;
    bool allow_boundary = false;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--data", c.data, "Data file, or an embedded sample: nicotine | carbon")->required();
    sub->add_option("--starts", c.starts, "Number of optimizer starts")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--seed", c.seed, "Seed for the start points")->capture_default_str();
    sub->add_flag("--allow-boundary", c.allow_boundary,
                  "Rank fits on the parameter-range face by loglik alongside interior fits");
}

FitOptions fit_options(const Common& c) {
    FitOptions o;
    o.starts = c.starts;
    o.seed = c.seed;
    o.prefer_interior = !c.allow_boundary;
    return o;
}

Provenance provenance(const Dataset& d, const Common& c) {
    return {d.name, d.source, c.seed, c.starts, !c.allow_boundary};
}

Dataset load(const std::string& src) {
    return usage_guard([&] { return ingest(src); });
}

std::vector<ComparisonEntry> fit_all(const std::vector<ModelSpec>& specs, const Dataset& d, const Common& c,
                                     const std::string& format) {
    std::vector<std::future<FitReport>> jobs;
    for (const auto& s : specs)
        jobs.push_back(std::async(std::launch::async, [&, s] {
            return make_report(fit_mle(s, d.values, fit_options(c)), provenance(d, c), format);
        }));
    std::vector<ComparisonEntry> entries;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        ComparisonEntry e{specs[i], std::nullopt, {}};
        try {
            e.report = jobs[i].get();
        } catch (const std::exception& ex) {
            e.error = ex.what();
        }
        entries.push_back(std::move(e));
    }
    return entries;
}

std::vector<ModelSpec> parse_models(const std::vector<std::string>& keys) {
    std::vector<ModelSpec> specs;
    for (const auto& k : keys) specs.push_back(usage_guard([&] { return parse_model(k); }));
    return specs;
}

ModelSpec model_from_flags(const std::string& family, const std::string& baseline, const std::string& shape) {
    return usage_guard([&] {
        ModelSpec s;
        s.family = parse_family(family);
        s.baseline = parse_baseline_kind(baseline);
        s.shape = parse_ew_shape(shape);
        return s;
    });
}

const std::vector<std::string> kBaselines = {"exp", "weibull", "lomax", "frechet", "gompertz",
                                             "ew",  "emw",     "pln",   "eep",     "ep"};
const std::vector<std::string> kShapes = {"linear", "square", "pareto", "gompertz"};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Marshall-Olkin Kumaraswamy-G distributions: fitting, comparison, plots and sampling", "mokw"};
    app.require_subcommand(1);
    app.footer("Exit status: 0 success, 1 computational failure, 2 usage error.\n"
               "MOKW_OUTPUT_DIR sets the directory for relative output paths.");

    // fit
    Common fc;
    std::string family, baseline, shape = "linear", format = "text", out_file;
    auto* fit = app.add_subcommand("fit", "Maximum likelihood fit of one model");
    fit->add_option("--family", family, "mokw | kwmo")->required()->check(CLI::IsMember({"mokw", "kwmo"}));
    fit->add_option("--baseline", baseline, "Baseline distribution")->required()->check(CLI::IsMember(kBaselines));
    fit->add_option("--shape", shape, "Extended-Weibull shape function")->capture_default_str()->check(CLI::IsMember(kShapes));
    add_common(fit, fc);
    fit->add_option("--format", format, "text | json")->capture_default_str()->check(CLI::IsMember({"text", "json"}));
    fit->add_option("--out", out_file, "Write the report here instead of stdout");

    // compare
    Common cc;
    std::vector<std::string> models;
    std::string c_format = "text", c_out;
    auto* cmp = app.add_subcommand("compare", "Fit several models to one sample and tabulate the criteria");
    cmp->add_option("--model", models,
                    "family:baseline[:shape], repeatable or comma separated "
                    "(default: kwmo:frechet,mokw:frechet,kwmo:exp,mokw:exp)")
        ->delimiter(',');
    add_common(cmp, cc);
    cmp->add_option("--format", c_format, "text | json")->capture_default_str()->check(CLI::IsMember({"text", "json"}));
    cmp->add_option("--out", c_out, "Write the table here instead of stdout");

    // report
    std::string r_in, r_format = "text", r_out;
    auto* rep = app.add_subcommand("report", "Re-render a saved JSON fit report");
    rep->add_option("--in", r_in, "Fit report (JSON)")->required();
    rep->add_option("--format", r_format, "text | json")->capture_default_str()->check(CLI::IsMember({"text", "json"}));
    rep->add_option("--out", r_out, "Write here instead of stdout");

    // plot
    Common pc;
    std::vector<std::string> p_models, p_reports;
    std::string p_dir, p_name;
    std::size_t p_bins = 0;
    auto* plot = app.add_subcommand("plot", "Histogram and empirical cdf with fitted overlays (SVG + curve table)");
    plot->add_option("--model", p_models, "Model to fit and overlay, family:baseline[:shape]")->delimiter(',');
    plot->add_option("--report", p_reports, "Overlay the estimate from a saved JSON fit report");
    add_common(plot, pc);
    plot->add_option("--bins", p_bins, "Histogram bins (0 = Sturges)")->capture_default_str();
    plot->add_option("--out-dir", p_dir, "Output directory (default: MOKW_OUTPUT_DIR or .)");
    plot->add_option("--name", p_name, "File stem (default: dataset name)");

    // sample
    std::string s_family, s_baseline, s_shape = "linear", s_out;
    std::vector<double> s_theta;
    std::size_t s_n = 0;
    std::uint64_t s_seed = kDefaultSeed;
    auto* smp = app.add_subcommand("sample", "Inversion draws from a model, one per line");
    smp->add_option("--family", s_family, "mokw | kwmo")->required()->check(CLI::IsMember({"mokw", "kwmo"}));
    smp->add_option("--baseline", s_baseline, "Baseline distribution")->required()->check(CLI::IsMember(kBaselines));
    smp->add_option("--shape", s_shape, "Extended-Weibull shape function")->capture_default_str()->check(CLI::IsMember(kShapes));
    smp->add_option("--theta", s_theta, "alpha,a,b,baseline parameters...")->required()->delimiter(',');
    smp->add_option("--n", s_n, "Number of draws")->required();
    smp->add_option("--seed", s_seed, "Random seed")->capture_default_str();
    smp->add_option("--out", s_out, "Write here instead of stdout");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        if (fit->parsed()) {
            const ModelSpec spec = model_from_flags(family, baseline, shape);
            const Dataset d = load(fc.data);
            FitReport r;
            try {
                r = make_report(fit_mle(spec, d.values, fit_options(fc)), provenance(d, fc), format);
            } catch (const std::exception& e) {
                err << "fit failed for " << spec.name() << ": " << e.what() << "\n";
                return kExitFailure;
            }
            emit(out_file, format == "json" ? to_json(r).dump(2) + "\n" : render_text(r), out);
            if (r.fit.boundary) err << "warning: " << spec.name() << " estimate lies on the parameter-range face\n";
            return kExitOk;
        }

        if (cmp->parsed()) {
            if (models.empty()) models = {"kwmo:frechet", "mokw:frechet", "kwmo:exp", "mokw:exp"};
            const auto specs = parse_models(models);
            const Dataset d = load(cc.data);
            const auto entries = fit_all(specs, d, cc, c_format);
            std::vector<FitResult> ok;
            for (const auto& e : entries)
                if (e.report) ok.push_back(e.report->fit);
            std::optional<ComparisonTable> table;
            if (!ok.empty()) table = compare(ok, d.values);
            const Provenance prov = provenance(d, cc);
            const ComparisonTable* tp = table ? &*table : nullptr;
            emit(c_out,
                 c_format == "json" ? comparison_to_json(entries, tp, prov).dump(2) + "\n"
                                    : render_comparison(entries, tp, prov),
                 out);
            int code = kExitOk;
            for (const auto& e : entries) {
                if (e.report) continue;
                err << "fit failed for " << e.spec.name() << ": " << e.error << "\n";
                code = kExitFailure;
            }
            return code;
        }

        if (rep->parsed()) {
            const FitReport r = usage_guard([&] {
                std::ifstream f(r_in);
                if (!f) throw std::runtime_error("cannot open '" + r_in + "'");
                return report_from_json(nlohmann::json::parse(f));
            });
            emit(r_out, r_format == "json" ? to_json(r).dump(2) + "\n" : render_text(r), out);
            return kExitOk;
        }

        if (plot->parsed()) {
            if (p_models.empty() && p_reports.empty()) throw UsageError("plot needs at least one --model or --report");
            const auto specs = parse_models(p_models);
            const Dataset d = load(pc.data);
            std::vector<Overlay> overlays;
            for (const auto& path : p_reports) {
                const FitReport r = usage_guard([&] {
                    std::ifstream f(path);
                    if (!f) throw std::runtime_error("cannot open '" + path + "'");
                    return report_from_json(nlohmann::json::parse(f));
                });
                if (r.fit.data_hash != data_fingerprint(d.values))
                    throw UsageError("report '" + path + "' was fitted to a different sample");
                overlays.push_back({r.fit.spec.name(), fitted_distribution(r.fit.spec, r.fit.theta_hat.values)});
            }
            int code = kExitOk;
            for (const auto& e : fit_all(specs, d, pc, "json")) {
                if (!e.report) {
                    err << "fit failed for " << e.spec.name() << ": " << e.error << "\n";
                    code = kExitFailure;
                    continue;
                }
                overlays.push_back({e.spec.name(), fitted_distribution(e.spec, e.report->fit.theta_hat.values)});
            }
            if (overlays.empty()) return kExitFailure;
            const PlotData pd = make_plot_data(d.values, overlays, p_bins);
            const fs::path dir = output_path(p_dir);
            const std::string stem = p_name.empty() ? d.name : p_name;
            const fs::path svg = dir / (stem + ".svg"), tsv = dir / (stem + ".tsv");
            write_file(svg, render_svg(pd, d.name));
            write_file(tsv, render_curve_table(pd));
            out << svg.string() << "\n" << tsv.string() << "\n";
            return code;
        }

        if (smp->parsed()) {
            const ModelSpec spec = model_from_flags(s_family, s_baseline, s_shape);
            const auto dist = usage_guard([&] {
                if (s_theta.size() != spec.param_count())
                    throw std::invalid_argument(spec.name() + " takes " + std::to_string(spec.param_count()) +
                                                " parameters (alpha, a, b, baseline...)");
                make_parameters(spec, s_theta);
                return fitted_distribution(spec, s_theta);
            });
            std::string text;
            char buf[40];
            for (double x : dist.sample(s_n, s_seed)) {
                std::snprintf(buf, sizeof buf, "%.17g\n", x);
                text += buf;
            }
            emit(s_out, text, out);
            return kExitOk;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}

}  // namespace mokw::cli
