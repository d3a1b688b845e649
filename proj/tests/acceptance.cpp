// Acceptance run: one PASS/FAIL line per criterion, details indented below.
//
//   acceptance                 all criteria, exit 1 if any fails
//   acceptance --criterion N   just criterion N

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <functional>
#include <future>
#include <random>
#include <string>
#include <vector>

#include "mokw/analysis.hpp"
#include "mokw/datasets.hpp"
#include "mokw/estimation.hpp"
#include "mokw/family.hpp"
#include "mokw/quadrature.hpp"
#include "mokw/selection.hpp"
#include "mokw/special.hpp"
#include "oracles.hpp"

using namespace mokw;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> lines;

    void check(bool ok, const char* fmt, ...) __attribute__((format(printf, 3, 4)));
    void note(const char* fmt, ...) __attribute__((format(printf, 2, 3)));
};

std::string vformat(const char* fmt, va_list ap) {
    char buf[512];
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    return buf;
}

void Outcome::check(bool ok, const char* fmt, ...) {
    va_list ap;
    va_start(ap, fmt);
    lines.push_back(std::string(ok ? "ok   " : "FAIL ") + vformat(fmt, ap));
    va_end(ap);
    pass = pass && ok;
}

void Outcome::note(const char* fmt, ...) {
    va_list ap;
    va_start(ap, fmt);
    lines.push_back("     " + vformat(fmt, ap));
    va_end(ap);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double round2(double x) { return std::round(x * 100.0) / 100.0; }

// ---------------------------------------------------------------- reference fits

struct ReferenceRow {
    ModelSpec spec;
    std::vector<double> theta;  // (alpha, a, b, baseline...)
    double loglik, aic, bic, caic, hqic;
};

const ModelSpec kMokwFr{FamilyKind::Mokw, BaselineKind::Frechet};
const ModelSpec kKwmoFr{FamilyKind::Kwmo, BaselineKind::Frechet};
const ModelSpec kMokwE{FamilyKind::Mokw, BaselineKind::Exponential};
const ModelSpec kKwmoE{FamilyKind::Kwmo, BaselineKind::Exponential};

const std::vector<ReferenceRow> kNicotineRef = {
    {kKwmoFr, {0.075, 10.462, 75.085, 0.251, 16.270}, -155.49, 320.98, 340.21, 321.16, 328.64},
    {kMokwFr, {60.442, 1.176, 126.659, 0.303, 29.261}, -110.27, 230.54, 249.77, 230.72, 238.19},
    {kKwmoE, {21.214, 1.434, 1.959, 3.557}, -107.89, 223.78, 239.17, 223.89, 229.91},
    {kMokwE, {20.96, 1.511, 11.063, 0.586}, -106.61, 221.22, 236.61, 221.34, 227.35},
};

const std::vector<ReferenceRow> kCarbonRef = {
    {kKwmoFr, {17.222, 9.243, 19.203, 0.953, 0.051}, -144.83, 299.66, 312.69, 300.29, 304.94},
    {kMokwFr, {16.978, 6.777, 38.279, 0.522, 0.416}, -141.63, 293.26, 306.29, 293.89, 298.54},
    {kKwmoE, {3.899, 2.647, 4.571, 0.591}, -141.25, 290.50, 300.92, 290.92, 294.73},
    {kMokwE, {2.566, 3.226, 9.065, 0.295}, -141.09, 290.18, 300.60, 290.60, 294.40},
};

std::vector<FitResult> fit_table(const std::vector<ReferenceRow>& rows, const std::vector<double>& data) {
    std::vector<std::future<FitResult>> jobs;
    for (const auto& r : rows) jobs.push_back(std::async(std::launch::async, [&] { return fit_mle(r.spec, data); }));
    std::vector<FitResult> out;
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

void describe_fits(Outcome& o, const std::vector<ReferenceRow>& rows, const std::vector<FitResult>& fits,
                   const std::vector<double>& data) {
    o.note("%-8s %10s %10s %8s %14s %8s %s", "model", "fitted", "ref", "diff", "at ref. est.", "AIC", "flags");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& f = fits[i];
        double at_ref = kNaN;
        try {
            at_ref = loglik(rows[i].spec, rows[i].theta, data);
        } catch (const std::exception&) {
        }
        const auto c = criteria(f.theta_hat.values.size(), f.n, f.loglik);
        o.note("%-8s %10.3f %10.2f %+8.3f %14.3f %8.2f %s%s", rows[i].spec.name().c_str(), f.loglik, rows[i].loglik,
               f.loglik - rows[i].loglik, at_ref, c.aic, f.boundary ? "boundary " : "",
               f.se ? "" : "no-se");
    }
}

void check_recomputed_criteria(Outcome& o, const std::vector<ReferenceRow>& rows, std::size_t n) {
    double worst = 0.0;
    for (const auto& r : rows) {
        const auto c = criteria(r.spec.param_count(), n, r.loglik);
        for (double d : {c.aic - r.aic, c.bic - r.bic, c.caic - r.caic, c.hqic - r.hqic}) worst = std::max(worst, std::fabs(d));
    }
    o.check(worst <= 0.05, "criteria from (k, n, reference loglik) match the reference AIC/BIC/CAIC/HQIC: max |diff| %.4f <= 0.05",
            worst);
}

Outcome criterion1() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const auto data = embedded_dataset("nicotine").values;
    const auto fits = fit_table(kNicotineRef, data);
    const double secs = seconds_since(t0);
    describe_fits(o, kNicotineRef, fits, data);

    const auto& e = fits[3];
    const auto ce = criteria(4, e.n, e.loglik);
    o.check(e.loglik >= -106.7, "MOKw-E loglik %.3f >= -106.7", e.loglik);
    o.check(std::fabs(ce.aic - 221.22) <= 0.3, "MOKw-E AIC %.3f within 0.3 of 221.22", ce.aic);
    o.check(std::fabs(fits[1].loglik + 110.27) <= 0.5, "MOKw-Fr loglik %.3f within 0.5 of -110.27", fits[1].loglik);
    o.check(std::fabs(fits[2].loglik + 107.89) <= 0.5, "KwMO-E loglik %.3f within 0.5 of -107.89", fits[2].loglik);
    check_recomputed_criteria(o, kNicotineRef, data.size());
    const bool have_se = e.se.has_value();
    const double se_a = have_se ? (*e.se)[1] : kNaN;
    o.check(have_se && std::fabs(se_a / 0.515 - 1.0) <= 0.2, "MOKw-E SE(a) %.4f within 20%% of 0.515", se_a);
    o.check(secs < 60.0, "runtime %.1f s < 60 s", secs);
    return o;
}

Outcome criterion2() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const auto data = embedded_dataset("carbon").values;
    const auto fits = fit_table(kCarbonRef, data);
    const double secs = seconds_since(t0);
    describe_fits(o, kCarbonRef, fits, data);

    o.check(std::fabs(fits[3].loglik + 141.09) <= 0.5, "MOKw-E loglik %.3f within 0.5 of -141.09", fits[3].loglik);
    o.check(std::fabs(fits[1].loglik + 141.63) <= 0.5, "MOKw-Fr loglik %.3f within 0.5 of -141.63", fits[1].loglik);
    o.check(std::fabs(fits[0].loglik + 144.83) <= 0.5, "KwMO-Fr loglik %.3f within 0.5 of -144.83", fits[0].loglik);
    const auto table = compare(fits, data);
    o.check(table.best_by(Criterion::Aic) == 3, "MOKw-E has the smallest AIC (%.2f; reference 290.18)",
            table.rows[3].criteria.aic);
    std::vector<std::size_t> ours(4), ref(4);
    for (std::size_t i = 0; i < 4; ++i) ours[i] = ref[i] = i;
    std::sort(ours.begin(), ours.end(), [&](auto a, auto b) { return table.rows[a].criteria.aic < table.rows[b].criteria.aic; });
    std::sort(ref.begin(), ref.end(), [&](auto a, auto b) { return kCarbonRef[a].aic < kCarbonRef[b].aic; });
    std::string so, sp;
    for (std::size_t i = 0; i < 4; ++i) {
        so += (i ? " < " : "") + table.rows[ours[i]].model;
        sp += (i ? " < " : "") + kCarbonRef[ref[i]].spec.name();
    }
    o.note("AIC order, fitted: %s", so.c_str());
    o.note("AIC order, reference: %s", sp.c_str());
    check_recomputed_criteria(o, kCarbonRef, data.size());
    o.check(secs < 60.0, "runtime %.1f s < 60 s", secs);
    return o;
}

Outcome criterion3() {
    Outcome o;
    const auto c = criteria(4, 346, -106.61);
    o.check(round2(c.aic) == 221.22, "AIC %.2f == 221.22", round2(c.aic));
    o.check(round2(c.bic) == 236.61, "BIC %.2f == 236.61", round2(c.bic));
    o.check(round2(c.caic) == 221.34, "CAIC %.2f == 221.34", round2(c.caic));
    o.check(round2(c.hqic) == 227.35, "HQIC %.2f == 227.35", round2(c.hqic));
    return o;
}

// ---------------------------------------------------------------- derivatives

std::vector<double> random_theta(const Baseline& base, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> la(std::log(0.2), std::log(5.0)), ls(std::log(0.5), std::log(3.0)),
        jit(-0.2, 0.2);
    std::vector<double> th = {std::exp(la(rng)), std::exp(ls(rng)), std::exp(ls(rng))};
    const auto pos = base.positivity_mask();
    for (std::size_t i = 0; i < base.params().size(); ++i)
        th.push_back(pos[i] ? base.params()[i] * std::exp(jit(rng)) : base.params()[i] + jit(rng));
    return th;
}

// Distance from a support-bounding parameter to the nearest observation.
double support_gap(const oracle::Case& c, std::size_t j, std::span<const double> th, std::span<const double> data) {
    const auto [mn, mx] = std::minmax_element(data.begin(), data.end());
    if ((c.label == "ew-pareto" && j == 4) || (c.label == "eep" && j == 5)) return *mn - th[j];
    if (c.label == "ep" && j == 4) return 1.0 / *mx - th[j];
    return kInf;
}

Outcome criterion4() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(2024);
    double worst_all = 0.0;
    int configs = 0;
    for (const auto& c : oracle::zoo()) {
        for (FamilyKind fam : {FamilyKind::Mokw, FamilyKind::Kwmo}) {
            const ModelSpec s{fam, c.base.kind(), c.base.ew_shape()};
            double worst = 0.0;
            for (int rep = 0; rep < 20; ++rep, ++configs) {
                const auto th = random_theta(c.base, rng);
                const auto data = fitted_distribution(s, th).sample(50, rng());
                const auto u = score(s, th, data);
                for (std::size_t j = 0; j < th.size(); ++j) {
                    const auto central = [&](double h) {
                        auto up = th, dn = th;
                        up[j] += h;
                        dn[j] -= h;
                        return (loglik(s, up, data) - loglik(s, dn, data)) / (2 * h);
                    };
                    const double gap = support_gap(c, j, th, data);
                    double fd;
                    if (std::isinf(gap)) {
                        fd = central(1e-6 * std::max(std::fabs(th[j]), 1e-2));
                    } else {
                        const double h = std::min(1e-6 * th[j], 1e-3 * gap);
                        fd = (4 * central(h / 2) - central(h)) / 3;
                    }
                    worst = std::max(worst, std::fabs(fd - u[j]) / std::max(1.0, std::fabs(u[j])));
                }
            }
            o.note("%-9s %-11s worst score error %.2e", s.name().c_str(), c.label.c_str(), worst);
            worst_all = std::max(worst_all, worst);
        }
    }
    o.check(worst_all < 1e-4, "score vs central differences, %d configurations: worst %.2e < 1e-4", configs, worst_all);

    std::mt19937_64 rng2(99);
    std::uniform_real_distribution<double> u(std::log(0.3), std::log(4.0));
    double worst_h = 0.0;
    for (int rep = 0; rep < 5; ++rep) {
        const std::vector<double> th = {std::exp(u(rng2)), std::exp(u(rng2)), std::exp(u(rng2)), std::exp(u(rng2))};
        const auto data = fitted_distribution(kMokwE, th).sample(80, rng2());
        const Matrix H = mokw_exponential_hessian(th, data);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) {
                const double hi = 1e-4 * th[i], hj = 1e-4 * th[j];
                auto at = [&](double si, double sj) {
                    auto x = th;
                    x[i] += si * hi;
                    x[j] += sj * hj;
                    return loglik(kMokwE, x, data);
                };
                const double fd = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4 * hi * hj);
                // Relative to the geometric mean of the diagonal curvatures.
                const double scale = std::sqrt(std::fabs(H(i, i) * H(j, j)));
                worst_h = std::max(worst_h, std::fabs(fd - H(i, j)) / scale);
            }
    }
    o.check(worst_h < 1e-3, "closed-form MOKw-E Hessian vs second differences, 5 points: worst %.2e < 1e-3", worst_h);
    const double secs = seconds_since(t0);
    o.check(secs < 30.0, "runtime %.1f s < 30 s", secs);
    return o;
}

// ---------------------------------------------------------------- structure

Outcome criterion5() {
    Outcome o;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(std::log(0.3), std::log(3.0));
    const auto zoo = oracle::zoo();
    double worst = 0.0, worst_nat = 0.0;
    int pairs = 0;
    while (pairs < 100) {
        for (const auto& c : zoo) {
            if (pairs == 100) break;
            const MokwDistribution d(c.base, std::exp(U(rng)), std::exp(U(rng)), std::exp(U(rng)));
            const auto chain = compose({KwMap(d.a(), d.b()), MoTilt(d.alpha())}, c.base);
            const double t = c.lo + (c.hi - c.lo) * std::uniform_real_distribution<double>(0, 1)(rng);
            worst = std::max(worst, oracle::rel_err(chain.pdf(t), d.pdf(t)));
            worst_nat = std::max(worst_nat, oracle::rel_err(chain.pdf(t), oracle::mokw_pdf(c.pdf(t), c.cdf(t), d.alpha(), d.a(), d.b())));
            ++pairs;
        }
    }
    o.check(worst < 1e-12, "composed pdf vs closed form, %d point-parameter pairs: worst rel %.2e < 1e-12", pairs, worst);
    o.note("natural-scale evaluation of the same formula: worst rel %.2e", worst_nat);

    double red = 0.0;
    for (const auto& c : zoo) {
        const double a = 1.7, b = 0.6, al = 2.3;
        const MokwDistribution kw(c.base, 1.0, a, b), mo(c.base, al, 1.0, 1.0);
        for (double t : oracle::grid(c.lo, c.hi, 20)) {
            const double g = c.pdf(t), G = c.cdf(t);
            red = std::max(red, oracle::rel_err(kw.pdf(t), a * b * g * std::pow(G, a - 1) * std::pow(1 - std::pow(G, a), b - 1)));
            red = std::max(red, oracle::rel_err(mo.pdf(t), al * g / std::pow(al + (1 - al) * G, 2)));
        }
    }
    o.check(red < 1e-12, "reductions alpha=1 -> Kw-G and a=b=1 -> MO-G: worst rel %.2e < 1e-12", red);

    double worst_mass = 0.0;
    for (const auto& c : zoo) {
        const MokwDistribution d(c.base, 0.7, 1.8, 2.4);
        QuadOptions q;
        q.tail_scale = c.base.scale_hint();
        q.abs_tol = 1e-9;
        q.rel_tol = 1e-9;
        q.strict = false;
        const Support s = d.support();
        const double t0 = s.lower > 0.0 ? d.quantile(1e-4) : s.lower;
        const double head = s.lower > 0.0 ? d.cdf(t0) : 0.0;
        const double mass = head + integrate([&](double t) { return d.pdf(t); }, t0, s.upper, q).value;
        worst_mass = std::max(worst_mass, std::fabs(mass - 1.0));
    }
    o.check(worst_mass < 1e-6, "normalization over %zu baseline variants: worst |mass - 1| %.2e < 1e-6", zoo.size(),
            worst_mass);
    return o;
}

// ---------------------------------------------------------------- series

double simpson_exp(const std::function<double(double)>& f) { return oracle::simpson(f, 0.0, 60.0, 200000); }

double mokw_e_pdf(double t, double al, double a, double b) {
    return oracle::mokw_pdf(std::exp(-t), -std::expm1(-t), al, a, b);
}

Outcome criterion6() {
    Outcome o;
    double worst = 0.0;
    for (double al : {0.2, 0.5, 0.8, 1.5, 3.0}) {
        const auto d = MokwDistribution::weibull(al, 1.7, 2.2, 0.8, 1.3);
        for (double t : {0.3, 1.0, 2.0}) {
            const double G = -std::expm1(-0.8 * std::pow(t, 1.3));
            const double g = 0.8 * 1.3 * std::pow(t, 0.3) * std::exp(-0.8 * std::pow(t, 1.3));
            worst = std::max(worst, std::fabs(pdf_series(d, t, 500) - oracle::mokw_pdf(g, G, al, 1.7, 2.2)));
        }
    }
    o.check(worst < 1e-8, "pdf series at J=500 vs direct pdf, alpha in {0.2,0.5,0.8,1.5,3}: worst %.2e < 1e-8", worst);

    double wm = 0.0;
    for (double al : {0.5, 2.0})
        for (unsigned s : {1u, 2u}) {
            const auto d = MokwDistribution::exponential(al, 2, 2, 1);
            const double ref = simpson_exp([&](double t) { return std::pow(t, s) * mokw_e_pdf(t, al, 2, 2); });
            wm = std::max(wm, std::fabs(moment(d, s, Method::Series, 300) - ref));
        }
    o.check(wm < 1e-5, "series moments vs quadrature: worst %.2e < 1e-5", wm);

    double wr = 0.0;
    for (double al : {0.5, 2.0}) {
        const auto d = MokwDistribution::exponential(al, 2, 2, 1);
        const double ref = -std::log(simpson_exp([&](double t) { return std::pow(mokw_e_pdf(t, al, 2, 2), 2.0); }));
        wr = std::max(wr, std::fabs(renyi_entropy(d, 2.0, Method::Series, 200) - ref));
    }
    o.check(wr < 1e-6, "Renyi entropy series vs quadrature: worst %.2e < 1e-6", wr);

    auto direct = [](double al, int i, int n, double t) {
        const double G = -std::expm1(-t);
        const double f = oracle::mokw_pdf(std::exp(-t), G, al, 2, 2);
        const double F = oracle::mokw_cdf(G, al, 2, 2);
        const double c = std::tgamma(n + 1.0) / (std::tgamma(i) * std::tgamma(n - i + 1.0));
        return c * f * std::pow(F, i - 1) * std::pow(1 - F, n - i);
    };
    double wo = 0.0;
    for (double al : {0.5, 2.0}) {
        const auto d = MokwDistribution::exponential(al, 2, 2, 1);
        for (auto [i, n] : {std::pair{1, 3}, std::pair{2, 5}})
            for (double t : {0.3, 0.7, 1.5})
                wo = std::max(wo, std::fabs(order_statistic_pdf(d, i, n, t, Method::Series, 300) - direct(al, i, n, t)));
    }
    o.check(wo < 1e-6, "order-statistic series vs direct formula at (1,3), (2,5): worst %.2e < 1e-6", wo);
    return o;
}

// ---------------------------------------------------------------- sampling

Outcome criterion7() {
    Outcome o;
    const auto d = MokwDistribution::weibull(0.5, 2, 3, 1, 2);
    auto x = d.sample(10000, 99);
    std::sort(x.begin(), x.end());
    double ks = 0.0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double G = -std::expm1(-x[i] * x[i]);
        const double F = oracle::mokw_cdf(G, 0.5, 2, 3);
        ks = std::max({ks, F - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - F});
    }
    const double crit = 1.6276 / std::sqrt(n);
    o.check(ks < crit, "KS statistic of 1e4 inversion draws %.5f < 1%% critical value %.5f", ks, crit);

    const auto g = verify_genesis(MokwDistribution::exponential(0.5, 1.5, 2, 1), 100000, 1);
    o.check(g.max_sf_deviation < 0.01, "geometric-minimum construction, 1e5 trials, alpha=0.5: sup deviation %.4f < 0.01",
            g.max_sf_deviation);
    return o;
}

// ---------------------------------------------------------------- ordering

Outcome criterion8() {
    Outcome o;
    const auto lo = MokwDistribution::exponential(0.5, 2, 2, 1), hi = MokwDistribution::exponential(2.0, 2, 2, 1);
    const auto grid = quantile_grid(lo, 200);
    const auto rep = check_stochastic_order(lo, hi, grid);
    o.check(rep.lr_monotone && rep.hr_monotone && rep.sf_dominance,
            "alpha 0.5 < 2 on a 200-point grid: lr %d, hr %d, st %d", rep.lr_monotone, rep.hr_monotone,
            rep.sf_dominance);

    const auto up = MokwDistribution::weibull(3.0, 1.5, 2.0, 1.0, 1.2);
    const auto dn = up.with_alpha(0.4), kw = up.with_alpha(1.0);
    bool below = true, above = true;
    for (double t : oracle::grid(0.01, 4.0, 200)) {
        below = below && up.hrf(t) <= kw.hrf(t) * (1 + 1e-14);
        above = above && dn.hrf(t) >= kw.hrf(t) * (1 - 1e-14);
    }
    o.check(below, "alpha = 3 hazard lies below the Kw-G hazard");
    o.check(above, "alpha = 0.4 hazard lies above the Kw-G hazard");
    return o;
}

// ---------------------------------------------------------------- moment identity

Outcome criterion9() {
    Outcome o;
    const std::vector<double> truth = {0.5, 2.0, 2.0, 1.0};
    const std::size_t n = 100000;
    const auto data = fitted_distribution(kMokwE, truth).sample(n, 31337);
    const double tol = 3.0 / std::sqrt(static_cast<double>(n));
    for (unsigned v : {1u, 2u, 3u}) {
        const double m = moment_statistic(kMokwE, truth, data, v), rhs = moment_rhs(0.5, v);
        o.check(std::fabs(m - rhs) < tol, "v=%u: mean U^v %.5f vs %.5f, |diff| %.5f < %.5f", v, m, rhs, std::fabs(m - rhs), tol);
    }
    const std::vector<bool> only_alpha = {true, false, false, false};
    const auto fit = fit_moments(kMokwE, data, {1.5, 2.0, 2.0, 1.0}, only_alpha, {1});
    o.check(std::fabs(fit.theta[0] - 0.5) < 0.05, "method of moments, n=1e5: alpha %.4f within 0.05 of 0.5", fit.theta[0]);
    return o;
}

struct Criterion {
    int id;
    const char* title;
    Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "nicotine reference fits", criterion1},
    {2, "carbon reference fits", criterion2},
    {3, "criteria arithmetic", criterion3},
    {4, "analytic derivatives", criterion4},
    {5, "structural identities", criterion5},
    {6, "series expansions", criterion6},
    {7, "sampling and genesis", criterion7},
    {8, "stochastic ordering", criterion8},
    {9, "moment identity of U", criterion9},
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: acceptance [--criterion N]\n");
            return 2;
        }
    }
    if (only < 0 || only > 9) {
        std::fprintf(stderr, "criterion must be 1..9\n");
        return 2;
    }
    bool all = true;
    for (const auto& c : kCriteria) {
        if (only && c.id != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome r;
        try {
            r = c.run();
        } catch (const std::exception& e) {
            r.check(false, "exception: %s", e.what());
        }
        std::printf("criterion %d %s: %s (%.1f s)\n", c.id, r.pass ? "PASS" : "FAIL", c.title, seconds_since(t0));
        for (const auto& l : r.lines) std::printf("    %s\n", l.c_str());
        std::fflush(stdout);
        all = all && r.pass;
    }
    return all ? 0 : 1;
}
