#include "mokw/family.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "mokw/errors.hpp"
#include "mokw/special.hpp"

namespace mokw {

namespace {

void check_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw InvalidParameter(std::string("MokwDistribution: ") + name + " must be positive");
}

}  // namespace

MokwDistribution::MokwDistribution(Baseline base, double alpha, double a, double b)
    : base_(std::move(base)), alpha_(alpha), a_(a), b_(b) {
    check_positive(alpha, "alpha");
    check_positive(a, "a");
    check_positive(b, "b");
}

MokwDistribution MokwDistribution::exponential(double alpha, double a, double b, double lambda) {
    return {Baseline::exponential(lambda), alpha, a, b};
}
MokwDistribution MokwDistribution::lomax(double alpha, double a, double b, double beta, double delta) {
    return {Baseline::lomax(beta, delta), alpha, a, b};
}
MokwDistribution MokwDistribution::weibull(double alpha, double a, double b, double lambda, double beta) {
    return {Baseline::weibull(lambda, beta), alpha, a, b};
}
MokwDistribution MokwDistribution::frechet(double alpha, double a, double b, double lambda, double delta) {
    return {Baseline::frechet(lambda, delta), alpha, a, b};
}
MokwDistribution MokwDistribution::gompertz(double alpha, double a, double b, double beta, double lambda) {
    return {Baseline::gompertz(beta, lambda), alpha, a, b};
}
MokwDistribution MokwDistribution::extended_weibull(double alpha, double a, double b, double delta,
                                                    EwShape shape, double xi) {
    return {Baseline::extended_weibull(delta, shape, xi), alpha, a, b};
}
MokwDistribution MokwDistribution::modified_weibull(double alpha, double a, double b, double sigma,
                                                    double beta, double gamma) {
    return {Baseline::modified_weibull(sigma, beta, gamma), alpha, a, b};
}
MokwDistribution MokwDistribution::power_lognormal(double alpha, double a, double b, double p, double mu,
                                                   double sigma) {
    return {Baseline::power_lognormal(p, mu, sigma), alpha, a, b};
}
MokwDistribution MokwDistribution::exponentiated_pareto(double alpha, double a, double b, double gamma,
                                                        double k, double theta) {
    return {Baseline::exponentiated_pareto(gamma, k, theta), alpha, a, b};
}
MokwDistribution MokwDistribution::extended_power(double alpha, double a, double b, double k,
                                                  double theta) {
    return {Baseline::extended_power(k, theta), alpha, a, b};
}

MokwDistribution MokwDistribution::with_alpha(double alpha) const { return {base_, alpha, a_, b_}; }

ComposedDistribution MokwDistribution::as_composed() const {
    return compose({KwMap(a_, b_), MoTilt(alpha_)}, base_);
}

DensityPoint MokwDistribution::evaluate(double t) const {
    const BaselinePoint g = base_.evaluate(t);
    const double L1 = log1m_pow(g.log_cdf, g.log_sf, a_);
    const double lS = b_ * L1;
    const double lD = log_tilt_denominator(alpha_, lS);
    double lf = -kInf;
    if (g.log_pdf != -kInf) {
        lf = std::log(alpha_) + std::log(a_) + std::log(b_) + g.log_pdf + xlogy(a_ - 1.0, g.log_cdf) +
             xlogy(b_ - 1.0, L1) - 2.0 * lD;
    }
    return {lf, log1mexp(lS) - lD, std::log(alpha_) + lS - lD};
}

double MokwDistribution::pdf(double t) const { return std::exp(evaluate(t).log_pdf); }
double MokwDistribution::log_pdf(double t) const { return evaluate(t).log_pdf; }
double MokwDistribution::cdf(double t) const { return std::exp(evaluate(t).log_cdf); }
double MokwDistribution::sf(double t) const { return std::exp(evaluate(t).log_sf); }

double MokwDistribution::hrf(double t) const {
    const DensityPoint p = evaluate(t);
    return std::exp(p.log_pdf - p.log_sf);
}

double MokwDistribution::rhrf(double t) const {
    const DensityPoint p = evaluate(t);
    if (p.log_cdf == -kInf) return kInf;
    return std::exp(p.log_pdf - p.log_cdf);
}

double MokwDistribution::chrf(double t) const { return -evaluate(t).log_sf; }

double MokwDistribution::dlog_pdf_dt(double t) const {
    const BaselinePoint g = base_.evaluate(t);
    const double L1 = log1m_pow(g.log_cdf, g.log_sf, a_);
    const double lD = log_tilt_denominator(alpha_, b_ * L1);
    const double lk = g.log_pdf + xlogy(a_ - 1.0, g.log_cdf);  // log g G^{a-1}
    double v = base_.dlog_pdf_dt(t);
    if (a_ != 1.0) v += (a_ - 1.0) * std::exp(g.log_pdf - g.log_cdf);
    if (b_ != 1.0) v += a_ * (1.0 - b_) * std::exp(lk - L1);
    if (alpha_ != 1.0) v -= 2.0 * alpha_bar() * a_ * b_ * std::exp(lk + xlogy(b_ - 1.0, L1) - lD);
    return v;
}

double MokwDistribution::dlog_hrf_dt(double t) const {
    const BaselinePoint g = base_.evaluate(t);
    const double L1 = log1m_pow(g.log_cdf, g.log_sf, a_);
    const double lD = log_tilt_denominator(alpha_, b_ * L1);
    const double lk = g.log_pdf + xlogy(a_ - 1.0, g.log_cdf);
    double v = base_.dlog_pdf_dt(t);
    if (a_ != 1.0) v += (a_ - 1.0) * std::exp(g.log_pdf - g.log_cdf);
    v += a_ * std::exp(lk - L1);
    if (alpha_ != 1.0) v -= alpha_bar() * a_ * b_ * std::exp(lk + xlogy(b_ - 1.0, L1) - lD);
    return v;
}

double MokwDistribution::quantile(double p) const {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("quantile: p must lie in (0,1)");
    LogProb v{std::log(p), std::log1p(-p)};
    v = invert(MoTilt(alpha_), v);
    v = invert(KwMap(a_, b_), v);
    return base_.quantile(std::exp(v.log_p), std::exp(v.log_q));
}

double MokwDistribution::upper_quantile(double q) const {
    if (!(q > 0.0 && q < 1.0)) throw DomainError("upper_quantile: q must lie in (0,1)");
    LogProb v{std::log1p(-q), std::log(q)};
    v = invert(MoTilt(alpha_), v);
    v = invert(KwMap(a_, b_), v);
    return base_.quantile(std::exp(v.log_p), std::exp(v.log_q));
}

std::vector<double> MokwDistribution::sample(std::size_t n, std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::vector<double> out(n);
    for (double& x : out) x = quantile(uniform_open(rng));
    return out;
}

GenesisReport verify_genesis(const MokwDistribution& d, std::size_t n_trials, std::uint64_t seed) {
    if (d.alpha() == 1.0) throw DegenerateCase("verify_genesis: alpha = 1 gives a constant count N = 1");
    if (n_trials == 0) throw DomainError("verify_genesis: need at least one trial");
    const bool use_max = d.alpha() > 1.0;
    // Probability that the count stops at each step.
    const double p = use_max ? 1.0 / d.alpha() : d.alpha();
    const double log_fail = std::log1p(-p);
    const KwMap kw(d.a(), d.b());
    const Baseline& base = d.baseline();
    std::mt19937_64 rng(seed);
    auto kw_draw = [&] {
        const double u = uniform_open(rng);
        const LogProb g = invert(kw, {std::log(u), std::log1p(-u)});
        return base.quantile(std::exp(g.log_p), std::exp(g.log_q));
    };

    std::vector<double> draws(n_trials);
    double count_sum = 0.0;
    for (double& x : draws) {
        const double u = uniform_open(rng);
        const auto count = std::max<long long>(1, static_cast<long long>(std::ceil(std::log(u) / log_fail)));
        count_sum += static_cast<double>(count);
        double extreme = kw_draw();
        for (long long i = 1; i < count; ++i) {
            const double y = kw_draw();
            extreme = use_max ? std::max(extreme, y) : std::min(extreme, y);
        }
        x = extreme;
    }
    std::sort(draws.begin(), draws.end());

    GenesisReport rep;
    rep.trials = n_trials;
    rep.maximum_construction = use_max;
    rep.mean_count = count_sum / static_cast<double>(n_trials);
    for (int j = 1; j <= 99; ++j) {
        const double t = d.quantile(j / 100.0);
        const auto above = draws.end() - std::upper_bound(draws.begin(), draws.end(), t);
        const double emp = static_cast<double>(above) / static_cast<double>(n_trials);
        rep.max_sf_deviation = std::max(rep.max_sf_deviation, std::fabs(emp - d.sf(t)));
    }
    return rep;
}

AsymptoteReport asymptote_check(const MokwDistribution& d, double tol) {
    AsymptoteReport rep;
    const Baseline& base = d.baseline();
    const double la = std::log(d.a()), lb = std::log(d.b()), lal = std::log(d.alpha());
    const Support s = base.support();
    const double scale = std::min(1.0, base.scale_hint());
    for (int k = 1; k <= 6; ++k) {
        const double t = s.lower + scale * std::pow(10.0, -k);
        const BaselinePoint g = base.evaluate(t);
        const DensityPoint f = d.evaluate(t);
        const double lasym = la + lb + g.log_pdf + xlogy(d.a() - 1.0, g.log_cdf) - lal;
        rep.lower_t.push_back(t);
        rep.lower_pdf_ratio.push_back(std::exp(f.log_pdf - lasym));
        rep.lower_hrf_ratio.push_back(std::exp(f.log_pdf - f.log_sf - lasym));
    }
    for (int k = 1; k <= 14; ++k) {
        const double t = d.upper_quantile(std::pow(10.0, -k));
        const BaselinePoint g = base.evaluate(t);
        const DensityPoint f = d.evaluate(t);
        const double L1 = log1m_pow(g.log_cdf, g.log_sf, d.a());
        const double lpdf = lal + la + lb + g.log_pdf + xlogy(d.b() - 1.0, L1);
        const double lhrf = la + lb + g.log_pdf - L1;
        rep.upper_t.push_back(t);
        rep.upper_pdf_ratio.push_back(std::exp(f.log_pdf - lpdf));
        rep.upper_hrf_ratio.push_back(std::exp(f.log_pdf - f.log_sf - lhrf));
    }
    auto converges = [tol](const std::vector<double>& r1, const std::vector<double>& r2) {
        auto ok = [tol](const std::vector<double>& r) {
            const double first = std::fabs(r.front() - 1.0), last = std::fabs(r.back() - 1.0);
            return std::isfinite(last) && last < tol && last <= first + tol;
        };
        return ok(r1) && ok(r2);
    };
    rep.lower_converges = converges(rep.lower_pdf_ratio, rep.lower_hrf_ratio);
    rep.upper_converges = converges(rep.upper_pdf_ratio, rep.upper_hrf_ratio);
    return rep;
}

CriticalPointReport critical_points(const MokwDistribution& d, CriticalTarget target, double t_lo,
                                    double t_hi, std::size_t grid_n) {
    const Support s = d.support();
    if (!(t_lo < t_hi) || t_lo < s.lower || t_hi > s.upper)
        throw DomainError("critical_points: need lower <= t_lo < t_hi <= upper within the support");
    if (grid_n < 2) throw DomainError("critical_points: grid_n must be at least 2");
    auto deriv = [&](double t) {
        return target == CriticalTarget::Density ? d.dlog_pdf_dt(t) : d.dlog_hrf_dt(t);
    };

    CriticalPointReport rep;
    rep.t_lo = t_lo;
    rep.t_hi = t_hi;
    rep.grid_n = grid_n;

    std::vector<double> grid(grid_n);
    const bool log_grid = t_lo > 0.0;
    for (std::size_t i = 0; i < grid_n; ++i) {
        const double w = static_cast<double>(i) / static_cast<double>(grid_n - 1);
        grid[i] = log_grid ? std::exp(std::log(t_lo) + w * (std::log(t_hi) - std::log(t_lo)))
                           : t_lo + w * (t_hi - t_lo);
    }
    // The open ends of the support may be singular; nudge inwards.
    if (grid.front() == s.lower) grid.front() += 1e-9 * (grid[1] - grid[0]);
    std::vector<double> vals(grid_n);
    for (std::size_t i = 0; i < grid_n; ++i) vals[i] = deriv(grid[i]);

    double vmin = kInf, vmax = -kInf;
    for (double v : vals) {
        if (!std::isfinite(v)) continue;
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }
    if (vmax - vmin <= 1e-12 * std::max(1.0, std::fabs(vmax))) {
        rep.degenerate = std::fabs(vmax) <= 1e-12;
        return rep;
    }

    auto classify = [&](double t) {
        const double h = std::max(1e-6, 1e-6 * std::fabs(t));
        const double curv = (deriv(t + h) - deriv(t - h)) / (2.0 * h);
        CriticalKind kind = CriticalKind::Inflexion;
        if (curv < -1e-8) kind = CriticalKind::Maximum;
        if (curv > 1e-8) kind = CriticalKind::Minimum;
        return CriticalPoint{t, kind, curv};
    };

    for (std::size_t i = 0; i + 1 < grid_n; ++i) {
        double lo = grid[i], hi = grid[i + 1];
        double flo = vals[i], fhi = vals[i + 1];
        if (!std::isfinite(flo) || !std::isfinite(fhi)) continue;
        if (flo == 0.0) {
            rep.roots.push_back(classify(lo));
            continue;
        }
        if ((flo < 0.0) == (fhi < 0.0) || fhi == 0.0) continue;
        while (hi - lo > 1e-10 * std::max(1.0, std::fabs(lo))) {
            const double mid = 0.5 * (lo + hi);
            const double fm = deriv(mid);
            if ((fm < 0.0) == (flo < 0.0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        rep.roots.push_back(classify(0.5 * (lo + hi)));
    }
    if (vals.back() == 0.0) rep.roots.push_back(classify(grid.back()));
    return rep;
}

}  // namespace mokw
