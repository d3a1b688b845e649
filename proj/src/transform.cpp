#include "mokw/transform.hpp"

#include <cmath>
#include <random>
#include <string>

#include "mokw/errors.hpp"
#include "mokw/special.hpp"

namespace mokw {

namespace {

void check_unit(double u, const char* what) {
    if (!(u >= 0.0 && u <= 1.0)) throw DomainError(std::string(what) + ": argument must lie in [0,1]");
}

// log(alpha + (1-alpha) u) from the pair (log u, log(1-u)).
double log_mo_denominator(double alpha, LogProb u) {
    const double abar = 1.0 - alpha;
    if (abar >= 0.0) return std::log(alpha + abar * std::exp(u.log_p));
    return std::log(1.0 - abar * std::exp(u.log_q));
}

}  // namespace

MoTilt::MoTilt(double alpha_) : alpha(alpha_) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidParameter("MoTilt: alpha must be positive");
}

KwMap::KwMap(double a_, double b_) : a(a_), b(b_) {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw InvalidParameter("KwMap: a and b must be positive");
}

double mo_cdf(double u, double alpha) {
    check_unit(u, "mo_cdf");
    const MoTilt m(alpha);
    return u / (m.alpha + m.alpha_bar() * u);
}

double mo_density_factor(double u, double alpha) {
    check_unit(u, "mo_density_factor");
    const MoTilt m(alpha);
    const double d = m.alpha + m.alpha_bar() * u;
    return m.alpha / (d * d);
}

double mo_inverse(double v, double alpha) {
    check_unit(v, "mo_inverse");
    const MoTilt m(alpha);
    return m.alpha * v / (1.0 - m.alpha_bar() * v);
}

double kw_cdf(double u, double a, double b) {
    check_unit(u, "kw_cdf");
    const KwMap k(a, b);
    return -std::expm1(k.b * std::log1p(-std::pow(u, k.a)));
}

double kw_density_factor(double u, double a, double b) {
    check_unit(u, "kw_density_factor");
    const KwMap k(a, b);
    const double lu = std::log(u);
    const double l1 = std::log1p(-std::pow(u, k.a));
    return std::exp(std::log(k.a) + std::log(k.b) + xlogy(k.a - 1.0, lu) + xlogy(k.b - 1.0, l1));
}

double kw_inverse(double v, double a, double b) {
    check_unit(v, "kw_inverse");
    const KwMap k(a, b);
    const double w = -std::expm1(std::log1p(-v) / k.b);
    return std::pow(w, 1.0 / k.a);
}

LogProb apply(const Transform& tr, LogProb u, double* log_factor) {
    if (const auto* m = std::get_if<MoTilt>(&tr)) {
        const double lq = log_mo_denominator(m->alpha, u);
        const double la = std::log(m->alpha);
        if (log_factor != nullptr) *log_factor = la - 2.0 * lq;
        return {u.log_p - lq, la + u.log_q - lq};
    }
    const auto& k = std::get<KwMap>(tr);
    const double L1 = log1m_pow(u.log_p, u.log_q, k.a);
    const double lsf = k.b * L1;
    if (log_factor != nullptr)
        *log_factor = std::log(k.a) + std::log(k.b) + xlogy(k.a - 1.0, u.log_p) + xlogy(k.b - 1.0, L1);
    return {log1mexp(lsf), lsf};
}

LogProb invert(const Transform& tr, LogProb v) {
    if (const auto* m = std::get_if<MoTilt>(&tr)) {
        // 1 - abar v = alpha + abar (1 - v)
        const double abar = m->alpha_bar();
        const double ld = abar >= 0.0 ? std::log(m->alpha + abar * std::exp(v.log_q))
                                      : std::log(1.0 - abar * std::exp(v.log_p));
        return {std::log(m->alpha) + v.log_p - ld, v.log_q - ld};
    }
    const auto& k = std::get<KwMap>(tr);
    const double lu = log1mexp(v.log_q / k.b) / k.a;
    return {lu, log1mexp(lu)};
}

ComposedDistribution::ComposedDistribution(Baseline base, TransformChain chain)
    : base_(std::move(base)), chain_(std::move(chain)) {}

DensityPoint ComposedDistribution::evaluate(double t) const {
    const BaselinePoint b = base_.evaluate(t);
    LogProb u{b.log_cdf, b.log_sf};
    double lf = b.log_pdf;
    for (const Transform& tr : chain_) {
        double f = 0.0;
        u = apply(tr, u, &f);
        if (lf != -kInf) lf += f;
    }
    return {lf, u.log_p, u.log_q};
}

double ComposedDistribution::pdf(double t) const { return std::exp(evaluate(t).log_pdf); }
double ComposedDistribution::log_pdf(double t) const { return evaluate(t).log_pdf; }
double ComposedDistribution::cdf(double t) const { return std::exp(evaluate(t).log_cdf); }
double ComposedDistribution::sf(double t) const { return std::exp(evaluate(t).log_sf); }

double ComposedDistribution::hrf(double t) const {
    const DensityPoint p = evaluate(t);
    return std::exp(p.log_pdf - p.log_sf);
}

double ComposedDistribution::quantile(double p) const {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("quantile: p must lie in (0,1)");
    LogProb v{std::log(p), std::log1p(-p)};
    for (auto it = chain_.rbegin(); it != chain_.rend(); ++it) v = invert(*it, v);
    return base_.quantile(std::exp(v.log_p), std::exp(v.log_q));
}

std::vector<double> ComposedDistribution::sample(std::size_t n, std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::vector<double> out(n);
    for (double& x : out) x = quantile(uniform_open(rng));
    return out;
}

ComposedDistribution compose(const TransformChain& chain, const Baseline& base) {
    return {base, chain};
}

}  // namespace mokw
