#include "mokw/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "mokw/errors.hpp"
#include "mokw/special.hpp"

namespace mokw {

namespace {

constexpr double kStopRatio = 1e-14;

bool negligible(double term, double sum) { return std::fabs(term) < kStopRatio * std::fabs(sum); }

SeriesCoefficients make(SeriesKind kind, double alpha, std::size_t J) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidParameter("series: alpha must be positive");
    SeriesCoefficients c{kind, alpha, J, 0, 0, 0, {}};
    c.weights.reserve(J);
    return c;
}

void require_below_one(double alpha, const char* what) {
    if (!(alpha < 1.0)) throw DomainError(std::string(what) + ": needs alpha in (0,1)");
}

void require_above_one(double alpha, const char* what) {
    if (!(alpha > 1.0)) throw DomainError(std::string(what) + ": needs alpha > 1");
}

std::vector<double> convolve(const std::vector<double>& x, const std::vector<double>& y, std::size_t J) {
    std::vector<double> out(J, 0.0);
    for (std::size_t i = 0; i < std::min(J, x.size()); ++i)
        for (std::size_t k = 0; k < std::min(J - i, y.size()); ++k) out[i + k] += x[i] * y[k];
    return out;
}

// n! / ((i-1)! (n-i)!) (-1)^p C(i-1, p) on the natural scale.
double order_prefactor(std::size_t i, std::size_t n, std::size_t p) {
    const double lc = std::lgamma(n + 1.0) - std::lgamma(static_cast<double>(i)) - std::lgamma(n - i + 1.0) +
                      log_binomial(static_cast<double>(i - 1), static_cast<double>(p));
    return (p % 2 == 0 ? 1.0 : -1.0) * std::exp(lc);
}

void check_order_index(std::size_t i, std::size_t n) {
    if (i < 1 || i > n) throw DomainError("order statistic: index i must lie in [1, n]");
}

double kw_quantile(const MokwDistribution& d, double u) {
    const LogProb v = invert(KwMap(d.a(), d.b()), LogProb{std::log(u), std::log1p(-u)});
    return d.baseline().quantile(std::exp(v.log_p), std::exp(v.log_q));
}

// Interior break points at Kw-G quantiles, so that integrands concentrated
// near either end of the support are resolved.
std::vector<double> kw_breaks(const MokwDistribution& d) {
    static constexpr double levels[] = {1e-8, 1e-6, 1e-4, 1e-3, 0.01, 0.05, 0.15, 0.3, 0.5,
                                        0.7,  0.85, 0.95, 0.99, 0.999, 1 - 1e-4, 1 - 1e-6, 1 - 1e-8};
    const Support s = d.support();
    std::vector<double> out;
    for (double u : levels) {
        const double t = kw_quantile(d, u);
        if (t > s.lower && t < s.upper && (out.empty() || t > out.back())) out.push_back(t);
    }
    return out;
}

double integrate_support(const MokwDistribution& d, const std::function<double(double)>& f, double tol,
                         const std::vector<double>& breaks) {
    const Support s = d.support();
    std::vector<double> ends{s.lower};
    ends.insert(ends.end(), breaks.begin(), breaks.end());
    ends.push_back(s.upper);
    QuadOptions o;
    o.abs_tol = tol / static_cast<double>(ends.size());
    o.rel_tol = 1e-10;
    o.tail_scale = std::max(d.baseline().scale_hint(), ends[ends.size() - 2] - s.lower);
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < ends.size(); ++k) total += integrate(f, ends[k], ends[k + 1], o).value;
    return total;
}

// Integral of w(F_K, S) f_K(t) h(t) dt where the Kw-G pieces come in as logs.
double kw_integral(const MokwDistribution& d, const std::function<double(double, const KwPoint&)>& log_integrand,
                   double tol, const std::vector<double>& breaks) {
    return integrate_support(
        d,
        [&](double t) {
            const KwPoint k = kw_point(d, t);
            if (k.log_pdf == -kInf) return 0.0;
            return std::exp(log_integrand(t, k));
        },
        tol, breaks);
}

void check_shapes_match(const MokwDistribution& d1, const MokwDistribution& d2) {
    const Baseline& g1 = d1.baseline();
    const Baseline& g2 = d2.baseline();
    const bool same = g1.kind() == g2.kind() && g1.ew_shape() == g2.ew_shape() &&
                      std::ranges::equal(g1.params(), g2.params()) && d1.a() == d2.a() && d1.b() == d2.b();
    if (!same) throw InvalidParameter("check_stochastic_order: distributions must differ only in alpha");
}

// Power-law exponent of the Renyi integrand at each end of the support;
// exponent <= -1 means the integral diverges there.
void check_renyi_ends(const MokwDistribution& d, double delta) {
    const Support s = d.support();
    auto exponent = [&](double t1, double t2, double end) {
        const double x1 = std::fabs(t1 - end), x2 = std::fabs(t2 - end);
        if (!(x1 > 0.0 && x2 > 0.0) || x1 == x2) return 0.0;
        return delta * (d.log_pdf(t2) - d.log_pdf(t1)) / (std::log(x2) - std::log(x1));
    };
    const double lo1 = d.quantile(1e-8), lo2 = d.quantile(1e-12);
    if (exponent(lo1, lo2, s.lower) <= -0.999) throw DivergenceError("renyi_entropy: integral diverges at the lower end");
    const double hi1 = d.upper_quantile(1e-8), hi2 = d.upper_quantile(1e-12);
    const bool bad_hi = std::isfinite(s.upper) ? exponent(hi1, hi2, s.upper) <= -0.999
                                               : exponent(hi1, hi2, 0.0) >= -1.001;
    if (bad_hi) throw DivergenceError("renyi_entropy: integral diverges at the upper end");
}

void check_mgf_tail(const MokwDistribution& d, double s) {
    if (s <= 0.0 || std::isfinite(d.support().upper)) return;
    const double t1 = d.upper_quantile(1e-10), t2 = d.upper_quantile(1e-14);
    if (s * t2 + std::log(1e-14) >= s * t1 + std::log(1e-10))
        throw DivergenceError("mgf: e^{sT} is not integrable for this s");
}

}  // namespace

SeriesCoefficients kappa(double alpha, std::size_t J) {
    auto c = make(SeriesKind::Kappa, alpha, J);
    for (std::size_t j = 0; j < J; ++j) c.weights.push_back((j + 1.0) * alpha * std::pow(1.0 - alpha, j));
    return c;
}

SeriesCoefficients kappa_prime(double alpha, std::size_t J) {
    auto c = make(SeriesKind::KappaPrime, alpha, J);
    for (std::size_t j = 0; j < J; ++j) c.weights.push_back(-alpha * std::pow(1.0 - alpha, j));
    return c;
}

SeriesCoefficients eta(double alpha, std::size_t J) {
    auto c = make(SeriesKind::Eta, alpha, J);
    for (std::size_t j = 0; j < J; ++j) c.weights.push_back((j + 1.0) / alpha * std::pow(1.0 - 1.0 / alpha, j));
    return c;
}

SeriesCoefficients eta_prime(double alpha, std::size_t J) {
    auto c = make(SeriesKind::EtaPrime, alpha, J);
    for (std::size_t j = 0; j < J; ++j) c.weights.push_back(std::pow(1.0 - 1.0 / alpha, j) / alpha);
    return c;
}

SeriesCoefficients c_prime(double alpha, std::size_t J) {
    auto c = make(SeriesKind::CPrime, alpha, J);
    for (std::size_t j = 0; j < J; ++j) c.weights.push_back(std::pow(1.0 - 1.0 / alpha, j));
    return c;
}

SeriesCoefficients phi(double alpha, std::size_t J) {
    auto c = make(SeriesKind::Phi, alpha, J);
    for (std::size_t j = 0; j < J; ++j)
        for (std::size_t k = 0; k <= j; ++k)
            c.weights.push_back(alpha * std::pow(1.0 - alpha, j) * ((j - k) % 2 == 0 ? 1.0 : -1.0) * (j + 1.0) *
                                std::exp(log_binomial(static_cast<double>(j), static_cast<double>(k))));
    return c;
}

SeriesCoefficients phi_prime(double alpha, std::size_t J) {
    auto c = make(SeriesKind::PhiPrime, alpha, J);
    for (std::size_t j = 0; j < J; ++j)
        for (std::size_t k = 0; k <= j; ++k)
            c.weights.push_back(alpha * std::pow(1.0 - alpha, j) * ((j - k) % 2 == 0 ? 1.0 : -1.0) *
                                std::exp(log_binomial(j + 1.0, static_cast<double>(k))));
    return c;
}

SeriesCoefficients d_power(std::span<const double> c, std::size_t m, std::size_t J) {
    if (c.empty() || c[0] == 0.0) throw DomainError("d_power: leading coefficient must be nonzero");
    SeriesCoefficients d{SeriesKind::DPower, 1.0, J, 0, 0, 0, std::vector<double>(J, 0.0)};
    if (J == 0) return d;
    d.weights[0] = std::pow(c[0], static_cast<double>(m));
    const double mm = static_cast<double>(m);
    for (std::size_t k = 1; k < J; ++k) {
        double acc = 0.0;
        for (std::size_t h = 1; h <= std::min(k, c.size() - 1); ++h)
            acc += (static_cast<double>(h) * (mm + 1.0) - static_cast<double>(k)) * c[h] * d.weights[k - h];
        d.weights[k] = acc / (static_cast<double>(k) * c[0]);
    }
    return d;
}

SeriesCoefficients x_order(double alpha, std::size_t i, std::size_t n, std::size_t p, std::size_t J) {
    require_below_one(alpha, "x_order");
    check_order_index(i, n);
    if (p > i - 1) throw DomainError("x_order: p must lie in [0, i-1]");
    const std::size_t m = n - i + p;
    // sf = S sum_q (-kappa'_q) S^q, so sf^m = S^m (sum_q -kappa'_q S^q)^m.
    std::vector<double> base = kappa_prime(alpha, J).weights;
    for (double& v : base) v = -v;
    auto w = convolve(kappa(alpha, J).weights, d_power(base, m, J).weights, J);
    const double pre = order_prefactor(i, n, p);
    for (double& v : w) v *= pre;
    return SeriesCoefficients{SeriesKind::XOrder, alpha, J, i, n, p, std::move(w)};
}

SeriesCoefficients lambda_order(double alpha, std::size_t i, std::size_t n, std::size_t p, std::size_t J) {
    require_above_one(alpha, "lambda_order");
    check_order_index(i, n);
    if (p > i - 1) throw DomainError("lambda_order: p must lie in [0, i-1]");
    const std::size_t m = n - i + p;
    auto w = convolve(eta(alpha, J).weights, d_power(c_prime(alpha, J).weights, m, J).weights, J);
    const double pre = order_prefactor(i, n, p);
    for (double& v : w) v *= pre;
    return SeriesCoefficients{SeriesKind::LambdaOrder, alpha, J, i, n, p, std::move(w)};
}

KwPoint kw_point(const MokwDistribution& d, double t) {
    const BaselinePoint g = d.baseline().evaluate(t);
    const double L1 = log1m_pow(g.log_cdf, g.log_sf, d.a());
    const double lS = d.b() * L1;
    double lf = -kInf;
    if (g.log_pdf != -kInf)
        lf = std::log(d.a()) + std::log(d.b()) + g.log_pdf + xlogy(d.a() - 1.0, g.log_cdf) + xlogy(d.b() - 1.0, L1);
    return {lf, log1mexp(lS), lS};
}

double pdf_series(const MokwDistribution& d, double t, std::size_t J) {
    if (J == 0) throw DomainError("pdf_series: J must be positive");
    const KwPoint k = kw_point(d, t);
    const double fk = std::exp(k.log_pdf);
    const double al = d.alpha();
    if (al == 1.0) return fk;
    const double x = al < 1.0 ? std::exp(k.log_sf) : std::exp(k.log_cdf);
    const double r = al < 1.0 ? 1.0 - al : 1.0 - 1.0 / al;
    const double scale = al < 1.0 ? al : 1.0 / al;
    double sum = 0.0, pw = 1.0;
    for (std::size_t j = 0; j < J; ++j) {
        const double term = (j + 1.0) * pw;
        sum += term;
        if (j > 0 && negligible(term, sum)) break;
        pw *= r * x;
    }
    return fk * scale * sum;
}

double sf_series(const MokwDistribution& d, double t, std::size_t J) {
    if (J == 0) throw DomainError("sf_series: J must be positive");
    const KwPoint k = kw_point(d, t);
    const double S = std::exp(k.log_sf);
    const double al = d.alpha();
    if (al == 1.0) return S;
    double sum = 0.0;
    if (al < 1.0) {
        // -sum kappa'_j S^{j+1}
        double pw = al * S;
        for (std::size_t j = 0; j < J; ++j) {
            sum += pw;
            if (j > 0 && negligible(pw, sum)) break;
            pw *= (1.0 - al) * S;
        }
        return sum;
    }
    const double x = (1.0 - 1.0 / al) * std::exp(k.log_cdf);
    double pw = 1.0;
    for (std::size_t j = 0; j < J; ++j) {
        sum += pw;
        if (j > 0 && negligible(pw, sum)) break;
        pw *= x;
    }
    return S * sum;
}

double order_statistic_pdf(const MokwDistribution& d, std::size_t i, std::size_t n, double t, Method method,
                           std::size_t J) {
    check_order_index(i, n);
    const double al = d.alpha();
    if (method != Method::Series || al == 1.0) {
        const DensityPoint f = d.evaluate(t);
        if (f.log_pdf == -kInf) return 0.0;
        const double lc = std::lgamma(n + 1.0) - std::lgamma(static_cast<double>(i)) - std::lgamma(n - i + 1.0);
        return std::exp(lc + f.log_pdf + xlogy(i - 1.0, f.log_cdf) + xlogy(static_cast<double>(n - i), f.log_sf));
    }
    const KwPoint k = kw_point(d, t);
    if (k.log_pdf == -kInf) return 0.0;
    const double S = std::exp(k.log_sf);
    const double x = al < 1.0 ? S : std::exp(k.log_cdf);
    double total = 0.0;
    for (std::size_t p = 0; p < i; ++p) {
        const auto w = al < 1.0 ? x_order(al, i, n, p, J) : lambda_order(al, i, n, p, J);
        double sum = 0.0, pw = 1.0;
        for (std::size_t q = 0; q < J; ++q) {
            const double term = w[q] * pw;
            sum += term;
            if (q > 0 && negligible(term, sum)) break;
            pw *= x;
        }
        total += std::pow(S, static_cast<double>(n - i + p)) * sum;
    }
    return std::exp(k.log_pdf) * total;
}

double pwm(const MokwDistribution& d, const PwmSpec& spec) {
    const double p = spec.p, q = spec.q, r = spec.r;
    return kw_integral(
        d,
        [&](double t, const KwPoint& k) {
            return xlogy(p, std::log(t)) + xlogy(q, k.log_cdf) + xlogy(r, k.log_sf) + k.log_pdf;
        },
        spec.tolerance, kw_breaks(d));
}

double moment(const MokwDistribution& d, unsigned s, Method method, std::size_t J) {
    const double al = d.alpha();
    if (method != Method::Series) {
        const double ss = s;
        return integrate_support(
            d,
            [&](double t) {
                const double lf = d.log_pdf(t);
                return lf == -kInf ? 0.0 : std::exp(xlogy(ss, std::log(t)) + lf);
            },
            1e-10, kw_breaks(d));
    }
    if (al == 1.0) return pwm(d, {s, 0, 0});
    double sum = 0.0;
    for (std::size_t j = 0; j < J; ++j) {
        const double w = al < 1.0 ? (j + 1.0) * al * std::pow(1.0 - al, j)
                                  : (j + 1.0) / al * std::pow(1.0 - 1.0 / al, j);
        const unsigned jj = static_cast<unsigned>(j);
        const double term = w * (al < 1.0 ? pwm(d, {s, 0, jj}) : pwm(d, {s, jj, 0}));
        sum += term;
        if (j > 0 && negligible(term, sum)) break;
    }
    return sum;
}

double moment_phi(const MokwDistribution& d, unsigned s, std::size_t J) {
    require_below_one(d.alpha(), "moment_phi");
    const double al = d.alpha();
    std::vector<double> gam;
    double sum = 0.0;
    for (std::size_t j = 0; j < J; ++j) {
        gam.push_back(pwm(d, {s, static_cast<unsigned>(j), 0, 1e-12}));
        double row = 0.0;
        for (std::size_t k = 0; k <= j; ++k) {
            const double w = al * std::pow(1.0 - al, j) * ((j - k) % 2 == 0 ? 1.0 : -1.0) * (j + 1.0) *
                             std::exp(log_binomial(static_cast<double>(j), static_cast<double>(k)));
            row += w * gam[j - k];
        }
        sum += row;
        if (j > 0 && negligible(row, sum)) break;
    }
    return sum;
}

double mgf(const MokwDistribution& d, double s, Method method, std::size_t J) {
    if (s == 0.0) return 1.0;
    check_mgf_tail(d, s);
    const double al = d.alpha();
    if (method != Method::Series) {
        return integrate_support(
            d,
            [&](double t) {
                const double lf = d.log_pdf(t);
                return lf == -kInf ? 0.0 : std::exp(s * t + lf);
            },
            1e-10, kw_breaks(d));
    }
    const auto breaks = kw_breaks(d);
    auto term_integral = [&](double lw, double power_cdf, double power_sf) {
        return kw_integral(
            d,
            [&](double t, const KwPoint& k) {
                return lw + s * t + xlogy(power_cdf, k.log_cdf) + xlogy(power_sf, k.log_sf) + k.log_pdf;
            },
            1e-10, breaks);
    };
    if (al == 1.0) return term_integral(0.0, 0.0, 0.0);
    double sum = 0.0;
    for (std::size_t j = 0; j < J; ++j) {
        const double jj = static_cast<double>(j);
        double term;
        if (al > 1.0) {
            // eta'_j times the mgf of the exponentiated Kw-G law with power j+1.
            term = term_integral(std::log((jj + 1.0) / al) + jj * std::log1p(-1.0 / al), jj, 0.0);
        } else {
            term = term_integral(std::log((jj + 1.0) * al) + jj * std::log1p(-al), 0.0, jj);
        }
        sum += term;
        if (j > 0 && negligible(term, sum)) break;
    }
    return sum;
}

double renyi_entropy(const MokwDistribution& d, double delta, Method method, std::size_t J) {
    if (!(delta > 0.0) || delta == 1.0 || !std::isfinite(delta))
        throw DomainError("renyi_entropy: delta must be positive and different from 1");
    check_renyi_ends(d, delta);
    const double al = d.alpha();
    const auto breaks = kw_breaks(d);
    double integral = 0.0;
    if (method != Method::Series) {
        integral = integrate_support(
            d,
            [&](double t) {
                const double lf = d.log_pdf(t);
                return lf == -kInf ? 0.0 : std::exp(delta * lf);
            },
            1e-12, breaks);
    } else if (al == 1.0) {
        integral = kw_integral(d, [&](double, const KwPoint& k) { return delta * k.log_pdf; }, 1e-12, breaks);
    } else {
        const double lg2d = std::lgamma(2.0 * delta);
        for (std::size_t j = 0; j < J; ++j) {
            const double jj = static_cast<double>(j);
            const double lw0 = std::lgamma(2.0 * delta + jj) - lg2d - std::lgamma(jj + 1.0);
            double lw;
            if (al < 1.0)
                lw = delta * std::log(al) + jj * std::log1p(-al) + lw0;
            else
                lw = jj * std::log(al - 1.0) - (delta + jj) * std::log(al) + lw0;
            const bool use_sf = al < 1.0;
            const double term = kw_integral(
                d,
                [&](double, const KwPoint& k) {
                    return lw + delta * k.log_pdf + xlogy(jj, use_sf ? k.log_sf : k.log_cdf);
                },
                1e-12, breaks);
            integral += term;
            if (j > 0 && negligible(term, integral)) break;
        }
    }
    if (!(integral > 0.0) || !std::isfinite(integral)) throw DivergenceError("renyi_entropy: integral is not finite");
    return std::log(integral) / (1.0 - delta);
}

OrderReport check_stochastic_order(const MokwDistribution& d1, const MokwDistribution& d2,
                                   std::span<const double> grid) {
    check_shapes_match(d1, d2);
    OrderReport rep{true, true, true};
    constexpr double tol = 1e-12;
    double prev_lr = kInf, prev_hr = kInf;
    for (double t : grid) {
        const DensityPoint p1 = d1.evaluate(t), p2 = d2.evaluate(t);
        const double lr = p1.log_pdf - p2.log_pdf;
        const double hr = p1.log_sf - p2.log_sf;
        if (lr > prev_lr + tol) rep.lr_monotone = false;
        if (hr > prev_hr + tol) rep.hr_monotone = false;
        if (hr > tol) rep.sf_dominance = false;
        prev_lr = lr;
        prev_hr = hr;
    }
    return rep;
}

std::vector<double> quantile_grid(const MokwDistribution& d, std::size_t n) {
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double p = n == 1 ? 0.5 : 0.001 + 0.998 * static_cast<double>(k) / static_cast<double>(n - 1);
        out.push_back(d.quantile(p));
    }
    return out;
}

}  // namespace mokw
