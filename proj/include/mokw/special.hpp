#pragma once

// Scalar special-function helpers shared by every module.

#include <cmath>
#include <limits>
#include <random>

namespace mokw {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
inline constexpr double kLn2 = 0.693147180559945309417232121458176568;

/// log(1 - exp(x)) for x <= 0, accurate across the whole range.
inline double log1mexp(double x) {
    if (x > 0.0) return kNaN;
    if (x == 0.0) return -kInf;
    return x > -kLn2 ? std::log(-std::expm1(x)) : std::log1p(-std::exp(x));
}

/// log(1 - p^a) from the pair (log p, log(1 - p)); keeps precision as p -> 1.
inline double log1m_pow(double log_p, double log_q, double a) {
    if (log_q < -18.0) {
        // a log p = -a q (1 + q/2 + ...)
        const double q = std::exp(log_q);
        const double lx = std::log(a) + log_q;
        if (lx < -20.0) return lx + 0.5 * (1.0 - a) * q;
        return log1mexp(-std::exp(lx) * (1.0 + 0.5 * q));
    }
    return log1mexp(a * log_p);
}

/// c * log x given log x, with 0 * log 0 taken as 0.
inline double xlogy(double c, double log_x) { return c == 0.0 ? 0.0 : c * log_x; }

/// log(1 - (1-alpha) S) from log S, without cancellation for alpha near 1.
inline double log_tilt_denominator(double alpha, double log_s) {
    const double abar = 1.0 - alpha;
    if (abar >= 0.0) return std::log(alpha - abar * std::expm1(log_s));
    return std::log(1.0 - abar * std::exp(log_s));
}

/// log(exp(x) + exp(y)).
inline double logaddexp(double x, double y) {
    if (x == -kInf) return y;
    if (y == -kInf) return x;
    const double m = x > y ? x : y;
    return m + std::log1p(std::exp(-std::fabs(x - y)));
}

/// Uniform draw on the open interval (0,1).
inline double uniform_open(std::mt19937_64& rng) {
    for (;;) {
        const double u = std::generate_canonical<double, 53>(rng);
        if (u > 0.0 && u < 1.0) return u;
    }
}

/// Standard normal density.
double normal_pdf(double z);

/// Standard normal cdf.
double normal_cdf(double z);

/// log of the standard normal cdf; finite far into the lower tail.
double normal_log_cdf(double z);

/// Inverse of the standard normal cdf, p in (0,1).
double normal_quantile(double p);

/// Inverse of the standard normal survival function, q in (0,1). Equivalent
/// to -normal_quantile(q) but keeps full accuracy for tiny q.
double normal_upper_quantile(double q);

/// log(n choose k).
double log_binomial(double n, double k);

/// Exact binomial coefficient as double (small arguments).
double binomial(int n, int k);

}  // namespace mokw
