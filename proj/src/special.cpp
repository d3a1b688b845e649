#include "mokw/special.hpp"

#include <array>

#include "mokw/errors.hpp"

namespace mokw {

namespace {

constexpr double kInvSqrt2 = 0.707106781186547524400844362104849039;
constexpr double kLogSqrt2Pi = 0.918938533204672741780329736405617640;

// Acklam's rational approximation (relative error ~1e-9), refined below.
double acklam_initial(double p) {
    static constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02,
                                             -2.759285104469687e+02, 1.383577518672690e+02,
                                             -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02,
                                             -1.556989798598866e+02, 6.680131188771972e+01,
                                             -1.328068155288572e+01};
    static constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01,
                                             -2.400758277161838e+00, -2.549732539343734e+00,
                                             4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01,
                                             2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - p_low) {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double normal_pdf(double z) { return std::exp(-0.5 * z * z - kLogSqrt2Pi); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z * kInvSqrt2); }

double normal_log_cdf(double z) {
    if (z > -35.0) {
        if (z > 5.0) return std::log1p(-0.5 * std::erfc(z * kInvSqrt2));
        return std::log(normal_cdf(z));
    }
    // Asymptotic Mills-ratio series; truncation error below 1e-12 here.
    const double w = 1.0 / (z * z);
    const double series = 1.0 + w * (-1.0 + w * (3.0 + w * (-15.0 + w * 105.0)));
    return -0.5 * z * z - std::log(-z) - kLogSqrt2Pi + std::log(series);
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        if (p == 0.0) return -kInf;
        if (p == 1.0) return kInf;
        throw DomainError("normal_quantile: p must lie in [0,1]");
    }
    if (p > 0.5) return normal_upper_quantile(1.0 - p);
    double z = acklam_initial(p);
    // Halley refinement against the lower tail.
    for (int it = 0; it < 3; ++it) {
        const double e = normal_cdf(z) - p;
        const double u = e / normal_pdf(z);
        z -= u / (1.0 + 0.5 * z * u);
    }
    return z;
}

double normal_upper_quantile(double q) {
    if (!(q > 0.0 && q < 1.0)) {
        if (q == 0.0) return kInf;
        if (q == 1.0) return -kInf;
        throw DomainError("normal_upper_quantile: q must lie in [0,1]");
    }
    if (q > 0.5) return -normal_upper_quantile(1.0 - q);
    double z = -acklam_initial(q);
    for (int it = 0; it < 3; ++it) {
        const double e = 0.5 * std::erfc(z * kInvSqrt2) - q;
        const double u = -e / normal_pdf(z);
        z -= u / (1.0 + 0.5 * z * u);
    }
    return z;
}

double log_binomial(double n, double k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    if (k > n - k) k = n - k;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r < 9.0e15 ? std::round(r) : r;
}

}  // namespace mokw
