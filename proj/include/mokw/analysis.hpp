#pragma once

// Series expansions, order statistics, moments, mgf, Renyi entropy and
// stochastic ordering for the MOKw-G family.

#include <cstddef>
#include <span>
#include <vector>

#include "mokw/family.hpp"
#include "mokw/quadrature.hpp"

namespace mokw {

enum class SeriesKind {
    Kappa,
    KappaPrime,
    Phi,
    PhiPrime,
    Eta,
    EtaPrime,
    CPrime,
    XOrder,
    LambdaOrder,
    DPower,
};

/// Indexed weights of one expansion. One-index kinds store w[j]; the
/// triangular kinds (Phi, PhiPrime) store row j at offset j(j+1)/2.
struct SeriesCoefficients {
    SeriesKind kind;
    double alpha = 1.0;
    std::size_t truncation = 0;
    std::size_t i = 0, n = 0, p = 0;
    std::vector<double> weights;

    [[nodiscard]] double operator[](std::size_t j) const { return weights[j]; }
    [[nodiscard]] double at(std::size_t j, std::size_t k) const { return weights[j * (j + 1) / 2 + k]; }
};

inline constexpr std::size_t kDefaultTruncation = 500;

SeriesCoefficients kappa(double alpha, std::size_t J);
SeriesCoefficients kappa_prime(double alpha, std::size_t J);
SeriesCoefficients eta(double alpha, std::size_t J);
SeriesCoefficients eta_prime(double alpha, std::size_t J);
SeriesCoefficients c_prime(double alpha, std::size_t J);
SeriesCoefficients phi(double alpha, std::size_t J);
SeriesCoefficients phi_prime(double alpha, std::size_t J);

/// Coefficients d_{m,k}, k < J, of (sum_k c_k x^k)^m.
SeriesCoefficients d_power(std::span<const double> c, std::size_t m, std::size_t J);

/// Order-statistic weights for one term p of the binomial sum.
///
/// alpha < 1 (XOrder):      f_{i:n} = f_K sum_p S^{n-i+p} sum_k w_k S^k
/// alpha > 1 (LambdaOrder): f_{i:n} = f_K sum_p S^{n-i+p} sum_k w_k F_K^k
///
/// where f_K, F_K, S are the Kw-G pdf, cdf and sf. The factorial and sign
/// factors are folded into w.
SeriesCoefficients x_order(double alpha, std::size_t i, std::size_t n, std::size_t p, std::size_t J);
SeriesCoefficients lambda_order(double alpha, std::size_t i, std::size_t n, std::size_t p, std::size_t J);

/// The inner Kw-G law at t on the log scale.
struct KwPoint {
    double log_pdf;
    double log_cdf;
    double log_sf;
};
KwPoint kw_point(const MokwDistribution& d, double t);

double pdf_series(const MokwDistribution& d, double t, std::size_t J = kDefaultTruncation);
double sf_series(const MokwDistribution& d, double t, std::size_t J = kDefaultTruncation);

enum class Method { Direct, Quadrature, Series };

double order_statistic_pdf(const MokwDistribution& d, std::size_t i, std::size_t n, double t,
                           Method method = Method::Direct, std::size_t J = kDefaultTruncation);

struct PwmSpec {
    unsigned p = 0;
    unsigned q = 0;
    unsigned r = 0;
    double tolerance = 1e-10;
};

/// Gamma_{p,q,r} of the inner Kw-G law: E[T^p F_K^q S^r] under f_K.
double pwm(const MokwDistribution& d, const PwmSpec& spec);

double moment(const MokwDistribution& d, unsigned s, Method method = Method::Quadrature,
              std::size_t J = kDefaultTruncation);

/// Moment via the double sum over phi_{j,k} (alpha < 1 only).
double moment_phi(const MokwDistribution& d, unsigned s, std::size_t J = kDefaultTruncation);

double mgf(const MokwDistribution& d, double s, Method method = Method::Quadrature,
           std::size_t J = kDefaultTruncation);

double renyi_entropy(const MokwDistribution& d, double delta, Method method = Method::Quadrature,
                     std::size_t J = kDefaultTruncation);

struct OrderReport {
    bool lr_monotone = false;
    bool sf_dominance = false;
    bool hr_monotone = false;
};

/// Checks on the grid that d1 precedes d2 in the likelihood-ratio,
/// usual stochastic and hazard-rate orders.
OrderReport check_stochastic_order(const MokwDistribution& d1, const MokwDistribution& d2,
                                   std::span<const double> grid);

/// n points between the 0.001 and 0.999 quantiles of d.
std::vector<double> quantile_grid(const MokwDistribution& d, std::size_t n);

}  // namespace mokw
