#pragma once

// The Marshall-Olkin-Kumaraswamy-G distribution.

#include <cstdint>
#include <vector>

#include "mokw/baseline.hpp"
#include "mokw/transform.hpp"

namespace mokw {

/// MO(alpha) applied to Kw(a, b) applied to a baseline G:
///
///   F(t) = (1 - S) / (1 - (1-alpha) S),   S = [1 - G(t)^a]^b.
class MokwDistribution {
public:
    MokwDistribution(Baseline base, double alpha, double a, double b);

    static MokwDistribution exponential(double alpha, double a, double b, double lambda);
    static MokwDistribution lomax(double alpha, double a, double b, double beta, double delta);
    static MokwDistribution weibull(double alpha, double a, double b, double lambda, double beta);
    static MokwDistribution frechet(double alpha, double a, double b, double lambda, double delta);
    static MokwDistribution gompertz(double alpha, double a, double b, double beta, double lambda);
    static MokwDistribution extended_weibull(double alpha, double a, double b, double delta, EwShape shape,
                                             double xi = 0.0);
    static MokwDistribution modified_weibull(double alpha, double a, double b, double sigma, double beta,
                                             double gamma);
    static MokwDistribution power_lognormal(double alpha, double a, double b, double p, double mu,
                                            double sigma);
    static MokwDistribution exponentiated_pareto(double alpha, double a, double b, double gamma, double k,
                                                 double theta);
    static MokwDistribution extended_power(double alpha, double a, double b, double k, double theta);

    [[nodiscard]] const Baseline& baseline() const { return base_; }
    [[nodiscard]] double alpha() const { return alpha_; }
    [[nodiscard]] double alpha_bar() const { return 1.0 - alpha_; }
    [[nodiscard]] double a() const { return a_; }
    [[nodiscard]] double b() const { return b_; }
    [[nodiscard]] Support support() const { return base_.support(); }

    /// Same baseline and shapes with a different tilt.
    [[nodiscard]] MokwDistribution with_alpha(double alpha) const;

    /// The transform-chain view [Kw(a,b), MO(alpha)] of the same law.
    [[nodiscard]] ComposedDistribution as_composed() const;

    [[nodiscard]] DensityPoint evaluate(double t) const;
    [[nodiscard]] double pdf(double t) const;
    [[nodiscard]] double log_pdf(double t) const;
    [[nodiscard]] double cdf(double t) const;
    [[nodiscard]] double sf(double t) const;
    [[nodiscard]] double hrf(double t) const;
    [[nodiscard]] double rhrf(double t) const;
    [[nodiscard]] double chrf(double t) const;

    /// d/dt log f(t) and d/dt log h(t), closed form.
    [[nodiscard]] double dlog_pdf_dt(double t) const;
    [[nodiscard]] double dlog_hrf_dt(double t) const;

    [[nodiscard]] double quantile(double p) const;
    /// Point with survival probability q, resolved from the upper tail.
    [[nodiscard]] double upper_quantile(double q) const;
    [[nodiscard]] std::vector<double> sample(std::size_t n, std::uint64_t seed) const;

private:
    Baseline base_;
    double alpha_;
    double a_;
    double b_;
};

struct GenesisReport {
    double max_sf_deviation = 0.0;
    std::size_t trials = 0;
    /// false: minimum of a geometric number of draws (alpha < 1);
    /// true: maximum with parameter 1/alpha (alpha > 1).
    bool maximum_construction = false;
    double mean_count = 0.0;
};

/// Simulate the geometric extreme construction and compare its empirical
/// survival function with the closed form on a grid of 99 quantiles.
GenesisReport verify_genesis(const MokwDistribution& d, std::size_t n_trials, std::uint64_t seed);

struct AsymptoteReport {
    std::vector<double> lower_t;
    std::vector<double> lower_pdf_ratio;
    std::vector<double> lower_hrf_ratio;
    std::vector<double> upper_t;
    std::vector<double> upper_pdf_ratio;
    std::vector<double> upper_hrf_ratio;
    bool lower_converges = false;
    bool upper_converges = false;
};

/// Ratios of pdf and hrf to their boundary asymptotes on sequences that
/// approach each end of the support.
AsymptoteReport asymptote_check(const MokwDistribution& d, double tol = 1e-3);

enum class CriticalTarget { Density, Hazard };
enum class CriticalKind { Maximum, Minimum, Inflexion };

struct CriticalPoint {
    double t;
    CriticalKind kind;
    double curvature;
};

struct CriticalPointReport {
    std::vector<CriticalPoint> roots;
    double t_lo = 0.0;
    double t_hi = 0.0;
    std::size_t grid_n = 0;
    /// The log-derivative is constant (no isolated critical points).
    bool degenerate = false;
};

CriticalPointReport critical_points(const MokwDistribution& d, CriticalTarget target, double t_lo,
                                    double t_hi, std::size_t grid_n = 512);

}  // namespace mokw
