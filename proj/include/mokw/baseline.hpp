#pragma once

// Baseline distributions G that the generator transforms act on.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mokw {

enum class BaselineKind {
    Exponential,          // (lambda)
    Lomax,                // (beta, delta)
    Weibull,              // (lambda, beta)
    Frechet,              // (lambda, delta)
    Gompertz,             // (beta, lambda)
    ExtendedWeibull,      // (delta [, xi])
    ModifiedWeibull,      // (sigma, beta, gamma)
    PowerLogNormal,       // (p, mu, sigma)
    ExponentiatedPareto,  // (gamma, k, theta)
    ExtendedPower,        // (k, theta)
};

/// Choice of the increasing function E(t; xi) in the extended Weibull class
/// G(t) = 1 - exp(-delta E(t; xi)).
enum class EwShape {
    Linear,    // E = t               -> exponential
    Square,    // E = t^2             -> Rayleigh
    Pareto,    // E = log(t / k)      -> Pareto, xi = k
    Gompertz,  // E = (e^{beta t}-1)/beta, xi = beta
};

struct Support {
    double lower;
    double upper;
    [[nodiscard]] bool contains(double t) const { return t > lower && t < upper; }
};

/// A baseline evaluated on the log scale at one interior point.
struct BaselinePoint {
    double log_pdf;
    double log_cdf;
    double log_sf;
};

/// A named baseline G with a validated parameter vector.
///
/// Immutable after construction. All evaluation is done on the log scale so
/// that both tails keep full relative accuracy; pdf/cdf/sf are thin wrappers.
class Baseline {
public:
    Baseline(BaselineKind kind, std::vector<double> params, EwShape shape = EwShape::Linear);

    static Baseline exponential(double lambda);
    static Baseline lomax(double beta, double delta);
    static Baseline weibull(double lambda, double beta);
    static Baseline frechet(double lambda, double delta);
    static Baseline gompertz(double beta, double lambda);
    static Baseline extended_weibull(double delta, EwShape shape, double xi = 0.0);
    static Baseline modified_weibull(double sigma, double beta, double gamma);
    static Baseline power_lognormal(double p, double mu, double sigma);
    static Baseline exponentiated_pareto(double gamma, double k, double theta);
    static Baseline extended_power(double k, double theta);

    [[nodiscard]] BaselineKind kind() const { return kind_; }
    [[nodiscard]] EwShape ew_shape() const { return shape_; }
    [[nodiscard]] std::span<const double> params() const { return params_; }
    [[nodiscard]] std::size_t param_count() const { return params_.size(); }
    [[nodiscard]] std::vector<std::string> param_names() const;
    [[nodiscard]] std::string name() const;

    /// Same kind and shape, new parameter values (validated).
    [[nodiscard]] Baseline with_params(std::span<const double> params) const;

    [[nodiscard]] Support support() const;

    [[nodiscard]] double pdf(double t) const;
    [[nodiscard]] double log_pdf(double t) const;
    [[nodiscard]] double cdf(double t) const;
    [[nodiscard]] double sf(double t) const;

    /// log g, log G, log(1-G) at t. Outside the support the cdf/sf are
    /// clamped and log_pdf is -inf.
    [[nodiscard]] BaselinePoint evaluate(double t) const;

    /// Evaluate many points at once (dispatches to vector kernels for the
    /// kinds that have them).
    void evaluate_batch(std::span<const double> t, std::span<double> log_pdf,
                        std::span<double> log_cdf, std::span<double> log_sf) const;

    /// G^{-1}(p) for p in (0,1).
    [[nodiscard]] double quantile(double p) const;

    /// G^{-1} given both p and its complement q = 1-p; whichever is smaller
    /// is trusted, so tail quantiles keep their precision.
    [[nodiscard]] double quantile(double p, double q) const;

    /// d/dt log g(t) in closed form.
    [[nodiscard]] double dlog_pdf_dt(double t) const;

    /// Partial derivatives of log g(t) and log G(t) with respect to each
    /// baseline parameter. Both spans must have param_count() elements.
    void param_gradient(double t, std::span<double> dlog_pdf, std::span<double> dlog_cdf) const;
    /// As above, plus the partials of log(1-G), which stay accurate in the
    /// upper tail where those of log G underflow.
    void param_gradient(double t, std::span<double> dlog_pdf, std::span<double> dlog_cdf,
                        std::span<double> dlog_sf) const;

    /// Characteristic scale (median distance from the lower support bound).
    [[nodiscard]] double scale_hint() const;

    /// Component-wise flag: parameter must be strictly positive.
    [[nodiscard]] std::vector<bool> positivity_mask() const;

    static std::size_t param_count(BaselineKind kind, EwShape shape = EwShape::Linear);

private:
    void validate() const;

    BaselineKind kind_;
    EwShape shape_;
    std::vector<double> params_;
};

std::string_view to_string(BaselineKind kind);
std::string_view to_string(EwShape shape);

/// Parse the short CLI names: exp, lomax, weibull, frechet, gompertz, ew,
/// emw, pln, eep, ep.
BaselineKind parse_baseline_kind(std::string_view name);
EwShape parse_ew_shape(std::string_view name);
std::string_view short_name(BaselineKind kind);

}  // namespace mokw
