#pragma once

// Maximum likelihood and method-of-moments estimation for the MOKw-G and
// KwMO-G families.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mokw/baseline.hpp"
#include "mokw/family.hpp"

namespace mokw {

enum class FamilyKind { Mokw, Kwmo };

std::string_view to_string(FamilyKind f);
FamilyKind parse_family(std::string_view name);

/// Family plus baseline kind; the parameter vector is (alpha, a, b, baseline...).
struct ModelSpec {
    FamilyKind family = FamilyKind::Mokw;
    BaselineKind baseline = BaselineKind::Exponential;
    EwShape shape = EwShape::Linear;

    [[nodiscard]] std::size_t param_count() const { return 3 + Baseline::param_count(baseline, shape); }
    [[nodiscard]] std::vector<std::string> param_names() const;
    [[nodiscard]] std::vector<bool> positivity_mask() const;
    /// Display name such as "MOKw-E" or "KwMO-Fr".
    [[nodiscard]] std::string name() const;

    [[nodiscard]] Baseline baseline_at(std::span<const double> theta) const;
};

struct ParameterVector {
    std::vector<std::string> names;
    std::vector<double> values;
    std::vector<bool> positive;

    /// Componentwise log for positive entries, identity otherwise.
    [[nodiscard]] std::vector<double> to_unconstrained() const;
    void from_unconstrained(std::span<const double> z);
};

ParameterVector make_parameters(const ModelSpec& spec, std::vector<double> values);

/// Dense row-major matrix.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double v = 0.0) : rows(r), cols(c), data(r * c, v) {}
    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Sum of log densities over the data. Returns -inf when any observation
/// has zero density. Invalid parameters raise InvalidParameter.
double loglik(const ModelSpec& spec, std::span<const double> theta, std::span<const double> data);

/// Per-observation log density, same conventions as loglik.
std::vector<double> log_density(const ModelSpec& spec, std::span<const double> theta, std::span<const double> data);

/// Analytic gradient of loglik with respect to theta.
std::vector<double> score(const ModelSpec& spec, std::span<const double> theta, std::span<const double> data);

/// Negative Hessian of loglik. Closed form for MOKw with an exponential
/// baseline; central differences of the score otherwise.
Matrix observed_information(const ModelSpec& spec, std::span<const double> theta, std::span<const double> data);

/// Hessian of loglik for MOKw-E from the ten closed-form second partials.
Matrix mokw_exponential_hessian(std::span<const double> theta, std::span<const double> data);

struct FitOptions {
    std::size_t starts = 20;
    std::uint64_t seed = 20160101;
    /// Start box for the unconstrained parameters.
    double box_lo = -2.995732273553991;  // log 0.05
    double box_hi = 3.912023005428146;   // log 50
    /// Extra user starts (natural scale), tried before the quasi-random ones.
    std::vector<std::vector<double>> initial;
    bool parallel = true;
    /// Unconstrained coordinates are confined to |z| <= this (natural-scale
    /// values in [1e-10, 1e10]); starts ending on that face are boundary fits.
    double z_limit = 23.025850929940457;
    /// Rank interior fits above boundary fits regardless of loglik.
    bool prefer_interior = true;
};

struct StartTrace {
    std::size_t index = 0;
    double loglik = 0.0;
    int evaluations = 0;
    bool converged = false;
    bool boundary = false;
};

struct FitResult {
    ModelSpec spec;
    ParameterVector theta_hat;
    double loglik = 0.0;
    std::vector<double> score_at_opt;
    /// Standard errors; absent when the information matrix is singular.
    std::optional<std::vector<double>> se;
    std::vector<double> ci_low;
    std::vector<double> ci_high;
    Matrix information;
    Matrix vcov;
    bool converged = false;
    /// Every usable start ran to the parameter-range face; the estimate is a
    /// limit of the family rather than an interior maximum.
    bool boundary = false;
    int iterations = 0;
    bool vcov_indefinite = false;
    bool ill_conditioned = false;
    double condition_number = 0.0;
    std::size_t n = 0;
    std::uint64_t data_hash = 0;
    std::vector<StartTrace> trace;
};

/// FNV-1a over the bytes of the data, used to tie fits to one sample.
std::uint64_t data_fingerprint(std::span<const double> data);

FitResult fit_mle(const ModelSpec& spec, std::span<const double> data, const FitOptions& options = {});

/// Fill SEs, Wald intervals and covariance for a given estimate.
void attach_standard_errors(FitResult& fit, std::span<const double> data);

/// Right-hand side E[U^v] for U = 1 - (1-alpha) [1 - G(T)^a]^b.
double moment_rhs(double alpha, unsigned v);

/// Sample mean of U^v.
double moment_statistic(const ModelSpec& spec, std::span<const double> theta, std::span<const double> data, unsigned v);

struct MomentFit {
    std::vector<double> theta;
    std::vector<double> residuals;
    int iterations = 0;
};

/// Solves mean(U^v) = RHS(v), v in orders, for the parameters flagged in
/// free (least squares when overdetermined) by damped Gauss-Newton in the
/// unconstrained scale, starting from theta0.
MomentFit fit_moments(const ModelSpec& spec, std::span<const double> data, std::vector<double> theta0,
                      const std::vector<bool>& free, const std::vector<unsigned>& orders);

}  // namespace mokw
