#pragma once

// Unit-interval cdf transforms and their composition with a baseline.

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "mokw/baseline.hpp"

namespace mokw {

/// Marshall-Olkin tilt u -> u / (alpha + (1-alpha) u).
struct MoTilt {
    double alpha;
    explicit MoTilt(double alpha_);
    [[nodiscard]] double alpha_bar() const { return 1.0 - alpha; }
};

/// Kumaraswamy map u -> 1 - (1 - u^a)^b.
struct KwMap {
    double a;
    double b;
    KwMap(double a_, double b_);
};

using Transform = std::variant<MoTilt, KwMap>;

/// A probability carried as the pair (log u, log(1-u)), so that both ends of
/// [0,1] keep full relative precision through a chain of transforms.
struct LogProb {
    double log_p;
    double log_q;
};

// Scalar forms on the natural scale.
double mo_cdf(double u, double alpha);
double mo_density_factor(double u, double alpha);
double mo_inverse(double v, double alpha);
double kw_cdf(double u, double a, double b);
double kw_density_factor(double u, double a, double b);
double kw_inverse(double v, double a, double b);

/// Apply a transform to a log-probability pair; `log_factor` (optional)
/// receives the log of the chain-rule density factor at the input.
LogProb apply(const Transform& tr, LogProb u, double* log_factor = nullptr);

/// Inverse of apply().
LogProb invert(const Transform& tr, LogProb v);

/// Transforms in application order: the first acts on G, the last produces F.
using TransformChain = std::vector<Transform>;

struct DensityPoint {
    double log_pdf;
    double log_cdf;
    double log_sf;
};

/// A baseline pushed through a transform chain.
class ComposedDistribution {
public:
    ComposedDistribution(Baseline base, TransformChain chain);

    [[nodiscard]] const Baseline& baseline() const { return base_; }
    [[nodiscard]] const TransformChain& chain() const { return chain_; }
    [[nodiscard]] Support support() const { return base_.support(); }

    [[nodiscard]] DensityPoint evaluate(double t) const;
    [[nodiscard]] double pdf(double t) const;
    [[nodiscard]] double log_pdf(double t) const;
    [[nodiscard]] double cdf(double t) const;
    [[nodiscard]] double sf(double t) const;
    [[nodiscard]] double hrf(double t) const;

    /// F^{-1}(p), p in (0,1).
    [[nodiscard]] double quantile(double p) const;

    /// Inversion draws from a 64-bit Mersenne Twister seeded with `seed`.
    [[nodiscard]] std::vector<double> sample(std::size_t n, std::uint64_t seed) const;

private:
    Baseline base_;
    TransformChain chain_;
};

ComposedDistribution compose(const TransformChain& chain, const Baseline& base);

}  // namespace mokw
