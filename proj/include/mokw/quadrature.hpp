#pragma once

// Adaptive Gauss-Kronrod (7/15) integration on finite and semi-infinite
// intervals.

#include <functional>

namespace mokw {

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_intervals = 4000;
    /// Scale s of the map t = lower + s u / (1 - u) used for infinite ends.
    double tail_scale = 1.0;
    /// Throw ConvergenceError instead of returning an unconverged result.
    bool strict = true;
};

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
    int evaluations = 0;
    int intervals = 0;
    bool converged = false;
};

/// Integral of f over (lo, hi); either end may be infinite. A non-finite
/// integrand value raises DivergenceError.
QuadResult integrate(const std::function<double(double)>& f, double lo, double hi,
                     const QuadOptions& options = {});

}  // namespace mokw
