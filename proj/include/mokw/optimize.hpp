#pragma once

// Unconstrained minimizers used by the likelihood fits.

#include <functional>
#include <span>
#include <vector>

namespace mokw {

using Objective = std::function<double(std::span<const double>)>;
using Gradient = std::function<void(std::span<const double>, std::span<double>)>;

struct OptimResult {
    std::vector<double> x;
    double f = 0.0;
    int evaluations = 0;
    int iterations = 0;
    bool converged = false;
};

struct NelderMeadOptions {
    /// Stop when max f - min f over the simplex is below f_tol * max(1, |f_best|).
    double f_tol = 1e-10;
    int max_evaluations = 20000;
    double initial_step = 0.5;
    /// Restarts from the best vertex after convergence.
    int restarts = 1;
};

/// Nelder-Mead with dimension-adaptive coefficients. Non-finite objective
/// values are treated as +inf.
OptimResult nelder_mead(const Objective& f, std::vector<double> x0, const NelderMeadOptions& options = {});

struct BfgsOptions {
    int max_iterations = 50;
    double grad_tol = 1e-6;
    double step_tol = 1e-12;
};

/// BFGS with a backtracking (Armijo) line search. Never returns a point worse
/// than x0.
OptimResult bfgs(const Objective& f, const Gradient& grad, std::vector<double> x0, const BfgsOptions& options = {});

}  // namespace mokw
