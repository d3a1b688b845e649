#pragma once

// Information criteria, comparison tables and the Kw(MO(G)) comparison family.

#include <span>
#include <string>
#include <vector>

#include "mokw/estimation.hpp"
#include "mokw/transform.hpp"

namespace mokw {

struct CriteriaSet {
    std::size_t k = 0;
    std::size_t n = 0;
    double loglik = 0.0;
    double aic = 0.0;
    double bic = 0.0;
    double caic = 0.0;
    double hqic = 0.0;
};

/// AIC, BIC, corrected AIC and Hannan-Quinn for k parameters and n points.
/// Requires n > k + 1.
CriteriaSet criteria(std::size_t k, std::size_t n, double loglik);

/// Kw(a, b) applied to the MO(alpha)-tilted baseline.
ComposedDistribution kwmo_distribution(const Baseline& base, double alpha, double a, double b);

/// The fitted law as a transform chain, for either family.
ComposedDistribution fitted_distribution(const ModelSpec& spec, std::span<const double> theta);

enum class Criterion { Aic, Bic, Caic, Hqic };

struct ComparisonRow {
    std::string model;
    FitResult fit;
    CriteriaSet criteria;
};

struct ComparisonTable {
    std::vector<ComparisonRow> rows;
    /// Row index with the smallest value of each criterion (AIC, BIC, CAIC, HQIC).
    std::size_t best[4] = {0, 0, 0, 0};

    [[nodiscard]] std::size_t best_by(Criterion c) const { return best[static_cast<int>(c)]; }
    [[nodiscard]] bool is_best(std::size_t row, Criterion c) const { return best_by(c) == row; }
};

/// Rows in the order given. Throws DomainError when the fits were made on
/// different samples or the list is empty.
ComparisonTable compare(const std::vector<FitResult>& fits, std::span<const double> data);

}  // namespace mokw
