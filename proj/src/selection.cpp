#include "mokw/selection.hpp"

#include <cmath>

#include "mokw/errors.hpp"

namespace mokw {

CriteriaSet criteria(std::size_t k, std::size_t n, double loglik) {
    if (n <= k + 1) throw DomainError("criteria: need n > k + 1");
    const double dk = static_cast<double>(k), dn = static_cast<double>(n);
    CriteriaSet c{k, n, loglik};
    c.aic = 2.0 * dk - 2.0 * loglik;
    c.bic = dk * std::log(dn) - 2.0 * loglik;
    c.caic = c.aic + 2.0 * dk * (dk + 1.0) / (dn - dk - 1.0);
    c.hqic = 2.0 * dk * std::log(std::log(dn)) - 2.0 * loglik;
    return c;
}

ComposedDistribution kwmo_distribution(const Baseline& base, double alpha, double a, double b) {
    return compose({MoTilt(alpha), KwMap(a, b)}, base);
}

ComposedDistribution fitted_distribution(const ModelSpec& spec, std::span<const double> theta) {
    const Baseline base = spec.baseline_at(theta);
    if (spec.family == FamilyKind::Kwmo) return kwmo_distribution(base, theta[0], theta[1], theta[2]);
    return compose({KwMap(theta[1], theta[2]), MoTilt(theta[0])}, base);
}

ComparisonTable compare(const std::vector<FitResult>& fits, std::span<const double> data) {
    if (fits.empty()) throw DomainError("compare: no models");
    const auto hash = data_fingerprint(data);
    ComparisonTable t;
    for (const auto& f : fits) {
        if (f.n != data.size() || f.data_hash != hash)
            throw DomainError("compare: " + f.spec.name() + " was fitted to different data");
        t.rows.push_back({f.spec.name(), f, criteria(f.theta_hat.values.size(), data.size(), f.loglik)});
    }
    auto value = [](const CriteriaSet& c, int which) {
        const double v[4] = {c.aic, c.bic, c.caic, c.hqic};
        return v[which];
    };
    for (int c = 0; c < 4; ++c)
        for (std::size_t r = 1; r < t.rows.size(); ++r)
            if (value(t.rows[r].criteria, c) < value(t.rows[t.best[c]].criteria, c)) t.best[c] = r;
    return t;
}

}  // namespace mokw
