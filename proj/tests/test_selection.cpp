#include <doctest.h>

#include <cmath>
#include <vector>

#include "mokw/datasets.hpp"
#include "mokw/errors.hpp"
#include "mokw/quadrature.hpp"
#include "mokw/selection.hpp"
#include "oracles.hpp"

using namespace mokw;

namespace {

double round2(double x) { return std::round(x * 100.0) / 100.0; }

FitResult fake_fit(const ModelSpec& s, std::vector<double> th, double ll, std::span<const double> data) {
    FitResult f;
    f.spec = s;
    f.theta_hat = make_parameters(s, std::move(th));
    f.loglik = ll;
    f.n = data.size();
    f.data_hash = data_fingerprint(data);
    return f;
}

}  // namespace

TEST_CASE("criteria on the nicotine MOKw-E row") {
    const auto c = criteria(4, 346, -106.61);
    CHECK(round2(c.aic) == doctest::Approx(221.22));
    CHECK(round2(c.bic) == doctest::Approx(236.61));
    CHECK(round2(c.caic) == doctest::Approx(221.34));
    CHECK(round2(c.hqic) == doctest::Approx(227.35));
}

TEST_CASE("criteria on the carbon MOKw-Fr row") {
    const auto c = criteria(5, 100, -141.63);
    CHECK(round2(c.aic) == doctest::Approx(293.26));
    CHECK(round2(c.bic) == doctest::Approx(306.29));
    // Exact arithmetic gives 293.8983 and 298.5318; the reference 293.89 and
    // 298.54 are off by one in the last digit.
    CHECK(c.caic == doctest::Approx(293.89).epsilon(0.01 / 293.89));
    CHECK(c.hqic == doctest::Approx(298.54).epsilon(0.01 / 298.54));
}

TEST_CASE("criteria hand arithmetic and domain") {
    const auto c = criteria(3, 50, -20.0);
    CHECK(c.aic == 2 * 3 + 40.0);
    CHECK(c.bic == 3 * std::log(50.0) + 40.0);
    CHECK(c.caic == c.aic + 2.0 * 3 * 4 / 46.0);
    CHECK(c.hqic == 6 * std::log(std::log(50.0)) + 40.0);
    const auto z = criteria(0, 10, 0.0);
    CHECK(z.aic == 0.0);
    CHECK(z.bic == 0.0);
    CHECK(z.caic == 0.0);
    CHECK(z.hqic == 0.0);
    CHECK_THROWS_AS((void)criteria(4, 5, -1.0), DomainError);
    CHECK_NOTHROW((void)criteria(4, 6, -1.0));
}

TEST_CASE("equal k: AIC order follows -loglik") {
    const double ls[] = {-10.0, -3.5, -7.25, -12.0};
    for (double x : ls)
        for (double y : ls) CHECK((criteria(4, 100, x).aic < criteria(4, 100, y).aic) == (x > y));
}

TEST_CASE("KwMO reductions") {
    for (const auto& c : oracle::zoo()) {
        const auto d1 = kwmo_distribution(c.base, 1.0, 1.7, 0.6);
        const auto d2 = kwmo_distribution(c.base, 2.5, 1.0, 1.0);
        for (double t : oracle::grid(c.lo, c.hi, 15)) {
            const double G = c.cdf(t), g = c.pdf(t);
            const double kw = -std::expm1(0.6 * std::log1p(-std::pow(G, 1.7)));
            const double M = G / (0.4 + 0.6 * G);
            const double kwmo = -std::expm1(3.0 * std::log1p(-M * M));
            const double mo = G / (2.5 - 1.5 * G);
            INFO(c.label, " t=", t);
            CHECK(oracle::rel_err(d1.cdf(t), kw) < 1e-12);
            CHECK(oracle::rel_err(d2.cdf(t), mo) < 1e-12);
            CHECK(oracle::rel_err(d2.pdf(t), 2.5 * g / std::pow(2.5 - 1.5 * G, 2)) < 1e-12);
            CHECK(oracle::rel_err(kwmo_distribution(c.base, 0.4, 2.0, 3.0).cdf(t), kwmo) < 1e-12);
        }
    }
}

TEST_CASE("KwMO density integrates to one") {
    for (const auto& c : oracle::zoo()) {
        const auto d = kwmo_distribution(c.base, 0.6, 1.8, 2.5);
        const double lo = d.quantile(1e-9), hi = d.quantile(1 - 1e-9);
        const double mass = integrate([&](double t) { return d.pdf(t); }, lo, hi).value;
        INFO(c.label);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("fitted_distribution agrees with loglik") {
    const std::vector<double> data = {0.4, 1.1, 2.3};
    for (FamilyKind f : {FamilyKind::Mokw, FamilyKind::Kwmo}) {
        const ModelSpec s{f, BaselineKind::Weibull};
        const std::vector<double> th = {0.7, 1.9, 2.2, 0.8, 1.3};
        const auto d = fitted_distribution(s, th);
        double ref = 0.0;
        for (double t : data) ref += d.log_pdf(t);
        CHECK(loglik(s, th, data) == doctest::Approx(ref).epsilon(1e-13));
    }
}

TEST_CASE("compare marks the minimum per criterion") {
    const auto data = embedded_dataset("nicotine").values;
    const ModelSpec e{FamilyKind::Mokw, BaselineKind::Exponential}, ke{FamilyKind::Kwmo, BaselineKind::Exponential};
    const ModelSpec fr{FamilyKind::Mokw, BaselineKind::Frechet}, kfr{FamilyKind::Kwmo, BaselineKind::Frechet};
    const std::vector<FitResult> fits = {
        fake_fit(kfr, {1, 1, 1, 1, 1}, -155.49, data),
        fake_fit(fr, {1, 1, 1, 1, 1}, -110.27, data),
        fake_fit(ke, {1, 1, 1, 1}, -107.89, data),
        fake_fit(e, {1, 1, 1, 1}, -106.61, data),
    };
    const auto t = compare(fits, data);
    REQUIRE(t.rows.size() == 4);
    CHECK(t.rows[0].model == "KwMO-Fr");
    CHECK(t.rows[3].model == "MOKw-E");
    for (Criterion c : {Criterion::Aic, Criterion::Bic, Criterion::Caic, Criterion::Hqic}) CHECK(t.is_best(3, c));
    CHECK(round2(t.rows[0].criteria.aic) == doctest::Approx(320.98));
    CHECK(round2(t.rows[2].criteria.bic) == doctest::Approx(239.17));

    const auto one = compare({fits[1]}, data);
    for (Criterion c : {Criterion::Aic, Criterion::Bic, Criterion::Caic, Criterion::Hqic}) CHECK(one.is_best(0, c));

    const auto carbon = embedded_dataset("carbon").values;
    CHECK_THROWS_AS((void)compare(fits, carbon), DomainError);
    CHECK_THROWS_AS((void)compare({}, data), DomainError);
}
