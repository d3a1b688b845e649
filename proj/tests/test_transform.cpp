#include <doctest.h>

#include <cmath>
#include <random>

#include "mokw/errors.hpp"
#include "mokw/transform.hpp"
#include "oracles.hpp"

using namespace mokw;

TEST_CASE("mo_cdf examples") {
    CHECK(mo_cdf(0.5, 1.0) == 0.5);
    CHECK(mo_cdf(0.5, 2.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(mo_cdf(0.25, 0.5) == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(mo_cdf(0.0, 3.0) == 0.0);
    CHECK(mo_cdf(1.0, 3.0) == 1.0);
}

TEST_CASE("mo_density_factor examples") {
    CHECK(mo_density_factor(0.3, 1.0) == 1.0);
    CHECK(mo_density_factor(0.0, 2.0) == doctest::Approx(0.5));
    CHECK(mo_density_factor(0.5, 0.5) == doctest::Approx(0.5 / 0.5625).epsilon(1e-14));
}

TEST_CASE("kw_cdf and kw_density_factor examples") {
    CHECK(kw_cdf(0.5, 1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(kw_cdf(0.5, 2.0, 1.0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(kw_cdf(0.5, 2.0, 3.0) == doctest::Approx(0.578125).epsilon(1e-15));
    CHECK(kw_density_factor(0.5, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(kw_density_factor(0.5, 2.0, 2.0) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(kw_density_factor(0.5, 2.0, 3.0) == doctest::Approx(1.6875).epsilon(1e-14));
}

TEST_CASE("boundary density factors") {
    CHECK(std::isinf(kw_density_factor(0.0, 0.5, 2.0)));
    CHECK(kw_density_factor(0.0, 2.0, 2.0) == 0.0);
    CHECK(kw_density_factor(0.0, 1.0, 2.0) == doctest::Approx(2.0));
    CHECK(std::isinf(kw_density_factor(1.0, 2.0, 0.5)));
}

TEST_CASE("inverse examples") {
    CHECK(mo_inverse(1.0 / 3.0, 2.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(mo_inverse(0.4, 0.5) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(mo_inverse(0.5, 1.0) == 0.5);
    CHECK(kw_inverse(0.578125, 2.0, 3.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(kw_inverse(0.25, 2.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(kw_inverse(0.5, 1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("arguments outside the unit interval are rejected") {
    CHECK_THROWS_AS((void)mo_cdf(1.5, 2.0), DomainError);
    CHECK_THROWS_AS((void)kw_cdf(-0.1, 2.0, 2.0), DomainError);
    CHECK_THROWS_AS(MoTilt(0.0), InvalidParameter);
    CHECK_THROWS_AS(KwMap(1.0, -1.0), InvalidParameter);
}

TEST_CASE("transforms are increasing bijections fixing the endpoints") {
    for (double al : {0.2, 1.0, 4.0}) {
        double prev = -1.0;
        for (double u : oracle::grid(0.0, 1.0, 101)) {
            const double v = mo_cdf(u, al);
            CHECK(v > prev);
            prev = v;
        }
    }
    for (auto [a, b] : {std::pair{0.4, 3.0}, std::pair{2.0, 0.5}, std::pair{1.0, 1.0}}) {
        double prev = -1.0;
        for (double u : oracle::grid(0.0, 1.0, 101)) {
            const double v = kw_cdf(u, a, b);
            CHECK(v > prev);
            prev = v;
        }
        CHECK(kw_cdf(0.0, a, b) == 0.0);
        CHECK(kw_cdf(1.0, a, b) == 1.0);
    }
}

TEST_CASE("density factors are derivatives of the maps") {
    for (double u : oracle::grid(0.05, 0.95, 19)) {
        const double h = 1e-6;
        for (double al : {0.3, 2.5}) {
            const double num = (mo_cdf(u + h, al) - mo_cdf(u - h, al)) / (2 * h);
            CHECK(oracle::rel_err(mo_density_factor(u, al), num) < 1e-6);
        }
        for (auto [a, b] : {std::pair{0.7, 2.0}, std::pair{3.0, 0.6}}) {
            const double num = (kw_cdf(u + h, a, b) - kw_cdf(u - h, a, b)) / (2 * h);
            CHECK(oracle::rel_err(kw_density_factor(u, a, b), num) < 1e-6);
        }
    }
}

TEST_CASE("inverses undo the maps") {
    for (double u : oracle::grid(0.0, 1.0, 41)) {
        for (double al : {0.1, 0.9, 7.0}) CHECK(std::fabs(mo_inverse(mo_cdf(u, al), al) - u) < 1e-12);
        for (auto [a, b] : {std::pair{0.3, 4.0}, std::pair{2.5, 0.8}}) {
            // On the natural scale 1 - v is cancelled near u = 1; the log pair is not.
            if (u <= 0.9) CHECK(std::fabs(kw_inverse(kw_cdf(u, a, b), a, b) - u) < 1e-12);
            const LogProb p{std::log(u), std::log1p(-u)};
            const LogProb back = invert(KwMap(a, b), apply(KwMap(a, b), p));
            CHECK(std::fabs(std::exp(back.log_p) - u) < 1e-12);
            CHECK(std::fabs(-std::expm1(back.log_p) - (1 - u)) < 1e-12);
        }
    }
}

TEST_CASE("log-pair application matches the natural-scale maps") {
    for (double u : oracle::grid(0.01, 0.99, 23)) {
        const LogProb p{std::log(u), std::log1p(-u)};
        double f = 0.0;
        const LogProb m = apply(MoTilt(0.4), p, &f);
        CHECK(oracle::rel_err(std::exp(m.log_p), mo_cdf(u, 0.4)) < 1e-14);
        CHECK(oracle::rel_err(std::exp(m.log_q), 1 - mo_cdf(u, 0.4)) < 1e-13);
        CHECK(oracle::rel_err(std::exp(f), mo_density_factor(u, 0.4)) < 1e-14);
        const LogProb k = apply(KwMap(2.0, 3.0), p, &f);
        CHECK(oracle::rel_err(std::exp(k.log_p), kw_cdf(u, 2.0, 3.0)) < 1e-13);
        CHECK(oracle::rel_err(std::exp(f), kw_density_factor(u, 2.0, 3.0)) < 1e-13);
        const LogProb back = invert(KwMap(2.0, 3.0), k);
        CHECK(std::fabs(std::exp(back.log_p) - u) < 1e-13);
    }
}

TEST_CASE("compose: identity chain gives the baseline") {
    const auto d = compose({KwMap(1.0, 1.0), MoTilt(1.0)}, Baseline::exponential(1.0));
    CHECK(d.cdf(std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-15));
    const auto e = compose({}, Baseline::weibull(1.0, 2.0));
    CHECK(e.pdf(1.0) == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("compose [Kw, MO] matches the closed-form cdf") {
    const double al = 0.6, a = 1.8, b = 2.4, lam = 1.3;
    const auto d = compose({KwMap(a, b), MoTilt(al)}, Baseline::exponential(lam));
    for (double t : oracle::grid(0.05, 4.0, 20)) {
        const double G = 1 - std::exp(-lam * t);
        CHECK(oracle::rel_err(d.cdf(t), oracle::mokw_cdf(G, al, a, b)) < 1e-12);
    }
}

TEST_CASE("compose [MO, Kw] matches the hand-composed reversed cdf") {
    const double al = 2.7, a = 0.8, b = 1.9;
    const auto base = Baseline::weibull(0.7, 1.4);
    const auto d = compose({MoTilt(al), KwMap(a, b)}, base);
    for (double t : oracle::grid(0.05, 4.0, 20)) {
        const double G = 1 - std::exp(-0.7 * std::pow(t, 1.4));
        CHECK(oracle::rel_err(d.cdf(t), oracle::kwmo_cdf(G, al, a, b)) < 1e-12);
    }
}

TEST_CASE("compose [Kw, MO] pdf equals the direct density, random draws") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-1.5, 1.5);
    for (int r = 0; r < 5; ++r) {
        const double al = std::exp(U(rng)), a = std::exp(U(rng)), b = std::exp(U(rng)), lam = std::exp(U(rng) / 2);
        const auto d = compose({KwMap(a, b), MoTilt(al)}, Baseline::exponential(lam));
        for (double t : oracle::grid(0.02, 3.0, 20)) {
            const double G = 1 - std::exp(-lam * t), g = lam * std::exp(-lam * t);
            CHECK(oracle::rel_err(d.pdf(t), oracle::mokw_pdf(g, G, al, a, b)) < 1e-12);
        }
    }
}

TEST_CASE("composed quantile and sampling") {
    const auto d = compose({MoTilt(0.3), KwMap(2.0, 0.7)}, Baseline::lomax(2.0, 1.0));
    for (double p : {1e-8, 0.01, 0.5, 0.99, 1 - 1e-9}) CHECK(std::fabs(d.cdf(d.quantile(p)) - p) < 1e-10);
    const auto s1 = d.sample(50, 42), s2 = d.sample(50, 42);
    CHECK(s1 == s2);
    CHECK(d.sample(0, 1).empty());
}
