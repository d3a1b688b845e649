#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "mokw/simd/kernels.hpp"
#include "mokw/special.hpp"

using namespace mokw;
using mokw::simd::GeneratorShape;
using mokw::simd::KernelTable;

namespace {

const KernelTable* vec() { return simd::avx2_kernels(); }

std::vector<double> uniform(std::size_t n, double lo, double hi, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(lo, hi);
    std::vector<double> v(n);
    for (double& x : v) x = U(rng);
    return v;
}

// Max relative error, with an absolute floor for values near zero.
double max_err(const std::vector<double>& a, const std::vector<double>& b, double floor = 1e-300) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == b[i]) continue;
        if (std::isnan(a[i]) || std::isnan(b[i])) return INFINITY;
        m = std::max(m, std::fabs(a[i] - b[i]) / std::max(std::fabs(b[i]), floor));
    }
    return m;
}

}  // namespace

TEST_CASE("active table is reported") {
    const auto& k = simd::active_kernels();
    CHECK_FALSE(k.name.empty());
    CHECK(simd::scalar_kernels().isa == simd::Isa::Scalar);
}

TEST_CASE("vector elementary functions agree with libm") {
    if (vec() == nullptr) return;
    const auto& s = simd::scalar_kernels();
    for (std::size_t n : {1u, 3u, 4u, 7u, 1001u}) {
        auto x = uniform(n, -700, 700, n);
        std::vector<double> y1(n), y2(n);
        s.exp(x.data(), y1.data(), n);
        vec()->exp(x.data(), y2.data(), n);
        CHECK(max_err(y2, y1) < 4e-15);

        auto p = uniform(n, -300, 300, n + 1);
        for (double& v : p) v = std::exp(v);
        s.log(p.data(), y1.data(), n);
        vec()->log(p.data(), y2.data(), n);
        CHECK(max_err(y2, y1, 1e-16) < 4e-15);

        auto e = uniform(n, -2, 2, n + 2);
        s.expm1(e.data(), y1.data(), n);
        vec()->expm1(e.data(), y2.data(), n);
        CHECK(max_err(y2, y1) < 4e-15);

        auto m = uniform(n, -40, -1e-12, n + 3);
        s.log1mexp(m.data(), y1.data(), n);
        vec()->log1mexp(m.data(), y2.data(), n);
        CHECK(max_err(y2, y1) < 1e-14);
    }
}

TEST_CASE("vector special values") {
    if (vec() == nullptr) return;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> x{0.0, inf, -1.0, NAN, 5e-320, 1.0, 2.0, 0.5};
    std::vector<double> y(x.size());
    vec()->log(x.data(), y.data(), x.size());
    CHECK(y[0] == -inf);
    CHECK(y[1] == inf);
    CHECK(std::isnan(y[2]));
    CHECK(std::isnan(y[3]));
    CHECK(y[4] == doctest::Approx(std::log(5e-320)).epsilon(1e-13));
    CHECK(y[5] == 0.0);
    std::vector<double> e{-800.0, 800.0, NAN, 0.0, 709.7, -708.5, 1e-20, -inf};
    vec()->exp(e.data(), y.data(), e.size());
    CHECK(y[0] == 0.0);
    CHECK(y[1] == inf);
    CHECK(std::isnan(y[2]));
    CHECK(y[3] == 1.0);
    CHECK(y[4] == doctest::Approx(std::exp(709.7)).epsilon(1e-14));
    CHECK(y[6] == 1.0);
    CHECK(y[7] == 0.0);
}

TEST_CASE("fused density kernels are equivalent to the reference") {
    if (vec() == nullptr) return;
    const auto& s = simd::scalar_kernels();
    for (GeneratorShape sh : {GeneratorShape{0.3, 1.7, 2.2}, GeneratorShape{4.0, 0.6, 0.9},
                              GeneratorShape{1.0, 1.0, 1.0}, GeneratorShape{19.3, 1.47, 24.8}}) {
        for (std::size_t n : {5u, 346u}) {
            auto t = uniform(n, 0.01, 5.0, n * 7);
            std::vector<double> lg(n), lG(n), ls(n), o1(n), o2(n);
            s.exponential_eval(t.data(), n, 1.3, lg.data(), lG.data(), ls.data());
            s.mokw_log_density(lg.data(), lG.data(), o1.data(), n, sh);
            vec()->mokw_log_density(lg.data(), lG.data(), o2.data(), n, sh);
            CHECK(max_err(o2, o1, 1.0) < 1e-13);
            s.kwmo_log_density(lg.data(), lG.data(), ls.data(), o1.data(), n, sh);
            vec()->kwmo_log_density(lg.data(), lG.data(), ls.data(), o2.data(), n, sh);
            CHECK(max_err(o2, o1, 1.0) < 1e-13);
        }
    }
}

TEST_CASE("baseline kernels are equivalent to the reference") {
    if (vec() == nullptr) return;
    const auto& s = simd::scalar_kernels();
    const std::size_t n = 203;
    auto t = uniform(n, 0.001, 20.0, 3);
    std::vector<double> a1(n), b1(n), c1(n), a2(n), b2(n), c2(n);
    s.exponential_eval(t.data(), n, 0.7, a1.data(), b1.data(), c1.data());
    vec()->exponential_eval(t.data(), n, 0.7, a2.data(), b2.data(), c2.data());
    CHECK(max_err(a2, a1, 1.0) < 1e-14);
    CHECK(max_err(b2, b1, 1e-300) < 1e-13);
    CHECK(max_err(c2, c1, 1.0) < 1e-14);
    s.weibull_eval(t.data(), n, 0.7, 1.6, a1.data(), b1.data(), c1.data());
    vec()->weibull_eval(t.data(), n, 0.7, 1.6, a2.data(), b2.data(), c2.data());
    CHECK(max_err(a2, a1, 1.0) < 1e-13);
    CHECK(max_err(b2, b1) < 1e-13);
    CHECK(max_err(c2, c1) < 1e-13);
    s.frechet_eval(t.data(), n, 2.1, 1.3, a1.data(), b1.data(), c1.data());
    vec()->frechet_eval(t.data(), n, 2.1, 1.3, a2.data(), b2.data(), c2.data());
    CHECK(max_err(a2, a1, 1.0) < 1e-13);
    CHECK(max_err(b2, b1) < 1e-13);
    CHECK(max_err(c2, c1) < 1e-13);
}
