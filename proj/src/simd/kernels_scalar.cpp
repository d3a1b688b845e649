#include <cmath>

#include "mokw/simd/kernels.hpp"
#include "mokw/special.hpp"

namespace mokw::simd {

namespace {

void exp_ref(const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = std::exp(x[i]);
}

void log_ref(const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = std::log(x[i]);
}

void expm1_ref(const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = std::expm1(x[i]);
}

void log1mexp_ref(const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = log1mexp(x[i]);
}

void mokw_log_density_ref(const double* log_g, const double* log_G, double* out, std::size_t n,
                          GeneratorShape s) {
    const double abar = 1.0 - s.alpha;
    const double head = std::log(s.alpha) + std::log(s.a) + std::log(s.b);
    for (std::size_t i = 0; i < n; ++i) {
        const double lG = log_G[i];
        const double L1 = log1mexp(s.a * lG);  // log(1 - G^a)
        const double lS = s.b * L1;            // log Kw survival
        const double D = abar >= 0.0 ? s.alpha - abar * std::expm1(lS) : 1.0 - abar * std::exp(lS);
        double v = head + log_g[i] - 2.0 * std::log(D);
        if (s.a != 1.0) v += (s.a - 1.0) * lG;
        if (s.b != 1.0) v += (s.b - 1.0) * L1;
        out[i] = v;
    }
}

void kwmo_log_density_ref(const double* log_g, const double* log_G, const double* log_Gbar,
                          double* out, std::size_t n, GeneratorShape s) {
    const double abar = 1.0 - s.alpha;
    const double head = std::log(s.alpha) + std::log(s.a) + std::log(s.b);
    for (std::size_t i = 0; i < n; ++i) {
        const double Q =
            abar >= 0.0 ? s.alpha + abar * std::exp(log_G[i]) : 1.0 - abar * std::exp(log_Gbar[i]);
        const double lQ = std::log(Q);
        const double lM = log_G[i] - lQ;
        const double L1 = log1mexp(s.a * lM);
        double v = head + log_g[i] - 2.0 * lQ;
        if (s.a != 1.0) v += (s.a - 1.0) * lM;
        if (s.b != 1.0) v += (s.b - 1.0) * L1;
        out[i] = v;
    }
}

void exponential_eval_ref(const double* t, std::size_t n, double lambda, double* log_g,
                          double* log_G, double* log_Gbar) {
    const double ll = std::log(lambda);
    for (std::size_t i = 0; i < n; ++i) {
        const double h = lambda * t[i];
        log_g[i] = ll - h;
        log_Gbar[i] = -h;
        log_G[i] = log1mexp(-h);
    }
}

void weibull_eval_ref(const double* t, std::size_t n, double lambda, double beta, double* log_g,
                      double* log_G, double* log_Gbar) {
    const double head = std::log(lambda) + std::log(beta);
    for (std::size_t i = 0; i < n; ++i) {
        const double lt = std::log(t[i]);
        const double h = lambda * std::exp(beta * lt);
        log_g[i] = head + (beta - 1.0) * lt - h;
        log_Gbar[i] = -h;
        log_G[i] = log1mexp(-h);
    }
}

void frechet_eval_ref(const double* t, std::size_t n, double lambda, double delta, double* log_g,
                      double* log_G, double* log_Gbar) {
    const double ld = std::log(delta);
    const double head = std::log(lambda) + lambda * ld;
    for (std::size_t i = 0; i < n; ++i) {
        const double lt = std::log(t[i]);
        const double z = std::exp(lambda * (ld - lt));
        log_g[i] = head - (lambda + 1.0) * lt - z;
        log_G[i] = -z;
        log_Gbar[i] = log1mexp(-z);
    }
}

}  // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{
        Isa::Scalar,          "scalar",           exp_ref,
        log_ref,              expm1_ref,          log1mexp_ref,
        mokw_log_density_ref, kwmo_log_density_ref, exponential_eval_ref,
        weibull_eval_ref,     frechet_eval_ref,
    };
    return table;
}

}  // namespace mokw::simd
