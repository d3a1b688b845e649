#pragma once

// Data-parallel inner loops behind the likelihood and batch evaluation paths.
//
// Every kernel has a scalar reference implementation built on <cmath>, and
// an AVX2/FMA implementation built on intrinsics with its own exp/log
// polynomials. The active table is picked once at runtime from the CPU's
// capabilities; MOKW_SIMD=scalar in the environment forces the reference.

#include <cstddef>
#include <string_view>

namespace mokw::simd {

enum class Isa { Scalar, Avx2 };

/// Shape parameters of the generator part of a composed density.
struct GeneratorShape {
    double alpha;
    double a;
    double b;
};

struct KernelTable {
    Isa isa;
    std::string_view name;

    void (*exp)(const double* x, double* y, std::size_t n);
    void (*log)(const double* x, double* y, std::size_t n);
    void (*expm1)(const double* x, double* y, std::size_t n);
    /// y = log(1 - exp(x)) for x <= 0.
    void (*log1mexp)(const double* x, double* y, std::size_t n);

    /// Per-point log density of MO(Kw(G)) from baseline log g and log G.
    void (*mokw_log_density)(const double* log_g, const double* log_G, double* out, std::size_t n,
                             GeneratorShape shape);

    /// Per-point log density of Kw(MO(G)) from baseline log g, log G, log(1-G).
    void (*kwmo_log_density)(const double* log_g, const double* log_G, const double* log_Gbar,
                             double* out, std::size_t n, GeneratorShape shape);

    /// Exponential(lambda) baseline: log g, log G, log(1-G) at t > 0.
    void (*exponential_eval)(const double* t, std::size_t n, double lambda, double* log_g,
                             double* log_G, double* log_Gbar);

    /// Weibull(lambda, beta) baseline, G = 1 - exp(-lambda t^beta).
    void (*weibull_eval)(const double* t, std::size_t n, double lambda, double beta,
                         double* log_g, double* log_G, double* log_Gbar);

    /// Frechet(lambda, delta) baseline, G = exp(-(delta/t)^lambda).
    void (*frechet_eval)(const double* t, std::size_t n, double lambda, double delta,
                         double* log_g, double* log_G, double* log_Gbar);
};

/// The <cmath> reference implementation; always available.
const KernelTable& scalar_kernels();

/// The AVX2/FMA implementation, or nullptr when it was not compiled in or the
/// running CPU lacks the instructions.
const KernelTable* avx2_kernels();

/// Best table for this machine (respecting MOKW_SIMD).
const KernelTable& active_kernels();

}  // namespace mokw::simd
