// AVX2 + FMA kernels. This translation unit is compiled with -mavx2 -mfma and
// must only be entered after a runtime CPU check (see dispatch.cpp).

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "mokw/simd/kernels.hpp"

namespace mokw::simd {

namespace {

using V = __m256d;
using I = __m256i;
constexpr std::size_t kLanes = 4;

inline V splat(double x) { return _mm256_set1_pd(x); }

// 2^52 + 2^51: adding it to a small integral double leaves the integer in the
// low mantissa bits.
constexpr double kMagic = 6755399441055744.0;

inline I to_int64(V integral) {
    const V m = splat(kMagic);
    return _mm256_sub_epi64(_mm256_castpd_si256(_mm256_add_pd(integral, m)),
                            _mm256_castpd_si256(m));
}

inline V to_double(I v) {
    const V m = splat(kMagic);
    return _mm256_sub_pd(_mm256_castsi256_pd(_mm256_add_epi64(v, _mm256_castpd_si256(m))), m);
}

constexpr double kLn2Hi = 6.93145751953125e-1;
constexpr double kLn2Lo = 1.42860682030941723212e-6;
constexpr double kLog2e = 1.44269504088896340735992468100189214;

// exp on [-0.35, 0.35] by degree-13 Taylor polynomial.
inline V exp_reduced(V r) {
    V p = splat(1.0 / 6227020800.0);
    p = _mm256_fmadd_pd(p, r, splat(1.0 / 479001600.0));
    p = _mm256_fmadd_pd(p, r, splat(1.0 / 39916800.0));
    p = _mm256_fmadd_pd(p, r, splat(1.0 / 3628800.0));
    p = _mm256_fmadd_pd(p, r, splat(1.0 / 362880.0));
    p = _mm256_fmadd_pd(p, r, splat(1.0 / 40320.0));
    p = _mm256_fmadd_pd(p, r, splat(1.0 / 5040.0));
    p = _mm256_fmadd_pd(p, r, splat(1.0 / 720.0));
    p = _mm256_fmadd_pd(p, r, splat(1.0 / 120.0));
    p = _mm256_fmadd_pd(p, r, splat(1.0 / 24.0));
    p = _mm256_fmadd_pd(p, r, splat(1.0 / 6.0));
    p = _mm256_fmadd_pd(p, r, splat(0.5));
    p = _mm256_fmadd_pd(p, r, splat(1.0));
    return _mm256_fmadd_pd(p, r, splat(1.0));
}

V vexp(V x) {
    constexpr double kHi = 709.782712893383973;
    constexpr double kLo = -707.0;
    const V xc = _mm256_min_pd(_mm256_max_pd(x, splat(kLo)), splat(kHi));
    const V n = _mm256_round_pd(_mm256_mul_pd(xc, splat(kLog2e)),
                                _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    V r = _mm256_fnmadd_pd(n, splat(kLn2Hi), xc);
    r = _mm256_fnmadd_pd(n, splat(kLn2Lo), r);
    const V p = exp_reduced(r);
    // 2^(n-1) * 2 keeps the exponent field valid up to n = 1024.
    const I ni = _mm256_add_epi64(to_int64(n), _mm256_set1_epi64x(1023 - 1));
    const V scale = _mm256_castsi256_pd(_mm256_slli_epi64(ni, 52));
    V y = _mm256_mul_pd(_mm256_mul_pd(p, scale), splat(2.0));
    // Overflow, underflow and NaN lanes.
    y = _mm256_blendv_pd(y, splat(HUGE_VAL), _mm256_cmp_pd(x, splat(kHi), _CMP_GT_OQ));
    y = _mm256_blendv_pd(y, _mm256_setzero_pd(), _mm256_cmp_pd(x, splat(kLo), _CMP_LT_OQ));
    y = _mm256_blendv_pd(y, x, _mm256_cmp_pd(x, x, _CMP_UNORD_Q));
    return y;
}

V vexpm1(V x) {
    // Taylor series to degree 16 for |x| < 0.5; exp(x) - 1 elsewhere.
    V p = splat(1.0 / 20922789888000.0);
    p = _mm256_fmadd_pd(p, x, splat(1.0 / 1307674368000.0));
    p = _mm256_fmadd_pd(p, x, splat(1.0 / 87178291200.0));
    p = _mm256_fmadd_pd(p, x, splat(1.0 / 6227020800.0));
    p = _mm256_fmadd_pd(p, x, splat(1.0 / 479001600.0));
    p = _mm256_fmadd_pd(p, x, splat(1.0 / 39916800.0));
    p = _mm256_fmadd_pd(p, x, splat(1.0 / 3628800.0));
    p = _mm256_fmadd_pd(p, x, splat(1.0 / 362880.0));
    p = _mm256_fmadd_pd(p, x, splat(1.0 / 40320.0));
    p = _mm256_fmadd_pd(p, x, splat(1.0 / 5040.0));
    p = _mm256_fmadd_pd(p, x, splat(1.0 / 720.0));
    p = _mm256_fmadd_pd(p, x, splat(1.0 / 120.0));
    p = _mm256_fmadd_pd(p, x, splat(1.0 / 24.0));
    p = _mm256_fmadd_pd(p, x, splat(1.0 / 6.0));
    p = _mm256_fmadd_pd(p, x, splat(0.5));
    const V small = _mm256_fmadd_pd(_mm256_mul_pd(p, x), x, x);
    const V large = _mm256_sub_pd(vexp(x), splat(1.0));
    const V abs_x = _mm256_andnot_pd(splat(-0.0), x);
    return _mm256_blendv_pd(large, small, _mm256_cmp_pd(abs_x, splat(0.5), _CMP_LT_OQ));
}

V vlog(V x) {
    constexpr double kSqrt2 = 1.41421356237309504880;
    constexpr double kMinNormal = 2.2250738585072014e-308;
    // Scale subnormals into the normal range.
    const V is_sub = _mm256_cmp_pd(x, splat(kMinNormal), _CMP_LT_OQ);
    const V xs = _mm256_blendv_pd(x, _mm256_mul_pd(x, splat(4503599627370496.0)), is_sub);
    const V ebias = _mm256_blendv_pd(_mm256_setzero_pd(), splat(52.0), is_sub);

    const I bits = _mm256_castpd_si256(xs);
    const I exp_bits = _mm256_srli_epi64(bits, 52);
    V e = _mm256_sub_pd(to_double(exp_bits), splat(1023.0));
    const I mant_bits = _mm256_or_si256(_mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL)),
                                        _mm256_set1_epi64x(0x3FF0000000000000LL));
    V m = _mm256_castsi256_pd(mant_bits);  // [1, 2)
    const V big = _mm256_cmp_pd(m, splat(kSqrt2), _CMP_GT_OQ);
    m = _mm256_blendv_pd(m, _mm256_mul_pd(m, splat(0.5)), big);
    e = _mm256_add_pd(e, _mm256_and_pd(big, splat(1.0)));
    e = _mm256_sub_pd(e, ebias);

    // log m = 2 atanh(s), s = (m-1)/(m+1), |s| <= 0.1716.
    const V f = _mm256_sub_pd(m, splat(1.0));
    const V s = _mm256_div_pd(f, _mm256_add_pd(f, splat(2.0)));
    const V z = _mm256_mul_pd(s, s);
    V p = splat(2.0 / 23.0);
    p = _mm256_fmadd_pd(p, z, splat(2.0 / 21.0));
    p = _mm256_fmadd_pd(p, z, splat(2.0 / 19.0));
    p = _mm256_fmadd_pd(p, z, splat(2.0 / 17.0));
    p = _mm256_fmadd_pd(p, z, splat(2.0 / 15.0));
    p = _mm256_fmadd_pd(p, z, splat(2.0 / 13.0));
    p = _mm256_fmadd_pd(p, z, splat(2.0 / 11.0));
    p = _mm256_fmadd_pd(p, z, splat(2.0 / 9.0));
    p = _mm256_fmadd_pd(p, z, splat(2.0 / 7.0));
    p = _mm256_fmadd_pd(p, z, splat(2.0 / 5.0));
    p = _mm256_fmadd_pd(p, z, splat(2.0 / 3.0));
    // 2s = f - s f, so log m = f + s (z p - f).
    const V lm = _mm256_add_pd(f, _mm256_mul_pd(s, _mm256_sub_pd(_mm256_mul_pd(z, p), f)));
    V y = _mm256_fmadd_pd(e, splat(kLn2Hi), _mm256_fmadd_pd(e, splat(kLn2Lo), lm));

    // Special inputs.
    y = _mm256_blendv_pd(y, splat(-HUGE_VAL), _mm256_cmp_pd(x, _mm256_setzero_pd(), _CMP_EQ_OQ));
    y = _mm256_blendv_pd(y, splat(HUGE_VAL), _mm256_cmp_pd(x, splat(HUGE_VAL), _CMP_EQ_OQ));
    y = _mm256_blendv_pd(y, splat(NAN), _mm256_cmp_pd(x, _mm256_setzero_pd(), _CMP_LT_OQ));
    y = _mm256_blendv_pd(y, x, _mm256_cmp_pd(x, x, _CMP_UNORD_Q));
    return y;
}

// log1p(y) for y in (-1, 1] via log(1+y) * y / ((1+y) - 1).
V vlog1p(V y) {
    const V u = _mm256_add_pd(y, splat(1.0));
    const V du = _mm256_sub_pd(u, splat(1.0));
    const V lu = vlog(u);
    const V corrected = _mm256_mul_pd(lu, _mm256_div_pd(y, du));
    return _mm256_blendv_pd(corrected, y, _mm256_cmp_pd(du, _mm256_setzero_pd(), _CMP_EQ_OQ));
}

V vlog1mexp(V x) {
    const V near0 = _mm256_cmp_pd(x, splat(-0.693147180559945309417), _CMP_GT_OQ);
    const V a = vlog(_mm256_sub_pd(_mm256_setzero_pd(), vexpm1(x)));
    const V b = vlog1p(_mm256_sub_pd(_mm256_setzero_pd(), vexp(x)));
    V y = _mm256_blendv_pd(b, a, near0);
    y = _mm256_blendv_pd(y, splat(NAN), _mm256_cmp_pd(x, _mm256_setzero_pd(), _CMP_GT_OQ));
    return y;
}

// Run a lane-wise body over n elements; the tail is padded with `fill`.
template <std::size_t In, std::size_t Out, typename Body>
void for_lanes(const double* const (&in)[In], double* const (&out)[Out], std::size_t n, double fill,
               Body body) {
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        V xs[In];
        V ys[Out];
        for (std::size_t k = 0; k < In; ++k) xs[k] = _mm256_loadu_pd(in[k] + i);
        body(xs, ys);
        for (std::size_t k = 0; k < Out; ++k) _mm256_storeu_pd(out[k] + i, ys[k]);
    }
    if (i < n) {
        const std::size_t rem = n - i;
        alignas(32) double buf_in[In][kLanes];
        alignas(32) double buf_out[Out][kLanes];
        V xs[In];
        V ys[Out];
        for (std::size_t k = 0; k < In; ++k) {
            std::fill(buf_in[k], buf_in[k] + kLanes, fill);
            std::copy(in[k] + i, in[k] + n, buf_in[k]);
            xs[k] = _mm256_load_pd(buf_in[k]);
        }
        body(xs, ys);
        for (std::size_t k = 0; k < Out; ++k) {
            _mm256_store_pd(buf_out[k], ys[k]);
            std::copy(buf_out[k], buf_out[k] + rem, out[k] + i);
        }
    }
}

void exp_avx2(const double* x, double* y, std::size_t n) {
    const double* in[1] = {x};
    double* const out[1] = {y};
    for_lanes(in, out, n, 0.0, [](const V* xs, V* ys) { ys[0] = vexp(xs[0]); });
}

void log_avx2(const double* x, double* y, std::size_t n) {
    const double* in[1] = {x};
    double* const out[1] = {y};
    for_lanes(in, out, n, 1.0, [](const V* xs, V* ys) { ys[0] = vlog(xs[0]); });
}

void expm1_avx2(const double* x, double* y, std::size_t n) {
    const double* in[1] = {x};
    double* const out[1] = {y};
    for_lanes(in, out, n, 0.0, [](const V* xs, V* ys) { ys[0] = vexpm1(xs[0]); });
}

void log1mexp_avx2(const double* x, double* y, std::size_t n) {
    const double* in[1] = {x};
    double* const out[1] = {y};
    for_lanes(in, out, n, -1.0, [](const V* xs, V* ys) { ys[0] = vlog1mexp(xs[0]); });
}

void mokw_log_density_avx2(const double* log_g, const double* log_G, double* out_p, std::size_t n,
                           GeneratorShape s) {
    const double abar = 1.0 - s.alpha;
    const V head = splat(std::log(s.alpha) + std::log(s.a) + std::log(s.b));
    const V va = splat(s.a), vb = splat(s.b), valpha = splat(s.alpha), vabar = splat(abar);
    const V am1 = splat(s.a - 1.0), bm1 = splat(s.b - 1.0);
    const bool use_a = s.a != 1.0, use_b = s.b != 1.0, tilt_up = abar >= 0.0;
    const double* in[2] = {log_g, log_G};
    double* const out[1] = {out_p};
    for_lanes(in, out, n, -1.0, [&](const V* xs, V* ys) {
        const V lG = xs[1];
        const V L1 = vlog1mexp(_mm256_mul_pd(va, lG));
        const V lS = _mm256_mul_pd(vb, L1);
        const V D = tilt_up ? _mm256_fnmadd_pd(vabar, vexpm1(lS), valpha)
                            : _mm256_fnmadd_pd(vabar, vexp(lS), splat(1.0));
        V v = _mm256_add_pd(head, xs[0]);
        v = _mm256_fnmadd_pd(splat(2.0), vlog(D), v);
        if (use_a) v = _mm256_fmadd_pd(am1, lG, v);
        if (use_b) v = _mm256_fmadd_pd(bm1, L1, v);
        ys[0] = v;
    });
}

void kwmo_log_density_avx2(const double* log_g, const double* log_G, const double* log_Gbar,
                           double* out_p, std::size_t n, GeneratorShape s) {
    const double abar = 1.0 - s.alpha;
    const V head = splat(std::log(s.alpha) + std::log(s.a) + std::log(s.b));
    const V va = splat(s.a), valpha = splat(s.alpha), vabar = splat(abar);
    const V am1 = splat(s.a - 1.0), bm1 = splat(s.b - 1.0);
    const bool use_a = s.a != 1.0, use_b = s.b != 1.0, tilt_up = abar >= 0.0;
    const double* in[3] = {log_g, log_G, log_Gbar};
    double* const out[1] = {out_p};
    for_lanes(in, out, n, -1.0, [&](const V* xs, V* ys) {
        const V Q = tilt_up ? _mm256_fmadd_pd(vabar, vexp(xs[1]), valpha)
                            : _mm256_fnmadd_pd(vabar, vexp(xs[2]), splat(1.0));
        const V lQ = vlog(Q);
        const V lM = _mm256_sub_pd(xs[1], lQ);
        const V L1 = vlog1mexp(_mm256_mul_pd(va, lM));
        V v = _mm256_add_pd(head, xs[0]);
        v = _mm256_fnmadd_pd(splat(2.0), lQ, v);
        if (use_a) v = _mm256_fmadd_pd(am1, lM, v);
        if (use_b) v = _mm256_fmadd_pd(bm1, L1, v);
        ys[0] = v;
    });
}

void exponential_eval_avx2(const double* t, std::size_t n, double lambda, double* log_g,
                           double* log_G, double* log_Gbar) {
    const V vl = splat(lambda), ll = splat(std::log(lambda));
    const double* in[1] = {t};
    double* const out[3] = {log_g, log_G, log_Gbar};
    for_lanes(in, out, n, 1.0, [&](const V* xs, V* ys) {
        const V mh = _mm256_sub_pd(_mm256_setzero_pd(), _mm256_mul_pd(vl, xs[0]));
        ys[0] = _mm256_add_pd(ll, mh);
        ys[1] = vlog1mexp(mh);
        ys[2] = mh;
    });
}

void weibull_eval_avx2(const double* t, std::size_t n, double lambda, double beta, double* log_g,
                       double* log_G, double* log_Gbar) {
    const V vl = splat(lambda), vb = splat(beta), bm1 = splat(beta - 1.0);
    const V head = splat(std::log(lambda) + std::log(beta));
    const double* in[1] = {t};
    double* const out[3] = {log_g, log_G, log_Gbar};
    for_lanes(in, out, n, 1.0, [&](const V* xs, V* ys) {
        const V lt = vlog(xs[0]);
        const V h = _mm256_mul_pd(vl, vexp(_mm256_mul_pd(vb, lt)));
        ys[0] = _mm256_sub_pd(_mm256_fmadd_pd(bm1, lt, head), h);
        const V mh = _mm256_sub_pd(_mm256_setzero_pd(), h);
        ys[1] = vlog1mexp(mh);
        ys[2] = mh;
    });
}

void frechet_eval_avx2(const double* t, std::size_t n, double lambda, double delta, double* log_g,
                       double* log_G, double* log_Gbar) {
    const double ld = std::log(delta);
    const V vl = splat(lambda), vld = splat(ld), lp1 = splat(lambda + 1.0);
    const V head = splat(std::log(lambda) + lambda * ld);
    const double* in[1] = {t};
    double* const out[3] = {log_g, log_G, log_Gbar};
    for_lanes(in, out, n, 1.0, [&](const V* xs, V* ys) {
        const V lt = vlog(xs[0]);
        const V z = vexp(_mm256_mul_pd(vl, _mm256_sub_pd(vld, lt)));
        ys[0] = _mm256_sub_pd(_mm256_fnmadd_pd(lp1, lt, head), z);
        const V mz = _mm256_sub_pd(_mm256_setzero_pd(), z);
        ys[1] = mz;
        ys[2] = vlog1mexp(mz);
    });
}

}  // namespace

const KernelTable& avx2_table() {
    static const KernelTable table{
        Isa::Avx2,             "avx2",
        exp_avx2,              log_avx2,
        expm1_avx2,            log1mexp_avx2,
        mokw_log_density_avx2, kwmo_log_density_avx2,
        exponential_eval_avx2, weibull_eval_avx2,
        frechet_eval_avx2,
    };
    return table;
}

}  // namespace mokw::simd
