#include "mokw/estimation.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <future>
#include <limits>
#include <numeric>
#include <random>

#include "mokw/errors.hpp"
#include "mokw/optimize.hpp"
#include "mokw/simd/kernels.hpp"
#include "mokw/special.hpp"

namespace mokw {

namespace {

constexpr std::size_t kGen = 3;

void check_generator(std::span<const double> theta, std::size_t k) {
    if (theta.size() != k) throw InvalidParameter("parameter vector has the wrong length");
    static const char* names[] = {"alpha", "a", "b"};
    for (std::size_t i = 0; i < kGen; ++i)
        if (!(theta[i] > 0.0) || !std::isfinite(theta[i]))
            throw InvalidParameter(std::string(names[i]) + " must be positive and finite");
}

Baseline probe(const ModelSpec& spec) {
    std::vector<double> ones(Baseline::param_count(spec.baseline, spec.shape), 1.0);
    return {spec.baseline, ones, spec.shape};
}

/// Exact per-point log density from baseline logs; handles infinities.
double point_log_density(FamilyKind fam, double alpha, double a, double b, double lg, double lG, double lS) {
    if (!(lg > -kInf) || std::isnan(lg) || std::isnan(lG) || std::isnan(lS)) return -kInf;
    const double head = std::log(alpha) + std::log(a) + std::log(b) + lg;
    if (fam == FamilyKind::Mokw) {
        const double L1 = log1m_pow(lG, lS, a);
        return head + xlogy(a - 1.0, lG) + xlogy(b - 1.0, L1) - 2.0 * log_tilt_denominator(alpha, b * L1);
    }
    const double lden = logaddexp(std::log(alpha) + lS, lG);
    const double lM = lG - lden;
    const double lMbar = std::log(alpha) + lS - lden;
    const double L1 = log1m_pow(lM, lMbar, a);
    return head - 2.0 * lden + xlogy(a - 1.0, lM) + xlogy(b - 1.0, L1);
}

/// log(-log u) from (log u, log(1-u)).
double log_neg_log(double lu, double lubar) { return lubar < -30.0 ? lubar : std::log(-lu); }

struct Evaluated {
    std::vector<double> lg, lG, lS;
};

Evaluated evaluate_baseline(const Baseline& base, std::span<const double> data) {
    Evaluated e;
    const std::size_t n = data.size();
    e.lg.resize(n);
    e.lG.resize(n);
    e.lS.resize(n);
    base.evaluate_batch(data, e.lg, e.lG, e.lS);
    return e;
}

double sum_sorted(std::vector<double> v) {
    for (double x : v)
        if (!(x > -kInf) || std::isnan(x)) return -kInf;
    std::sort(v.begin(), v.end());
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

/// Baseline parameters whose value bounds the support.
enum class Bound { None, Lower, Upper };

Bound support_bound(const ModelSpec& spec, std::size_t j) {
    switch (spec.baseline) {
        case BaselineKind::ExtendedWeibull:
            return spec.shape == EwShape::Pareto && j == 1 ? Bound::Lower : Bound::None;
        case BaselineKind::ExponentiatedPareto: return j == 2 ? Bound::Lower : Bound::None;
        case BaselineKind::ExtendedPower: return j == 1 ? Bound::Upper : Bound::None;
        default: return Bound::None;
    }
}

double radical_inverse(std::uint64_t i, unsigned base) {
    double f = 1.0, r = 0.0;
    while (i > 0) {
        f /= base;
        r += f * static_cast<double>(i % base);
        i /= base;
    }
    return r;
}

constexpr std::array<unsigned, 10> kPrimes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};

}  // namespace

std::string_view to_string(FamilyKind f) { return f == FamilyKind::Mokw ? "mokw" : "kwmo"; }

FamilyKind parse_family(std::string_view name) {
    if (name == "mokw") return FamilyKind::Mokw;
    if (name == "kwmo") return FamilyKind::Kwmo;
    throw InvalidParameter("unknown family '" + std::string(name) + "' (expected mokw or kwmo)");
}

std::vector<std::string> ModelSpec::param_names() const {
    std::vector<std::string> names = {"alpha", "a", "b"};
    for (auto& s : probe(*this).param_names()) names.push_back(s);
    return names;
}

std::vector<bool> ModelSpec::positivity_mask() const {
    std::vector<bool> m = {true, true, true};
    for (bool v : probe(*this).positivity_mask()) m.push_back(v);
    return m;
}

std::string ModelSpec::name() const {
    std::string n = family == FamilyKind::Mokw ? "MOKw-" : "KwMO-";
    switch (baseline) {
        case BaselineKind::Exponential: return n + "E";
        case BaselineKind::Lomax: return n + "L";
        case BaselineKind::Weibull: return n + "W";
        case BaselineKind::Frechet: return n + "Fr";
        case BaselineKind::Gompertz: return n + "Go";
        case BaselineKind::ExtendedWeibull: return n + "EW(" + std::string(to_string(shape)) + ")";
        case BaselineKind::ModifiedWeibull: return n + "EMW";
        case BaselineKind::PowerLogNormal: return n + "PLN";
        case BaselineKind::ExponentiatedPareto: return n + "EEP";
        case BaselineKind::ExtendedPower: return n + "EP";
    }
    return n;
}

Baseline ModelSpec::baseline_at(std::span<const double> theta) const {
    check_generator(theta, param_count());
    return {baseline, std::vector<double>(theta.begin() + kGen, theta.end()), shape};
}

std::vector<double> ParameterVector::to_unconstrained() const {
    std::vector<double> z(values.size());
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = positive[i] ? std::log(values[i]) : values[i];
    return z;
}

void ParameterVector::from_unconstrained(std::span<const double> z) {
    values.resize(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) values[i] = positive[i] ? std::exp(z[i]) : z[i];
}

ParameterVector make_parameters(const ModelSpec& spec, std::vector<double> values) {
    if (values.size() != spec.param_count()) throw InvalidParameter("parameter vector has the wrong length");
    return {spec.param_names(), std::move(values), spec.positivity_mask()};
}

// ---------------------------------------------------------------------------
// Likelihood

std::vector<double> log_density(const ModelSpec& spec, std::span<const double> theta,
                                std::span<const double> data) {
    const Baseline base = spec.baseline_at(theta);
    const double alpha = theta[0], a = theta[1], b = theta[2];
    const Evaluated e = evaluate_baseline(base, data);
    const std::size_t n = data.size();
    std::vector<double> out(n);
    const auto& k = simd::active_kernels();
    const simd::GeneratorShape shape{alpha, a, b};
    if (spec.family == FamilyKind::Mokw)
        k.mokw_log_density(e.lg.data(), e.lG.data(), out.data(), n, shape);
    else
        k.kwmo_log_density(e.lg.data(), e.lG.data(), e.lS.data(), out.data(), n, shape);
    for (std::size_t i = 0; i < n; ++i) {
        // The kernels see only log G; far upper tails and boundary points go
        // through the exact path that also uses log(1-G).
        if (e.lS[i] < -18.0 || !std::isfinite(out[i]) || !std::isfinite(e.lg[i]))
            out[i] = point_log_density(spec.family, alpha, a, b, e.lg[i], e.lG[i], e.lS[i]);
    }
    return out;
}

double loglik(const ModelSpec& spec, std::span<const double> theta, std::span<const double> data) {
    return sum_sorted(log_density(spec, theta, data));
}

std::vector<double> score(const ModelSpec& spec, std::span<const double> theta, std::span<const double> data) {
    const Baseline base = spec.baseline_at(theta);
    const std::size_t k = spec.param_count(), m = k - kGen;
    const double alpha = theta[0], a = theta[1], b = theta[2], abar = 1.0 - alpha;
    const double la = std::log(alpha);
    std::vector<double> dlg(m), dlG(m), dlS(m);
    std::vector<std::vector<double>> terms(k);
    for (auto& t : terms) t.reserve(data.size());

    // Products u^a/(1-u^a) * d log u are formed in log space; near u = 1 the
    // derivative of log u is traded for that of log(1-u).
    for (double t : data) {
        const BaselinePoint p = base.evaluate(t);
        if (!std::isfinite(p.log_pdf)) return std::vector<double>(k, kNaN);
        base.param_gradient(t, dlg, dlG, dlS);
        const double lG = p.log_cdf, lS = p.log_sf;
        if (spec.family == FamilyKind::Mokw) {
            const double L1 = log1m_pow(lG, lS, a);
            const double S = std::exp(b * L1);
            const double D = std::exp(log_tilt_denominator(alpha, b * L1));
            const double lR = a * lG - L1;
            const double L1a = std::exp(lR + log_neg_log(lG, lS));
            terms[0].push_back(1.0 / alpha - 2.0 * S / D);
            terms[1].push_back(1.0 / a + lG + (b - 1.0) * L1a + 2.0 * abar * b * S * L1a / D);
            terms[2].push_back(1.0 / b + L1 + 2.0 * abar * S * L1 / D);
            const bool upper = lG > -kLn2;
            const double w = upper ? -std::exp((a - 1.0) * lG + lS - L1) : std::exp(lR);
            for (std::size_t j = 0; j < m; ++j) {
                const double L1j = -a * w * (upper ? dlS[j] : dlG[j]);
                terms[kGen + j].push_back(dlg[j] + (a - 1.0) * dlG[j] + (b - 1.0) * L1j +
                                          2.0 * abar * b * S * L1j / D);
            }
        } else {
            const double lden = logaddexp(la + lS, lG);
            const double lM = lG - lden, lMbar = la + lS - lden;
            const double L1M = log1m_pow(lM, lMbar, a);
            const double lRM = a * lM - L1M;
            const double RlM = -std::exp(lRM + log_neg_log(lM, lMbar));
            const double gbar_den = std::exp(lS - lden);
            const double g_den = std::exp(lG - lden);
            terms[0].push_back(1.0 / alpha - (a + 1.0) * gbar_den + a * (b - 1.0) * std::exp(lRM + lS - lden));
            terms[1].push_back(1.0 / a + lM - (b - 1.0) * RlM);
            terms[2].push_back(1.0 / b + L1M);
            // d log M = alpha d log G / den and d log(1-M) = d log(1-G) / den.
            const bool upper = lM > -kLn2;
            const double w = upper ? -std::exp((a - 1.0) * lM + lMbar - L1M - lden) : std::exp(lRM - lden) * alpha;
            for (std::size_t j = 0; j < m; ++j) {
                const double dlM = alpha * dlG[j] * std::exp(-lden);
                const double RdlM = w * (upper ? dlS[j] : dlG[j]);
                terms[kGen + j].push_back(dlg[j] - 2.0 * abar * g_den * dlG[j] + (a - 1.0) * dlM -
                                          a * (b - 1.0) * RdlM);
            }
        }
    }
    std::vector<double> u(k);
    for (std::size_t j = 0; j < k; ++j) {
        std::sort(terms[j].begin(), terms[j].end());
        u[j] = std::accumulate(terms[j].begin(), terms[j].end(), 0.0);
    }
    return u;
}

Matrix mokw_exponential_hessian(std::span<const double> theta, std::span<const double> data) {
    if (theta.size() != 4) throw InvalidParameter("MOKw-E takes (alpha, a, b, lambda)");
    check_generator(theta, 4);
    const double alpha = theta[0], a = theta[1], b = theta[2], lam = theta[3], abar = 1.0 - alpha;
    if (!(lam > 0.0) || !std::isfinite(lam)) throw InvalidParameter("lambda must be positive and finite");
    enum { A = 0, B = 1, L = 2 };  // indices into the (a, b, lambda) block
    Matrix H(4, 4);
    double h[4][4] = {};
    for (double t : data) {
        if (!(t > 0.0)) {
            return Matrix(4, 4, kNaN);
        }
        const double lt = lam * t;
        const double lS0 = -lt;
        const double lG = log1mexp(lS0);
        const double q = t / std::expm1(lt);
        const double tG = t * std::exp(-lG);
        const double L1 = log1m_pow(lG, lS0, a);
        const double lR = a * lG - L1;  // log of G^a / (1 - G^a)
        const double S = std::exp(b * L1);
        const double D = std::exp(log_tilt_denominator(alpha, b * L1));
        const double rlG = -std::exp(lR + log_neg_log(lG, lS0));
        const double rq = std::exp(lR + std::log(t) + lS0 - lG);

        // First and second partials of L1 = log(1 - G^a) in (a, lambda).
        const double L1_a = -rlG;
        const double L1_l = -a * rq;
        const double L1_aa = -rlG * lG - rlG * rlG;
        const double L1_ll = -a * (a * rq * q - rq * tG) - a * a * rq * rq;
        const double L1_al = -rq * (1.0 + a * lG) - a * rlG * rq;
        const double q_l = -q * tG;

        // S = exp(b L1) in (a, b, lambda).
        double Sx[3], Sxy[3][3];
        Sx[A] = S * b * L1_a;
        Sx[B] = S * L1;
        Sx[L] = S * b * L1_l;
        Sxy[A][A] = S * (b * L1_aa + b * b * L1_a * L1_a);
        Sxy[L][L] = S * (b * L1_ll + b * b * L1_l * L1_l);
        Sxy[A][L] = S * (b * L1_al + b * b * L1_a * L1_l);
        Sxy[B][B] = S * L1 * L1;
        Sxy[B][A] = S * L1_a * (1.0 + b * L1);
        Sxy[B][L] = S * L1_l * (1.0 + b * L1);
        Sxy[L][A] = Sxy[A][L];
        Sxy[A][B] = Sxy[B][A];
        Sxy[L][B] = Sxy[B][L];

        // (log D)_xy with D = 1 - abar S.
        auto logD = [&](int x, int y) {
            const double Dxy = -abar * Sxy[x][y];
            return Dxy / D - abar * abar * Sx[x] * Sx[y] / (D * D);
        };

        h[0][0] += -1.0 / (alpha * alpha) + 2.0 * S * S / (D * D);
        for (int x = 0; x < 3; ++x) h[0][1 + x] += -2.0 * Sx[x] / (D * D);
        h[1][1] += -1.0 / (a * a) + (b - 1.0) * L1_aa - 2.0 * logD(A, A);
        h[2][2] += -1.0 / (b * b) - 2.0 * logD(B, B);
        h[3][3] += -1.0 / (lam * lam) + (a - 1.0) * q_l + (b - 1.0) * L1_ll - 2.0 * logD(L, L);
        h[1][2] += L1_a - 2.0 * logD(A, B);
        h[1][3] += q + (b - 1.0) * L1_al - 2.0 * logD(A, L);
        h[2][3] += L1_l - 2.0 * logD(B, L);
    }
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) H(i, j) = H(j, i) = h[i][j];
    return H;
}

Matrix observed_information(const ModelSpec& spec, std::span<const double> theta, std::span<const double> data) {
    const std::size_t k = spec.param_count();
    Matrix info(k, k);
    if (spec.family == FamilyKind::Mokw && spec.baseline == BaselineKind::Exponential) {
        const Matrix H = mokw_exponential_hessian(theta, data);
        for (std::size_t i = 0; i < k * k; ++i) info.data[i] = -H.data[i];
        return info;
    }
    std::vector<double> x(theta.begin(), theta.end());
    for (std::size_t j = 0; j < k; ++j) {
        const double h = 1e-5 * std::max(std::fabs(theta[j]), 1e-3);
        x[j] = theta[j] + h;
        const auto up = score(spec, x, data);
        x[j] = theta[j] - h;
        const auto dn = score(spec, x, data);
        x[j] = theta[j];
        for (std::size_t i = 0; i < k; ++i) info(i, j) = -(up[i] - dn[i]) / (2.0 * h);
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) info(i, j) = info(j, i) = 0.5 * (info(i, j) + info(j, i));
    return info;
}

// ---------------------------------------------------------------------------
// Maximum likelihood

std::uint64_t data_fingerprint(std::span<const double> data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (double v : data) {
        unsigned char bytes[sizeof(double)];
        std::memcpy(bytes, &v, sizeof v);
        for (unsigned char c : bytes) {
            h ^= c;
            h *= 1099511628211ULL;
        }
    }
    return h;
}

void attach_standard_errors(FitResult& fit, std::span<const double> data) {
    const std::size_t k = fit.theta_hat.values.size();
    fit.information = observed_information(fit.spec, fit.theta_hat.values, data);
    fit.vcov = Matrix(k, k, kNaN);
    fit.se.reset();
    fit.ci_low.assign(k, kNaN);
    fit.ci_high.assign(k, kNaN);

    Eigen::MatrixXd I(k, k);
    bool finite = true;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            I(i, j) = fit.information(i, j);
            finite = finite && std::isfinite(I(i, j));
        }
    if (!finite) return;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(I);
    const auto& ev = es.eigenvalues();
    const double big = ev.cwiseAbs().maxCoeff(), small = ev.cwiseAbs().minCoeff();
    fit.vcov_indefinite = ev.minCoeff() <= 0.0;
    fit.condition_number = small > 0.0 ? big / small : kInf;
    fit.ill_conditioned = fit.condition_number > 1e8;
    if (!(small > 1e-14 * big)) return;

    const Eigen::MatrixXd V = es.eigenvectors() * ev.cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
    std::vector<double> se(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) fit.vcov(i, j) = 0.5 * (V(i, j) + V(j, i));
        se[i] = fit.vcov(i, i) >= 0.0 ? std::sqrt(fit.vcov(i, i)) : kNaN;
        fit.ci_low[i] = fit.theta_hat.values[i] - 1.959963984540054 * se[i];
        fit.ci_high[i] = fit.theta_hat.values[i] + 1.959963984540054 * se[i];
    }
    fit.se = std::move(se);
}

namespace {

struct StartOutcome {
    std::vector<double> z;
    double loglik = -kInf;
    int evaluations = 0;
    int iterations = 0;
    bool converged = false;
    bool boundary = false;
};

StartOutcome run_start(const ModelSpec& spec, const std::vector<bool>& pos, std::span<const double> data,
                       double z_limit, std::vector<double> z0) {
    auto to_theta = [&](std::span<const double> z) {
        std::vector<double> th(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) th[i] = pos[i] ? std::exp(z[i]) : z[i];
        return th;
    };
    const Objective f = [&](std::span<const double> z) {
        for (double v : z)
            if (!(std::fabs(v) <= z_limit)) return kInf;
        try {
            return -loglik(spec, to_theta(z), data);
        } catch (const InvalidParameter&) {
            return kInf;
        }
    };
    const Gradient g = [&](std::span<const double> z, std::span<double> out) {
        std::vector<double> th = to_theta(z);
        std::vector<double> u;
        try {
            u = score(spec, th, data);
        } catch (const InvalidParameter&) {
            u.assign(z.size(), kNaN);
        }
        for (std::size_t i = 0; i < z.size(); ++i) out[i] = -(pos[i] ? th[i] * u[i] : u[i]);
    };
    const OptimResult nm = nelder_mead(f, std::move(z0));
    const OptimResult bf = bfgs(f, g, nm.x);
    StartOutcome o;
    o.z = bf.x;
    o.loglik = -bf.f;
    o.evaluations = nm.evaluations + bf.evaluations;
    o.iterations = nm.iterations + bf.iterations;
    o.converged = std::isfinite(bf.f) && (nm.converged || bf.converged);
    for (double v : o.z) o.boundary = o.boundary || std::fabs(v) > z_limit - 1e-3;
    return o;
}

}  // namespace

FitResult fit_mle(const ModelSpec& spec, std::span<const double> data, const FitOptions& opt) {
    if (data.empty()) throw DomainError("fit_mle: empty data");
    for (double v : data)
        if (!std::isfinite(v)) throw DomainError("fit_mle: data contain non-finite values");
    const std::size_t k = spec.param_count();
    if (k > kPrimes.size()) throw InvalidParameter("fit_mle: too many parameters");
    const std::vector<bool> pos = spec.positivity_mask();
    const auto [mn, mx] = std::minmax_element(data.begin(), data.end());

    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> shift(k);
    for (auto& s : shift) s = unit(rng);

    auto from_cube = [&](const std::vector<double>& h) {
        std::vector<double> z(k);
        for (std::size_t i = 0; i < k; ++i) {
            const Bound bd = i >= kGen ? support_bound(spec, i - kGen) : Bound::None;
            if (bd == Bound::Lower)
                z[i] = std::log(*mn * (0.5 + 0.5 * h[i]));
            else if (bd == Bound::Upper)
                z[i] = std::log((0.5 + 0.5 * h[i]) / *mx);
            else
                z[i] = opt.box_lo + h[i] * (opt.box_hi - opt.box_lo);
        }
        return z;
    };
    auto feasible = [&](const std::vector<double>& z) {
        std::vector<double> th(k);
        for (std::size_t i = 0; i < k; ++i) th[i] = pos[i] ? std::exp(z[i]) : z[i];
        try {
            return std::isfinite(loglik(spec, th, data));
        } catch (const InvalidParameter&) {
            return false;
        }
    };

    std::vector<std::vector<double>> starts;
    for (const auto& init : opt.initial) {
        if (init.size() != k) throw InvalidParameter("fit_mle: initial point has the wrong length");
        starts.push_back(make_parameters(spec, init).to_unconstrained());
    }
    for (std::size_t s = 0; s < opt.starts; ++s) {
        std::vector<double> h(k);
        for (std::size_t i = 0; i < k; ++i) h[i] = std::fmod(radical_inverse(s + 1, kPrimes[i]) + shift[i], 1.0);
        auto z = from_cube(h);
        for (int tries = 0; tries < 100 && !feasible(z); ++tries) {
            for (auto& v : h) v = unit(rng);
            z = from_cube(h);
        }
        starts.push_back(std::move(z));
    }
    std::vector<std::size_t> usable;
    for (std::size_t i = 0; i < starts.size(); ++i)
        if (feasible(starts[i])) usable.push_back(i);
    if (usable.empty()) throw DomainError("fit_mle: no parameter value gives the data positive density");

    std::vector<StartOutcome> outcomes(starts.size());
    if (opt.parallel) {
        std::vector<std::future<StartOutcome>> futs;
        for (std::size_t i : usable)
            futs.push_back(std::async(std::launch::async, run_start, std::cref(spec), std::cref(pos), data,
                                    opt.z_limit, starts[i]));
        for (std::size_t j = 0; j < usable.size(); ++j) outcomes[usable[j]] = futs[j].get();
    } else {
        for (std::size_t i : usable) outcomes[i] = run_start(spec, pos, data, opt.z_limit, starts[i]);
    }

    FitResult fit;
    fit.spec = spec;
    fit.n = data.size();
    fit.data_hash = data_fingerprint(data);
    // Interior fits outrank boundary fits; ties keep the lower start index.
    auto rank = [&](std::size_t i) {
        return std::pair{opt.prefer_interior && !outcomes[i].boundary, outcomes[i].loglik};
    };
    std::size_t best = usable.front();
    bool any_converged = false;
    for (std::size_t i : usable) {
        const auto& o = outcomes[i];
        fit.trace.push_back({i, o.loglik, o.evaluations, o.converged, o.boundary});
        any_converged = any_converged || o.converged;
        if (rank(i) > rank(best)) best = i;
    }
    if (!any_converged) {
        std::string msg = "fit_mle: no start converged;";
        for (const auto& t : fit.trace) msg += " [" + std::to_string(t.index) + ": " + std::to_string(t.loglik) + "]";
        throw ConvergenceError(msg);
    }
    ParameterVector pv = make_parameters(spec, std::vector<double>(k, 1.0));
    pv.from_unconstrained(outcomes[best].z);
    fit.theta_hat = std::move(pv);
    fit.loglik = outcomes[best].loglik;
    fit.converged = outcomes[best].converged;
    fit.boundary = outcomes[best].boundary;
    for (const auto& t : fit.trace) fit.iterations += t.evaluations;
    fit.score_at_opt = score(spec, fit.theta_hat.values, data);
    attach_standard_errors(fit, data);
    return fit;
}

// ---------------------------------------------------------------------------
// Method of moments

double moment_rhs(double alpha, unsigned v) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidParameter("alpha must be positive and finite");
    if (v == 0) throw DomainError("moment order must be at least 1");
    const double abar = 1.0 - alpha;
    if (abar == 0.0) return 1.0;
    const double la = std::log1p(-abar);
    if (v == 1) return -alpha * la / abar;
    const double w = static_cast<double>(v - 1);
    return -alpha * std::expm1(w * la) / (abar * w);
}

double moment_statistic(const ModelSpec& spec, std::span<const double> theta, std::span<const double> data,
                        unsigned v) {
    const Baseline base = spec.baseline_at(theta);
    const double abar = 1.0 - theta[0], a = theta[1], b = theta[2];
    const Evaluated e = evaluate_baseline(base, data);
    std::vector<double> terms(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double S = std::exp(b * log1m_pow(e.lG[i], e.lS[i], a));
        terms[i] = std::pow(1.0 - abar * S, static_cast<double>(v));
    }
    std::sort(terms.begin(), terms.end());
    return std::accumulate(terms.begin(), terms.end(), 0.0) / static_cast<double>(data.size());
}

namespace {

/// (RHS(v) - 1) / (1 - alpha), continuous through alpha = 1.
double rhs_excess(double alpha, unsigned v) {
    const double e = 1.0 - alpha;
    if (v == 1) {
        if (std::fabs(e) >= 0.1) return (moment_rhs(alpha, 1) - 1.0) / e;
        double s = 0.0, p = 1.0;
        for (int k = 2; k < 40; ++k, p *= e) s -= p / (k * (k - 1.0));
        return s;
    }
    double s = 0.0, geo = 0.0, pw = 1.0;
    for (unsigned m = 1; m < v; ++m, pw *= alpha) {
        geo += pw;
        s += geo;
    }
    return -s / (v - 1.0);
}

/// (mean U^v - 1) / (1 - alpha) = -mean S (1 + U + ... + U^{v-1}).
double statistic_excess(const ModelSpec& spec, std::span<const double> theta, std::span<const double> data,
                        unsigned v) {
    const Baseline base = spec.baseline_at(theta);
    const double abar = 1.0 - theta[0], a = theta[1], b = theta[2];
    const Evaluated e = evaluate_baseline(base, data);
    std::vector<double> terms(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double S = std::exp(b * log1m_pow(e.lG[i], e.lS[i], a));
        const double U = 1.0 - abar * S;
        double geo = 0.0, pw = 1.0;
        for (unsigned m = 0; m < v; ++m, pw *= U) geo += pw;
        terms[i] = -S * geo;
    }
    std::sort(terms.begin(), terms.end());
    return std::accumulate(terms.begin(), terms.end(), 0.0) / static_cast<double>(data.size());
}

}  // namespace

MomentFit fit_moments(const ModelSpec& spec, std::span<const double> data, std::vector<double> theta0,
                      const std::vector<bool>& free, const std::vector<unsigned>& orders) {
    if (data.empty()) throw DomainError("fit_moments: empty data");
    const std::size_t k = spec.param_count();
    if (theta0.size() != k || free.size() != k) throw InvalidParameter("fit_moments: wrong vector length");
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < k; ++i)
        if (free[i]) idx.push_back(i);
    const std::size_t p = idx.size(), m = orders.size();
    if (p == 0) throw DomainError("fit_moments: no free parameters");
    if (m < p) throw DomainError("fit_moments: fewer equations than unknowns");

    ParameterVector pv = make_parameters(spec, std::move(theta0));
    std::vector<double> z = pv.to_unconstrained();
    // Every equation holds trivially at alpha = 1 (U = 1); dividing by
    // 1 - alpha removes that root.
    auto residuals = [&](const std::vector<double>& zz) {
        ParameterVector q = pv;
        q.from_unconstrained(zz);
        Eigen::VectorXd r(m);
        for (std::size_t j = 0; j < m; ++j)
            r[j] = statistic_excess(spec, q.values, data, orders[j]) - rhs_excess(q.values[0], orders[j]);
        return r;
    };

    Eigen::VectorXd r = residuals(z);
    double mu = 1e-3;
    int it = 0;
    bool done = false;
    for (; it < 200 && !done; ++it) {
        Eigen::MatrixXd J(m, p);
        for (std::size_t c = 0; c < p; ++c) {
            const double h = 1e-6 * std::max(1.0, std::fabs(z[idx[c]]));
            auto zp = z, zm = z;
            zp[idx[c]] += h;
            zm[idx[c]] -= h;
            J.col(static_cast<Eigen::Index>(c)) = (residuals(zp) - residuals(zm)) / (2.0 * h);
        }
        const Eigen::VectorXd grad = J.transpose() * r;
        if (r.norm() < 1e-13 || grad.norm() < 1e-14) break;
        bool improved = false;
        for (int tries = 0; tries < 30; ++tries) {
            Eigen::MatrixXd A = J.transpose() * J;
            A.diagonal().array() += mu * (1.0 + A.diagonal().array());
            // Minimum-norm increment when the normal equations are rank deficient.
            const Eigen::VectorXd step = A.completeOrthogonalDecomposition().solve(-grad);
            auto zn = z;
            for (std::size_t c = 0; c < p; ++c) zn[idx[c]] += step[static_cast<Eigen::Index>(c)];
            Eigen::VectorXd rn;
            try {
                rn = residuals(zn);
            } catch (const InvalidParameter&) {
                mu *= 4.0;
                continue;
            }
            if (rn.allFinite() && rn.squaredNorm() < r.squaredNorm()) {
                const double change = step.lpNorm<Eigen::Infinity>();
                z = std::move(zn);
                r = rn;
                mu = std::max(mu / 3.0, 1e-12);
                improved = true;
                done = change < 1e-12;
                break;
            }
            mu *= 4.0;
        }
        if (!improved) break;
    }

    MomentFit out;
    pv.from_unconstrained(z);
    out.theta = pv.values;
    for (unsigned v : orders)
        out.residuals.push_back(moment_statistic(spec, out.theta, data, v) - moment_rhs(out.theta[0], v));
    out.iterations = it;
    const double tol = m == p ? 1e-8 : 1e-2;
    if (!(r.lpNorm<Eigen::Infinity>() <= tol)) {
        std::string msg = "fit_moments: no solution; residuals";
        for (double v : out.residuals) msg += " " + std::to_string(v);
        msg += " (scaled: " + std::to_string(r.lpNorm<Eigen::Infinity>()) + ")";
        throw ConvergenceError(msg);
    }
    return out;
}

}  // namespace mokw
