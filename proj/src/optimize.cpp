#include "mokw/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mokw {

namespace {

constexpr double kBig = std::numeric_limits<double>::infinity();

double safe(double v) { return std::isfinite(v) ? v : kBig; }

struct Simplex {
    std::vector<std::vector<double>> x;
    std::vector<double> f;
};

}  // namespace

OptimResult nelder_mead(const Objective& fn, std::vector<double> x0, const NelderMeadOptions& opt) {
    const std::size_t n = x0.size();
    OptimResult res;
    auto eval = [&](const std::vector<double>& x) {
        ++res.evaluations;
        return safe(fn(x));
    };
    if (n == 0) {
        res.x = x0;
        res.f = eval(x0);
        res.converged = true;
        return res;
    }
    const double dn = static_cast<double>(n);
    const double rho = 1.0, chi = 1.0 + 2.0 / dn, gamma = 0.75 - 0.5 / dn, sigma = 1.0 - 1.0 / dn;

    std::vector<double> best = x0;
    double fbest = eval(best);
    for (int round = 0; round <= opt.restarts; ++round) {
        Simplex s;
        s.x.push_back(best);
        s.f.push_back(fbest);
        for (std::size_t i = 0; i < n; ++i) {
            auto v = best;
            v[i] += opt.initial_step;
            s.x.push_back(v);
            s.f.push_back(eval(v));
        }
        std::vector<std::size_t> order(n + 1);
        bool converged = false;
        while (res.evaluations < opt.max_evaluations) {
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s.f[a] < s.f[b]; });
            const std::size_t lo = order.front(), hi = order.back(), nh = order[n - 1];
            const double spread = s.f[hi] - s.f[lo];
            if (std::isfinite(s.f[hi]) && spread <= opt.f_tol * std::max(1.0, std::fabs(s.f[lo]))) {
                converged = true;
                break;
            }
            ++res.iterations;
            std::vector<double> c(n, 0.0);
            for (std::size_t k : order)
                if (k != hi)
                    for (std::size_t i = 0; i < n; ++i) c[i] += s.x[k][i] / dn;
            auto along = [&](double t) {
                std::vector<double> v(n);
                for (std::size_t i = 0; i < n; ++i) v[i] = c[i] + t * (s.x[hi][i] - c[i]);
                return v;
            };
            auto xr = along(-rho);
            const double fr = eval(xr);
            if (fr < s.f[lo]) {
                auto xe = along(-rho * chi);
                const double fe = eval(xe);
                if (fe < fr) {
                    s.x[hi] = std::move(xe);
                    s.f[hi] = fe;
                } else {
                    s.x[hi] = std::move(xr);
                    s.f[hi] = fr;
                }
                continue;
            }
            if (fr < s.f[nh]) {
                s.x[hi] = std::move(xr);
                s.f[hi] = fr;
                continue;
            }
            const bool outside = fr < s.f[hi];
            auto xc = along(outside ? -rho * gamma : gamma);
            const double fc = eval(xc);
            if (fc < (outside ? fr : s.f[hi])) {
                s.x[hi] = std::move(xc);
                s.f[hi] = fc;
                continue;
            }
            for (std::size_t k : order) {
                if (k == lo) continue;
                for (std::size_t i = 0; i < n; ++i) s.x[k][i] = s.x[lo][i] + sigma * (s.x[k][i] - s.x[lo][i]);
                s.f[k] = eval(s.x[k]);
            }
        }
        const auto it = std::min_element(s.f.begin(), s.f.end());
        const double improvement = fbest - *it;
        best = s.x[static_cast<std::size_t>(it - s.f.begin())];
        fbest = *it;
        res.converged = converged;
        if (!converged || (round > 0 && improvement <= opt.f_tol * std::max(1.0, std::fabs(fbest)))) break;
    }
    res.x = std::move(best);
    res.f = fbest;
    return res;
}

OptimResult bfgs(const Objective& fn, const Gradient& grad, std::vector<double> x0, const BfgsOptions& opt) {
    const std::size_t n = x0.size();
    OptimResult res;
    res.x = std::move(x0);
    res.f = safe(fn(res.x));
    ++res.evaluations;
    if (n == 0 || !std::isfinite(res.f)) return res;

    std::vector<double> g(n), gn(n), p(n), xn(n), s(n), y(n);
    grad(res.x, g);
    std::vector<double> H(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) H[i * n + i] = 1.0;
    auto norm_inf = [](const std::vector<double>& v) {
        double m = 0.0;
        for (double e : v) m = std::max(m, std::fabs(e));
        return m;
    };

    for (int it = 0; it < opt.max_iterations; ++it) {
        if (!(norm_inf(g) > opt.grad_tol)) {
            res.converged = std::isfinite(norm_inf(g));
            break;
        }
        ++res.iterations;
        double slope = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            p[i] = 0.0;
            for (std::size_t j = 0; j < n; ++j) p[i] -= H[i * n + j] * g[j];
            slope += p[i] * g[i];
        }
        if (!(slope < 0.0)) {
            // Not a descent direction: reset to steepest descent.
            std::fill(H.begin(), H.end(), 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                H[i * n + i] = 1.0;
                p[i] = -g[i];
            }
            slope = -std::inner_product(g.begin(), g.end(), g.begin(), 0.0);
        }
        double step = 1.0, fn_new = kBig;
        bool accepted = false;
        for (int k = 0; k < 50; ++k) {
            for (std::size_t i = 0; i < n; ++i) xn[i] = res.x[i] + step * p[i];
            fn_new = safe(fn(xn));
            ++res.evaluations;
            if (fn_new <= res.f + 1e-4 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;
        double snorm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            s[i] = xn[i] - res.x[i];
            snorm = std::max(snorm, std::fabs(s[i]));
        }
        grad(xn, gn);
        for (std::size_t i = 0; i < n; ++i) y[i] = gn[i] - g[i];
        res.x = xn;
        res.f = fn_new;
        g = gn;
        if (snorm < opt.step_tol) {
            res.converged = true;
            break;
        }
        const double sy = std::inner_product(s.begin(), s.end(), y.begin(), 0.0);
        if (sy > 1e-300) {
            // H <- (I - rho s y') H (I - rho y s') + rho s s'
            const double rho = 1.0 / sy;
            std::vector<double> Hy(n, 0.0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) Hy[i] += H[i * n + j] * y[j];
            const double yHy = std::inner_product(y.begin(), y.end(), Hy.begin(), 0.0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    H[i * n + j] += (1.0 + rho * yHy) * rho * s[i] * s[j] - rho * (Hy[i] * s[j] + s[i] * Hy[j]);
        }
    }
    if (!res.converged) res.converged = !(norm_inf(g) > opt.grad_tol);
    return res;
}

}  // namespace mokw
