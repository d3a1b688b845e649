#include "mokw/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "mokw/errors.hpp"

namespace mokw {

namespace {

// Kronrod abscissae (positive half, descending) and weights; every other
// abscissa is a Gauss node.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
    double a, b, value, error;
    bool operator<(const Piece& o) const { return error < o.error; }
};

template <typename F>
Piece gk15(const F& f, double a, double b, int& evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double resk = fc * kWgk[7];
    double resg = fc * kWg[3];
    double resabs = std::fabs(resk);
    double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const double f1 = f(c - dx);
        const double f2 = f(c + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += kWgk[j] * (f1 + f2);
        resabs += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    evals += 15;
    const double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::fabs(fc - reskh);
    for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::fabs(fv1[j] - reskh) + std::fabs(fv2[j] - reskh));
    const double ah = std::fabs(h);
    resasc *= ah;
    resabs *= ah;
    double err = std::fabs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
    return {a, b, resk * h, err};
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double lo, double hi, const QuadOptions& opt) {
    if (std::isnan(lo) || std::isnan(hi)) throw DomainError("integrate: NaN limits");
    if (lo == hi) return {0.0, 0.0, 0, 0, true};
    if (lo > hi) {
        QuadResult r = integrate(f, hi, lo, opt);
        r.value = -r.value;
        return r;
    }
    const double s = opt.tail_scale;
    std::function<double(double)> g;
    double a = 0.0, b = 1.0;
    const bool lo_inf = std::isinf(lo), hi_inf = std::isinf(hi);
    if (lo_inf && hi_inf) {
        // t = s u / (1 - u^2) on (-1, 1)
        g = [&](double u) {
            const double d = 1.0 - u * u;
            return f(s * u / d) * s * (1.0 + u * u) / (d * d);
        };
        a = -1.0;
    } else if (hi_inf) {
        g = [&](double u) {
            const double d = 1.0 - u;
            return f(lo + s * u / d) * s / (d * d);
        };
    } else if (lo_inf) {
        g = [&](double u) {
            const double d = 1.0 - u;
            return f(hi - s * u / d) * s / (d * d);
        };
    } else {
        g = f;
        a = lo;
        b = hi;
    }
    auto checked = [&](double x) {
        const double v = g(x);
        if (!std::isfinite(v)) throw DivergenceError("integrate: integrand is not finite at a node");
        return v;
    };

    QuadResult out;
    std::vector<Piece> heap{gk15(checked, a, b, out.evaluations)};
    double total = heap.front().value;
    double err = heap.front().error;
    while (err > std::max(opt.abs_tol, opt.rel_tol * std::fabs(total)) &&
           static_cast<int>(heap.size()) < opt.max_intervals) {
        std::pop_heap(heap.begin(), heap.end());
        const Piece p = heap.back();
        const double mid = 0.5 * (p.a + p.b);
        if (!(mid > p.a && mid < p.b)) {
            std::push_heap(heap.begin(), heap.end());
            break;
        }
        heap.back() = gk15(checked, p.a, mid, out.evaluations);
        std::push_heap(heap.begin(), heap.end());
        heap.push_back(gk15(checked, mid, p.b, out.evaluations));
        std::push_heap(heap.begin(), heap.end());
        // Re-sum to keep rounding from accumulating.
        total = 0.0;
        err = 0.0;
        for (const Piece& q : heap) {
            total += q.value;
            err += q.error;
        }
    }
    out.value = total;
    out.abs_error = err;
    out.intervals = static_cast<int>(heap.size());
    out.converged = err <= std::max(opt.abs_tol, opt.rel_tol * std::fabs(total));
    if (!out.converged && opt.strict)
        throw ConvergenceError("integrate: tolerance not met (error estimate " + std::to_string(err) + ")");
    return out;
}

}  // namespace mokw
