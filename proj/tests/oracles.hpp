#pragma once

// Independent reference formulas used as test oracles. These are written on
// the natural scale directly from the closed forms and share no code with the
// library's log-space implementation.

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "mokw/baseline.hpp"

namespace oracle {

inline double Phi(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }
inline double phi(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI); }

struct Case {
    std::string label;
    mokw::Baseline base;
    std::function<double(double)> cdf;
    std::function<double(double)> pdf;
    double lo;  // interior test range
    double hi;
};

/// One representative parameterization for each baseline kind and shape.
inline std::vector<Case> zoo() {
    using mokw::Baseline;
    using mokw::EwShape;
    std::vector<Case> z;
    {
        const double l = 1.3;
        z.push_back({"exp", Baseline::exponential(l), [=](double t) { return 1 - std::exp(-l * t); },
                     [=](double t) { return l * std::exp(-l * t); }, 0.05, 3.0});
    }
    {
        const double b = 2.5, d = 1.5;
        z.push_back({"lomax", Baseline::lomax(b, d), [=](double t) { return 1 - std::pow(1 + t / d, -b); },
                     [=](double t) { return b / d * std::pow(1 + t / d, -b - 1); }, 0.05, 5.0});
    }
    {
        const double l = 0.8, b = 1.7;
        z.push_back({"weibull", Baseline::weibull(l, b), [=](double t) { return 1 - std::exp(-l * std::pow(t, b)); },
                     [=](double t) { return l * b * std::pow(t, b - 1) * std::exp(-l * std::pow(t, b)); }, 0.05,
                     3.0});
    }
    {
        const double l = 2.2, d = 1.4;
        z.push_back({"frechet", Baseline::frechet(l, d), [=](double t) { return std::exp(-std::pow(d / t, l)); },
                     [=](double t) {
                         return l * std::pow(d, l) * std::pow(t, -l - 1) * std::exp(-std::pow(d / t, l));
                     },
                     0.5, 8.0});
    }
    {
        const double b = 0.6, l = 0.9;
        z.push_back({"gompertz", Baseline::gompertz(b, l),
                     [=](double t) { return 1 - std::exp(-(b / l) * (std::exp(l * t) - 1)); },
                     [=](double t) { return b * std::exp(l * t) * std::exp(-(b / l) * (std::exp(l * t) - 1)); },
                     0.05, 3.0});
    }
    {
        const double d = 0.7;
        z.push_back({"ew-linear", Baseline::extended_weibull(d, EwShape::Linear),
                     [=](double t) { return 1 - std::exp(-d * t); }, [=](double t) { return d * std::exp(-d * t); },
                     0.05, 5.0});
        z.push_back({"ew-square", Baseline::extended_weibull(d, EwShape::Square),
                     [=](double t) { return 1 - std::exp(-d * t * t); },
                     [=](double t) { return 2 * d * t * std::exp(-d * t * t); }, 0.05, 3.0});
        const double k = 0.5;
        z.push_back({"ew-pareto", Baseline::extended_weibull(2.0, EwShape::Pareto, k),
                     [=](double t) { return 1 - std::pow(k / t, 2.0); },
                     [=](double t) { return 2.0 * k * k / (t * t * t); }, 0.55, 5.0});
        const double be = 0.4;
        z.push_back({"ew-gompertz", Baseline::extended_weibull(d, EwShape::Gompertz, be),
                     [=](double t) { return 1 - std::exp(-d * (std::exp(be * t) - 1) / be); },
                     [=](double t) { return d * std::exp(be * t) * std::exp(-d * (std::exp(be * t) - 1) / be); },
                     0.05, 4.0});
    }
    {
        const double s = 0.3, b = 0.5, g = 2.0;
        z.push_back({"mw", Baseline::modified_weibull(s, b, g),
                     [=](double t) { return 1 - std::exp(-s * t - b * std::pow(t, g)); },
                     [=](double t) {
                         return (s + b * g * std::pow(t, g - 1)) * std::exp(-s * t - b * std::pow(t, g));
                     },
                     0.05, 3.0});
    }
    {
        const double p = 1.8, mu = 0.3, sg = 0.6;
        z.push_back({"pln", Baseline::power_lognormal(p, mu, sg),
                     [=](double t) { return 1 - std::pow(Phi((mu - std::log(t)) / sg), p); },
                     [=](double t) {
                         const double zz = (mu - std::log(t)) / sg;
                         return p / (t * sg) * phi(zz) * std::pow(Phi(zz), p - 1);
                     },
                     0.3, 5.0});
    }
    {
        const double g = 1.5, k = 2.0, th = 0.8;
        z.push_back({"eep", Baseline::exponentiated_pareto(g, k, th),
                     [=](double t) { return std::pow(1 - std::pow(th / t, k), g); },
                     [=](double t) {
                         return g * std::pow(1 - std::pow(th / t, k), g - 1) * k * std::pow(th, k) *
                                std::pow(t, -k - 1);
                     },
                     0.9, 6.0});
    }
    {
        const double k = 1.7, th = 0.5;
        z.push_back({"ep", Baseline::extended_power(k, th), [=](double t) { return std::pow(th * t, k); },
                     [=](double t) { return k * std::pow(th, k) * std::pow(t, k - 1); }, 0.05, 1.95});
    }
    return z;
}

inline std::vector<double> grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
    return g;
}

inline double rel_err(double x, double ref) {
    const double d = std::fabs(x - ref);
    return ref == 0.0 ? d : d / std::fabs(ref);
}

// Direct natural-scale formulas for the composed families.
inline double mokw_cdf(double G, double alpha, double a, double b) {
    const double S = std::pow(1 - std::pow(G, a), b);
    return (1 - S) / (1 - (1 - alpha) * S);
}
inline double mokw_pdf(double g, double G, double alpha, double a, double b) {
    const double S = std::pow(1 - std::pow(G, a), b);
    const double D = 1 - (1 - alpha) * S;
    return alpha * a * b * g * std::pow(G, a - 1) * std::pow(1 - std::pow(G, a), b - 1) / (D * D);
}
inline double kwmo_cdf(double G, double alpha, double a, double b) {
    const double M = G / (alpha + (1 - alpha) * G);
    return 1 - std::pow(1 - std::pow(M, a), b);
}
inline double kwmo_pdf(double g, double G, double alpha, double a, double b) {
    const double den = alpha + (1 - alpha) * G;
    const double M = G / den;
    return a * b * std::pow(M, a - 1) * std::pow(1 - std::pow(M, a), b - 1) * alpha * g / (den * den);
}

inline double mokw_sf(double G, double alpha, double a, double b) {
    const double S = std::pow(1 - std::pow(G, a), b);
    return alpha * S / (1 - (1 - alpha) * S);
}

// Composite Simpson rule with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double lo, double hi, int n) {
    const double h = (hi - lo) / n;
    double s = f(lo) + f(hi);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
    return s * h / 3.0;
}

}  // namespace oracle
