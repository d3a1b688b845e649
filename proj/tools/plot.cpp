#include "plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "mokw/errors.hpp"

namespace mokw::cli {

namespace {

constexpr const char* kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string g(double x, int prec = 6) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    return buf;
}

std::string px(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

double finite_or_zero(double x) { return std::isfinite(x) ? x : 0.0; }

// Round tick step: 1, 2 or 5 times a power of ten.
std::vector<double> ticks(double lo, double hi, int target = 5) {
    const double raw = (hi - lo) / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        step = m * mag;
        if (step >= raw) break;
    }
    std::vector<double> t;
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * step; v += step) t.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
    return t;
}

struct Frame {
    double x0, y0, w, h;  // pixel box
    double xlo, xhi, ylo, yhi;
    [[nodiscard]] double X(double x) const { return x0 + (x - xlo) / (xhi - xlo) * w; }
    [[nodiscard]] double Y(double y) const { return y0 + h - (std::min(y, yhi) - ylo) / (yhi - ylo) * h; }
};

void axes(std::ostringstream& o, const Frame& f, const std::string& title, const std::string& ylabel) {
    o << "<rect x=\"" << px(f.x0) << "\" y=\"" << px(f.y0) << "\" width=\"" << px(f.w) << "\" height=\"" << px(f.h)
      << "\" fill=\"none\" stroke=\"#000\"/>\n";
    for (double t : ticks(f.xlo, f.xhi)) {
        o << "<line x1=\"" << px(f.X(t)) << "\" y1=\"" << px(f.y0 + f.h) << "\" x2=\"" << px(f.X(t)) << "\" y2=\""
          << px(f.y0 + f.h + 5) << "\" stroke=\"#000\"/>\n";
        o << "<text x=\"" << px(f.X(t)) << "\" y=\"" << px(f.y0 + f.h + 18) << "\" text-anchor=\"middle\">" << g(t, 4)
          << "</text>\n";
    }
    for (double t : ticks(f.ylo, f.yhi)) {
        o << "<line x1=\"" << px(f.x0 - 5) << "\" y1=\"" << px(f.Y(t)) << "\" x2=\"" << px(f.x0) << "\" y2=\""
          << px(f.Y(t)) << "\" stroke=\"#000\"/>\n";
        o << "<text x=\"" << px(f.x0 - 8) << "\" y=\"" << px(f.Y(t) + 4) << "\" text-anchor=\"end\">" << g(t, 4)
          << "</text>\n";
    }
    o << "<text x=\"" << px(f.x0 + f.w / 2) << "\" y=\"" << px(f.y0 - 10)
      << "\" text-anchor=\"middle\" font-weight=\"bold\">" << title << "</text>\n";
    o << "<text x=\"" << px(f.x0 + f.w / 2) << "\" y=\"" << px(f.y0 + f.h + 36) << "\" text-anchor=\"middle\">t</text>\n";
    o << "<text transform=\"translate(" << px(f.x0 - 45) << "," << px(f.y0 + f.h / 2)
      << ") rotate(-90)\" text-anchor=\"middle\">" << ylabel << "</text>\n";
}

void polyline(std::ostringstream& o, const Frame& f, const std::vector<double>& x, const std::vector<double>& y,
              const char* colour) {
    o << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.8\" points=\"";
    for (std::size_t i = 0; i < x.size(); ++i) o << (i ? " " : "") << px(f.X(x[i])) << "," << px(f.Y(y[i]));
    o << "\"/>\n";
}

void legend(std::ostringstream& o, const Frame& f, const std::vector<Curve>& curves, const char* data_label) {
    double y = f.y0 + 16;
    const double x = f.x0 + f.w - 130;
    o << "<rect x=\"" << px(x) << "\" y=\"" << px(y - 9) << "\" width=\"18\" height=\"9\" fill=\"#c8c8c8\" stroke=\"#666\"/>\n";
    o << "<text x=\"" << px(x + 24) << "\" y=\"" << px(y) << "\">" << data_label << "</text>\n";
    for (std::size_t c = 0; c < curves.size(); ++c) {
        y += 16;
        o << "<line x1=\"" << px(x) << "\" y1=\"" << px(y - 4) << "\" x2=\"" << px(x + 18) << "\" y2=\"" << px(y - 4)
          << "\" stroke=\"" << kPalette[c % 6] << "\" stroke-width=\"1.8\"/>\n";
        o << "<text x=\"" << px(x + 24) << "\" y=\"" << px(y) << "\">" << curves[c].label << "</text>\n";
    }
}

}  // namespace

std::size_t sturges_bins(std::size_t n) {
    if (n == 0) return 1;
    return static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(n)))) + 1;
}

PlotData make_plot_data(std::span<const double> data, const std::vector<Overlay>& overlays, std::size_t bins) {
    if (data.empty()) throw DomainError("plot: empty data");
    PlotData p;
    p.sorted.assign(data.begin(), data.end());
    std::sort(p.sorted.begin(), p.sorted.end());
    const double lo = p.sorted.front(), hi = p.sorted.back();
    const std::size_t n = p.sorted.size();

    const std::size_t k = bins ? bins : sturges_bins(n);
    const double width = hi > lo ? (hi - lo) / static_cast<double>(k) : 1.0;
    for (std::size_t i = 0; i <= k; ++i) p.edges.push_back(i == k && hi > lo ? hi : lo + width * static_cast<double>(i));
    std::vector<std::size_t> counts(k, 0);
    for (double x : p.sorted) {
        auto b = static_cast<std::size_t>((x - lo) / width);
        counts[std::min(b, k - 1)]++;
    }
    for (std::size_t i = 0; i < k; ++i) {
        p.density.push_back(static_cast<double>(counts[i]) / (static_cast<double>(n) * (p.edges[i + 1] - p.edges[i])));
        p.centers.push_back(0.5 * (p.edges[i] + p.edges[i + 1]));
    }

    const double span = hi > lo ? hi - lo : std::max(1.0, std::abs(lo));
    const double glo = lo - 0.05 * span, ghi = hi + 0.05 * span;
    for (std::size_t i = 0; i < kCurvePoints; ++i)
        p.grid.push_back(glo + (ghi - glo) * static_cast<double>(i) / static_cast<double>(kCurvePoints - 1));

    for (const auto& ov : overlays) {
        Curve c{ov.label, {}, {}, {}};
        for (double t : p.grid) {
            c.pdf.push_back(ov.dist.pdf(t));
            c.cdf.push_back(ov.dist.cdf(t));
        }
        for (double t : p.centers) c.center_pdf.push_back(ov.dist.pdf(t));
        p.curves.push_back(std::move(c));
    }
    return p;
}

std::string render_svg(const PlotData& p, const std::string& title) {
    const double W = 1000, H = 440;
    double ymax = *std::max_element(p.density.begin(), p.density.end());
    for (const auto& c : p.curves)
        for (double v : c.pdf) ymax = std::max(ymax, finite_or_zero(v));
    ymax *= 1.08;
    const Frame left{70, 50, 380, 320, p.grid.front(), p.grid.back(), 0.0, ymax};
    const Frame right{570, 50, 380, 320, p.grid.front(), p.grid.back(), 0.0, 1.05};

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
      << " " << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<title>" << title << "</title>\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n";

    for (std::size_t i = 0; i < p.density.size(); ++i) {
        const double x = left.X(p.edges[i]), x2 = left.X(p.edges[i + 1]), y = left.Y(p.density[i]);
        o << "<rect x=\"" << px(x) << "\" y=\"" << px(y) << "\" width=\"" << px(x2 - x) << "\" height=\""
          << px(left.Y(0) - y) << "\" fill=\"#c8c8c8\" stroke=\"#666\"/>\n";
    }
    for (std::size_t c = 0; c < p.curves.size(); ++c) {
        std::vector<double> y;
        for (double v : p.curves[c].pdf) y.push_back(finite_or_zero(v));
        polyline(o, left, p.grid, y, kPalette[c % 6]);
    }
    axes(o, left, "Histogram and fitted densities", "density");
    legend(o, left, p.curves, "data");

    // Empirical cdf as a step path; the last step reaches 1.
    const double n = static_cast<double>(p.sorted.size());
    o << "<path fill=\"none\" stroke=\"#000\" stroke-width=\"1.2\" d=\"M" << px(right.X(p.grid.front())) << ","
      << px(right.Y(0));
    for (std::size_t i = 0; i < p.sorted.size(); ++i) {
        const double x = right.X(p.sorted[i]);
        o << " H" << px(x) << " V" << px(right.Y(static_cast<double>(i + 1) / n));
    }
    o << " H" << px(right.X(p.grid.back())) << "\"/>\n";
    for (std::size_t c = 0; c < p.curves.size(); ++c) polyline(o, right, p.grid, p.curves[c].cdf, kPalette[c % 6]);
    axes(o, right, "Empirical and fitted cdfs", "cdf");
    legend(o, right, p.curves, "ecdf");

    o << "</svg>\n";
    return o.str();
}

std::string render_curve_table(const PlotData& p) {
    std::ostringstream o;
    o << "# t";
    for (const auto& c : p.curves) o << "\tpdf:" << c.label << "\tcdf:" << c.label;
    o << "\n";
    for (std::size_t i = 0; i < p.grid.size(); ++i) {
        o << g(p.grid[i], 17);
        for (const auto& c : p.curves) o << "\t" << g(c.pdf[i], 17) << "\t" << g(c.cdf[i], 17);
        o << "\n";
    }
    return o.str();
}

}  // namespace mokw::cli
