#pragma once

// Histogram / empirical cdf figures with fitted overlays, as SVG plus a
// plain-text curve table.

#include <span>
#include <string>
#include <vector>

#include "mokw/transform.hpp"

namespace mokw::cli {

inline constexpr std::size_t kCurvePoints = 256;

struct Overlay {
    std::string label;
    ComposedDistribution dist;
};

struct Curve {
    std::string label;
    std::vector<double> pdf;         // on grid
    std::vector<double> cdf;         // on grid
    std::vector<double> center_pdf;  // at histogram bin centers
};

struct PlotData {
    std::vector<double> edges;    // bins + 1
    std::vector<double> density;  // bins, integrates to one
    std::vector<double> centers;
    std::vector<double> sorted;   // ecdf jumps at these, height (i+1)/n
    std::vector<double> grid;     // kCurvePoints over [min, max] padded 5%
    std::vector<Curve> curves;
};

/// ceil(log2 n) + 1.
std::size_t sturges_bins(std::size_t n);

/// bins = 0 selects the Sturges count.
PlotData make_plot_data(std::span<const double> data, const std::vector<Overlay>& overlays, std::size_t bins = 0);

std::string render_svg(const PlotData& p, const std::string& title);

/// "# t  pdf:<label> cdf:<label> ..." then one tab-separated row per grid point.
std::string render_curve_table(const PlotData& p);

}  // namespace mokw::cli
