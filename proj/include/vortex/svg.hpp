#pragma once

#include <optional>
#include <string>
#include <vector>

namespace vortex {

struct Curve {
    std::string label;
    std::string color;
    std::vector<double> x, y;
};

struct LinePlot {
    std::string title, xlabel, ylabel;
    std::vector<Curve> curves;
    std::optional<std::pair<double, double>> band;  // horizontal band [lo, hi]
    std::optional<double> marker_x;                 // vertical marker
    std::optional<std::pair<double, double>> xrange, yrange;
    std::string note;  // written as an XML comment
};

std::string render_line_plot(const LinePlot& plot);

// Long-form samples (x, y, value) on a rectangular grid, diverging colour map.
std::string render_heatmap(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                           const std::vector<std::vector<double>>& rows, const std::string& note);

}  // namespace vortex
