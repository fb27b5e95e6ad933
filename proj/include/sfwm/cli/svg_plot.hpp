#pragma once

#include <string>
#include <vector>

namespace sfwm::cli {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_y = false;
    int width = 720;
    int height = 440;
};

/// Standalone SVG document with one polyline per series, axes and a legend.
std::string render_line_plot(const std::vector<PlotSeries>& series, const PlotOptions& options);

}  // namespace sfwm::cli
