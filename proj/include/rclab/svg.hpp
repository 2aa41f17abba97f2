#pragma once

/// @file svg.hpp
/// @brief Minimal self-contained SVG line charts.

#include <string>
#include <vector>

namespace rclab {

struct ChartSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

struct ChartOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    bool log_y = false;
    int width = 640;
    int height = 400;
};

/// One polyline per series with axes, min/max tick labels and a legend.
/// Non-positive values are dropped on log axes. Output is deterministic.
std::string line_chart_svg(const std::vector<ChartSeries>& series, const ChartOptions& opt);

}  // namespace rclab
