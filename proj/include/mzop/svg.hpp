#pragma once

#include <string>
#include <vector>

namespace mzop {

struct PlotSeries {
    std::string label;
    std::string color;
    std::vector<double> x;
    std::vector<double> y;
};

/// Minimal standalone line plot (800x600 viewBox): axes with ticks, one
/// polyline per series, text legend. No plotting dependency; the CSV stays
/// the canonical output.
void write_svg_plot(const std::string& path, const std::vector<PlotSeries>& series,
                    const std::string& title, const std::string& x_label,
                    const std::string& y_label);

}  // namespace mzop
