#pragma once

#include <string>
#include <vector>

namespace ltvobs {

struct PlotSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

/// Renders a simple static line chart to an SVG file. Post-hoc only; no
/// interactive machinery.
void write_svg_chart(const std::string& path, const std::string& title, const std::string& xlabel,
                     const std::string& ylabel, const std::vector<PlotSeries>& series);

}  // namespace ltvobs
