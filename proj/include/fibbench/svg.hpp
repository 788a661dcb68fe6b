#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fibbench {

struct ChartSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;  // (x, y), sorted by x
};

struct ChartSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    int width = 960;
    int height = 600;
};

/// Minimal SVG 1.1 line chart: one polyline per series, linear axes with
/// ticks, and a legend. Series with a single point are drawn as a marker.
void write_line_chart(std::ostream& out, const ChartSpec& spec,
                      std::span<const ChartSeries> series);

}  // namespace fibbench
