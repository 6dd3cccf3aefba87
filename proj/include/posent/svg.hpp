#pragma once

#include <string>
#include <vector>

namespace posent {

// Minimal deterministic SVG charts: fixed layout, no timestamps, numbers
// rendered with %.6g. Kept in-house so identical inputs give identical bytes.

struct ChartSeries {
    std::string label;
    std::vector<double> xs;
    std::vector<double> ys;
};

std::string line_chart_svg(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<ChartSeries>& series);

// Stacked per-x proportions (values in [0,1] per layer, layers stack to 1).
struct StackedSeries {
    std::string label;
    std::vector<double> values; // one value per x
};

std::string stacked_chart_svg(const std::string& title, const std::string& x_label,
                              const std::vector<double>& xs,
                              const std::vector<StackedSeries>& layers);

} // namespace posent
