#pragma once

#include <string>
#include <vector>

#include "diracflow/graded_matrix.hpp"

namespace diracflow {

/// Minimal line plot: one polyline over (x, y) samples, axes and min/max tick
/// labels, no timestamps or external assets.
void write_line_plot_svg(const std::string& path, const std::string& title,
                         const std::vector<double>& x,
                         const std::vector<double>& y);

/// Cell-per-entry heatmap of a real matrix with a diverging palette centered
/// at zero (blue negative, red positive), normalized by max |entry|.
void write_heatmap_svg(const std::string& path, const std::string& title,
                       const Eigen::MatrixXd& values);

}  // namespace diracflow
