#pragma once

// Minimal deterministic SVG line plots (log-log), for the sweep outputs.

#include <string>
#include <utility>
#include <vector>

namespace paracomm {

struct PlotSeries {
  std::string name;
  std::vector<std::pair<double, double>> points;  // (x, y), positive for log axes
};

/// Log-log line plot; identical input yields identical bytes. Throws if any
/// series has fewer than 2 positive points or the path is unwritable.
void emit_plot(const std::string& path, const std::string& title,
               const std::string& xlabel, const std::string& ylabel,
               const std::vector<PlotSeries>& series);

}  // namespace paracomm
