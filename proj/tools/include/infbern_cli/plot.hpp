#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "infbern/csv.hpp"

namespace infbern::cli {

struct Curve {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Line plot description. Every SVG is written together with a CSV twin
/// holding the same samples, so the plot is never the only record.
struct PlotSpec {
  std::vector<Curve> curves;
  std::array<double, 2> x_range{0.0, 1.0};
  std::array<double, 2> y_range{0.0, 1.0};
  std::string x_label;
  std::string y_label;
  std::string title;
  std::filesystem::path output;

  /// Throws infbern::Error unless there is at least one curve, all curves
  /// share the x samples of the first and both ranges are finite and non-empty.
  void validate() const;
};

/// Standalone SVG with axes, ticks, one clipped polyline per curve and a legend.
std::string render_svg(const PlotSpec& spec);

/// Columns: x label, then one column per curve label.
Table plot_table(const PlotSpec& spec);

/// Writes `spec.output` (SVG) and `csv_path` (the twin table).
void write_plot(const PlotSpec& spec, const std::filesystem::path& csv_path);

}  // namespace infbern::cli
