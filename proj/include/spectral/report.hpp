#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace spectral {

/// One measured quantity: a constant, a ratio or a convergence-table row.
struct NormReport {
  std::string quantity;
  std::vector<std::pair<std::string, double>> params;
  double value = 0.0;
  double reference = 0.0;
  double ratio = 0.0;  // value / reference, NaN when reference == 0
  std::string metadata;

  static NormReport make(std::string quantity, std::vector<std::pair<std::string, double>> params,
                         double value, double reference, std::string metadata = {});

  /// Looks up a parameter by name; NaN when absent.
  double param(const std::string& name) const;
};

/// `quantity,params,value,reference,ratio,metadata`; params are written as
/// `name=value` joined with ';'.
void write_reports_csv(std::ostream& os, std::span<const NormReport> rows);

/// `quantity,theta,value,reference,ratio` (the interpolation schema).
void write_interpolation_csv(std::ostream& os, std::span<const NormReport> rows);

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
};

/// Static SVG 1.1 line plot with axes, ticks and a legend.
std::string render_svg(const PlotSpec& spec, std::span<const PlotSeries> series);

}  // namespace spectral
