#include "spectral/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "spectral/error.hpp"
#include "spectral/io.hpp"

namespace spectral {

NormReport NormReport::make(std::string quantity, std::vector<std::pair<std::string, double>> params,
                            double value, double reference, std::string metadata) {
  NormReport r;
  r.quantity = std::move(quantity);
  r.params = std::move(params);
  r.value = value;
  r.reference = reference;
  r.ratio = reference != 0.0 ? value / reference : std::numeric_limits<double>::quiet_NaN();
  r.metadata = std::move(metadata);
  return r;
}

double NormReport::param(const std::string& name) const {
  for (const auto& [k, v] : params) {
    if (k == name) return v;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

void write_reports_csv(std::ostream& os, std::span<const NormReport> rows) {
  os << "quantity,params,value,reference,ratio,metadata\n";
  for (const auto& r : rows) {
    os << r.quantity << ',';
    for (std::size_t i = 0; i < r.params.size(); ++i) {
      os << (i ? ";" : "") << r.params[i].first << '=' << format_double(r.params[i].second);
    }
    os << ',' << format_double(r.value) << ',' << format_double(r.reference) << ','
       << format_double(r.ratio) << ',' << r.metadata << '\n';
  }
}

void write_interpolation_csv(std::ostream& os, std::span<const NormReport> rows) {
  os << "quantity,theta,value,reference,ratio\n";
  for (const auto& r : rows) {
    os << r.quantity << ',' << format_double(r.param("theta")) << ',' << format_double(r.value) << ','
       << format_double(r.reference) << ',' << format_double(r.ratio) << '\n';
  }
}

namespace {

struct Axis {
  double lo;
  double hi;
  bool log;

  double map(double v) const { return log ? std::log10(v) : v; }
};

Axis make_axis(std::span<const PlotSeries> series, bool x, bool log) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& s : series) {
    for (double v : x ? s.x : s.y) {
      if (!std::isfinite(v) || (log && v <= 0.0)) continue;
      const double m = log ? std::log10(v) : v;
      lo = std::min(lo, m);
      hi = std::max(hi, m);
    }
  }
  if (!std::isfinite(lo)) {
    lo = 0.0;
    hi = 1.0;
  }
  if (hi - lo < 1e-12) {
    lo -= 0.5;
    hi += 0.5;
  }
  if (log) {
    lo = std::floor(lo);
    hi = std::ceil(hi);
  }
  return {lo, hi, log};
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string tick_label(double v, bool log) {
  std::ostringstream os;
  if (log) {
    os << "1e" << static_cast<int>(std::lround(v));
  } else {
    os.precision(4);
    os << v;
  }
  return os.str();
}

}  // namespace

std::string render_svg(const PlotSpec& spec, std::span<const PlotSeries> series) {
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
  constexpr double W = 640, H = 420, L = 80, R = 160, T = 40, B = 60;
  const Axis ax = make_axis(series, true, spec.log_x);
  const Axis ay = make_axis(series, false, spec.log_y);
  auto px = [&](double v) { return L + (ax.map(v) - ax.lo) / (ax.hi - ax.lo) * (W - L - R); };
  auto py = [&](double v) { return H - B - (ay.map(v) - ay.lo) / (ay.hi - ay.lo) * (H - T - B); };

  std::ostringstream os;
  os.precision(6);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W << "\" height=\"" << H
     << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << escape(spec.title)
     << "</text>\n"
     << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n"
     << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n";

  const int ticks = 5;
  for (int i = 0; i <= ticks; ++i) {
    const double fx = ax.lo + (ax.hi - ax.lo) * i / ticks;
    const double fy = ay.lo + (ay.hi - ay.lo) * i / ticks;
    const double sx = L + (W - L - R) * i / ticks;
    const double sy = H - B - (H - T - B) * i / ticks;
    os << "<line x1=\"" << sx << "\" y1=\"" << H - B << "\" x2=\"" << sx << "\" y2=\"" << H - B + 5
       << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << sx << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\" font-size=\"11\">"
       << tick_label(fx, ax.log) << "</text>\n"
       << "<line x1=\"" << L - 5 << "\" y1=\"" << sy << "\" x2=\"" << L << "\" y2=\"" << sy
       << "\" stroke=\"black\"/>\n"
       << "<text x=\"" << L - 8 << "\" y=\"" << sy + 4 << "\" text-anchor=\"end\" font-size=\"11\">"
       << tick_label(fy, ay.log) << "</text>\n";
  }
  os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\" font-size=\"13\">"
     << escape(spec.x_label) << "</text>\n"
     << "<text x=\"18\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" font-size=\"13\" "
     << "transform=\"rotate(-90 18 " << (T + H - B) / 2 << ")\">" << escape(spec.y_label) << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const auto& ser = series[s];
    const char* color = kColors[s % 6];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < std::min(ser.x.size(), ser.y.size()); ++i) {
      if (!std::isfinite(ser.x[i]) || !std::isfinite(ser.y[i])) continue;
      if ((spec.log_x && ser.x[i] <= 0.0) || (spec.log_y && ser.y[i] <= 0.0)) continue;
      os << px(ser.x[i]) << ',' << py(ser.y[i]) << ' ';
    }
    os << "\"/>\n";
    const double ly = T + 20.0 * static_cast<double>(s);
    os << "<line x1=\"" << W - R + 10 << "\" y1=\"" << ly << "\" x2=\"" << W - R + 30 << "\" y2=\"" << ly
       << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
       << "<text x=\"" << W - R + 35 << "\" y=\"" << ly + 4 << "\" font-size=\"11\">" << escape(ser.label)
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace spectral
