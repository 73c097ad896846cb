#include "spectral/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "spectral/error.hpp"

namespace spectral {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_spectral_csv(std::ostream& os, const SpectralField& f) {
  const int d = f.op().dim();
  for (int a = 0; a < d; ++a) os << 'k' << (a + 1) << ',';
  os << "polarization,re,im\n";
  for (const auto& [m, v] : f) {
    for (int a = 0; a < d; ++a) os << m.k[static_cast<std::size_t>(a)] << ',';
    os << m.pol << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
  }
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw ConfigError("malformed number in CSV: '" + s + "'");
  }
  return v;
}

int parse_int(const std::string& s) {
  int v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw ConfigError("malformed integer in CSV: '" + s + "'");
  }
  return v;
}

}  // namespace

SpectralField read_spectral_csv(std::istream& is, const OperatorSpec& op) {
  const int d = op.dim();
  std::string line;
  if (!std::getline(is, line)) throw ConfigError("empty spectral CSV");
  std::ostringstream expected;
  for (int a = 0; a < d; ++a) expected << 'k' << (a + 1) << ',';
  expected << "polarization,re,im";
  if (line != expected.str()) throw ConfigError("unexpected spectral CSV header: " + line);

  SpectralField f(op);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != static_cast<std::size_t>(d + 3)) {
      throw ConfigError("spectral CSV row has wrong column count: " + line);
    }
    ModeIndex m;
    m.dim = d;
    for (int a = 0; a < d; ++a) m.k[static_cast<std::size_t>(a)] = parse_int(cells[static_cast<std::size_t>(a)]);
    m.pol = parse_int(cells[static_cast<std::size_t>(d)]);
    f.set(m, cplx(parse_double(cells[static_cast<std::size_t>(d + 1)]),
                  parse_double(cells[static_cast<std::size_t>(d + 2)])));
  }
  return f;
}

void write_grid_csv(std::ostream& os, const GridField& g) {
  const int d = g.dim();
  for (int a = 0; a < d; ++a) os << 'x' << (a + 1) << ',';
  if (g.components() == 1) {
    os << "re,im\n";
  } else {
    for (int c = 0; c < g.components(); ++c) {
      os << "re" << (c + 1) << ",im" << (c + 1) << (c + 1 < g.components() ? "," : "\n");
    }
  }
  for (std::size_t p = 0; p < g.num_points(); ++p) {
    const Point x = g.point(p);
    for (int a = 0; a < d; ++a) os << format_double(x[static_cast<std::size_t>(a)]) << ',';
    for (int c = 0; c < g.components(); ++c) {
      const cplx v = g.at(p, c);
      os << format_double(v.real()) << ',' << format_double(v.imag())
         << (c + 1 < g.components() ? "," : "\n");
    }
  }
}

}  // namespace spectral
