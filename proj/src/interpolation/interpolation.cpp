#include "spectral/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>

#include "spectral/approx.hpp"
#include "spectral/error.hpp"

namespace spectral::interp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTailFraction = 0.01;
constexpr double kTailTarget = 0.005;

// integral_0^{s0} s^{1-2 theta}/(1+s^2) ds
double lower_tail(double s0, double theta) {
  const double a = 2.0 - 2.0 * theta;
  if (s0 >= 1.0) return std::pow(s0, a) / a;  // leading order only
  double sum = 0.0;
  double p = std::pow(s0, a);
  const double s2 = s0 * s0;
  for (int n = 0; n < 4000; ++n) {
    const double term = p / (a + 2.0 * n);
    sum += (n % 2 == 0) ? term : -term;
    if (term < 1e-18 * std::abs(sum)) break;
    p *= s2;
  }
  return sum;
}

// integral_{s1}^inf s^{1-2 theta}/(1+s^2) ds
double upper_tail(double s1, double theta) {
  const double b = 2.0 * theta;
  if (s1 <= 1.0) return std::pow(s1, -b) / b;
  double sum = 0.0;
  double p = std::pow(s1, -b);
  const double inv2 = 1.0 / (s1 * s1);
  for (int n = 0; n < 4000; ++n) {
    const double term = p / (b + 2.0 * n);
    sum += (n % 2 == 0) ? term : -term;
    if (term < 1e-18 * std::abs(sum)) break;
    p *= inv2;
  }
  return sum;
}

void require_theta(double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw ConfigError("interpolation parameter must lie in (0,1)");
}

}  // namespace

void InterpolationQuery::validate() const {
  require_theta(theta);
  if (points < 16) throw ConfigError("interpolation quadrature needs at least 16 points");
  if (t_min && !(*t_min > 0.0)) throw ConfigError("t_min must be > 0");
  if (t_min && t_max && !(*t_min < *t_max)) throw ConfigError("t_min must be < t_max");
}

BoundaryWeight BoundaryWeight::distance_like(const DomainSpec& domain) {
  if (domain.periodic()) throw ConfigError("boundary weight needs an interval or box");
  return {"x(L-x)/L", [domain](const Point& x) {
            double r = 1.0;
            for (int a = 0; a < domain.dim(); ++a) {
              const double L = domain.length(a);
              const double xa = x[static_cast<std::size_t>(a)];
              r *= xa * (L - xa) / L;
            }
            return r;
          }};
}

double k_functional(const SpectralField& f, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw ConfigError("K-functional requires t > 0");
  double s = 0.0;
  for (const auto& [m, v] : f) {
    const double lam = f.op().eigenvalue(m);
    if (lam <= 0.0) continue;
    const double x = (t * lam) * (t * lam);
    s += std::norm(v) * (x / (1.0 + x));
  }
  return std::sqrt(s);
}

double interpolation_norm(std::span<const double> eigenvalues, std::span<const double> weights,
                          const InterpolationQuery& q) {
  q.validate();
  const double theta = q.theta;
  double lmin = 0.0;
  double lmax = 0.0;
  double total_weight = 0.0;
  for (std::size_t j = 0; j < eigenvalues.size(); ++j) {
    if (eigenvalues[j] <= 0.0 || weights[j] == 0.0) continue;
    lmin = lmin == 0.0 ? eigenvalues[j] : std::min(lmin, eigenvalues[j]);
    lmax = std::max(lmax, eigenvalues[j]);
    total_weight += weights[j];
  }
  if (total_weight == 0.0) return 0.0;

  const double I = i_theta(theta);
  const double a = 2.0 - 2.0 * theta;
  const double b = 2.0 * theta;
  const double s_lo = std::min(0.01, std::pow(kTailTarget * a * I, 1.0 / a));
  const double s_hi = std::max(100.0, std::pow(kTailTarget * b * I, -1.0 / b));
  const double t_min = q.t_min.value_or(s_lo / lmax);
  const double t_max = q.t_max.value_or(s_hi / lmin);
  if (!(t_min < t_max)) throw ConfigError("t_min must be < t_max");

  // Simpson in u = log t of t^{-2 theta} K(t)^2.
  const int n = q.points % 2 == 0 ? q.points : q.points + 1;
  const double u0 = std::log(t_min);
  const double h = (std::log(t_max) - u0) / n;
  double body = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double t = std::exp(u0 + h * i);
    double k2 = 0.0;
    for (std::size_t j = 0; j < eigenvalues.size(); ++j) {
      if (eigenvalues[j] <= 0.0) continue;
      const double x = (t * eigenvalues[j]) * (t * eigenvalues[j]);
      k2 += weights[j] * (x / (1.0 + x));
    }
    const double wi = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    body += wi * std::pow(t, -2.0 * theta) * k2;
  }
  body *= h / 3.0;

  double tails = 0.0;
  for (std::size_t j = 0; j < eigenvalues.size(); ++j) {
    if (eigenvalues[j] <= 0.0 || weights[j] == 0.0) continue;
    const double scale = std::pow(eigenvalues[j], 2.0 * theta) * weights[j];
    tails += scale * (lower_tail(t_min * eigenvalues[j], theta) + upper_tail(t_max * eigenvalues[j], theta));
  }
  const double total = body + tails;
  if (tails > kTailFraction * total) {
    std::ostringstream os;
    os << "interpolation window too narrow: analytic tails hold " << 100.0 * tails / total
       << "% of the integral (limit 1%); widen [t_min, t_max]";
    throw AccuracyError(os.str());
  }
  return std::sqrt(total);
}

double interpolation_norm(const SpectralField& f, const InterpolationQuery& q) {
  std::vector<double> lam;
  std::vector<double> w;
  for (const auto& [m, v] : f) {
    lam.push_back(f.op().eigenvalue(m));
    w.push_back(std::norm(v));
  }
  return interpolation_norm(lam, w, q);
}

double i_theta(double theta) {
  require_theta(theta);
  return kPi / (2.0 * std::sin(kPi * theta));
}

double i_theta_quadrature(double theta) {
  require_theta(theta);
  static boost::math::quadrature::exp_sinh<double> integrator;
  auto integrand = [theta](double s) { return std::pow(s, 1.0 - 2.0 * theta) / (1.0 + s * s); };
  return integrator.integrate(integrand, 0.0, std::numeric_limits<double>::infinity());
}

ReiterationReport reiteration_check(const SpectralField& f, double theta) {
  require_theta(theta);
  std::vector<double> sqrt_lam;
  std::vector<double> w_lower;
  std::vector<double> w_upper;
  for (const auto& [m, v] : f) {
    const double lam = f.op().eigenvalue(m);
    sqrt_lam.push_back(std::sqrt(lam));
    w_lower.push_back(std::norm(v));
    w_upper.push_back(lam * std::norm(v));  // coefficients of A^{1/2} f
  }
  const InterpolationQuery q{theta, std::nullopt, std::nullopt, 512};
  const double root_i = std::sqrt(i_theta(theta));
  const double lower = interpolation_norm(sqrt_lam, w_lower, q);
  const double upper = interpolation_norm(sqrt_lam, w_upper, q);
  ReiterationReport r;
  r.lower = NormReport::make("reiteration_H_DA1/2", {{"theta", theta}}, lower,
                             root_i * approx::fractional_norm(f, theta / 2.0));
  r.upper = NormReport::make("reiteration_DA1/2_DA", {{"theta", theta}}, upper,
                             root_i * approx::fractional_norm(f, (1.0 + theta) / 2.0));
  return r;
}

namespace {

// Quadrature node on one axis: position, weight, interpolation cell and the
// local coordinate inside that cell.
struct AxisNode {
  double x;
  double w;
  int cell;
  double t;
};

std::vector<AxisNode> graded_axis_rule(const GridField& g, int axis, int level) {
  using GL = boost::math::quadrature::gauss<double, 4>;
  const auto& absc = GL::abscissa();
  const auto& wts = GL::weights();
  std::vector<std::pair<double, double>> ref;  // nodes/weights on [-1, 1]
  for (std::size_t i = 0; i < absc.size(); ++i) {
    ref.emplace_back(-absc[i], wts[i]);
    ref.emplace_back(absc[i], wts[i]);
  }

  const int n = g.resolution(axis);
  const double L = g.domain().length(axis);
  const double h = L / (n - 1);
  std::vector<AxisNode> nodes;
  auto add_piece = [&](double a, double b, int cell) {
    const double x0 = g.coordinate(axis, cell);
    for (const auto& [s, w] : ref) {
      const double x = 0.5 * (a + b) + 0.5 * (b - a) * s;
      nodes.push_back({x, 0.5 * (b - a) * w, cell, (x - x0) / h});
    }
  };
  for (int cell = 0; cell < n - 1; ++cell) {
    const double x0 = g.coordinate(axis, cell);
    const double x1 = g.coordinate(axis, cell + 1);
    const bool left = cell == 0;
    const bool right = cell == n - 2;
    if (!left && !right) {
      add_piece(x0, x1, cell);
      continue;
    }
    for (int j = 0; j < level; ++j) {
      const double outer = h * std::ldexp(1.0, -j);
      const double inner = h * std::ldexp(1.0, -j - 1);
      if (left) {
        add_piece(inner, outer, cell);
      } else {
        add_piece(L - outer, L - inner, cell);
      }
    }
  }
  return nodes;
}

}  // namespace

H00Result h00_weighted_norm(const GridField& g, const BoundaryWeight& w, int levels) {
  if (g.domain().periodic()) throw ConfigError("weighted boundary norm needs an interval or box");
  if (levels < 4) throw ConfigError("at least four refinement levels are needed");
  for (int a = 0; a < g.dim(); ++a) {
    if (g.resolution(a) < 3) throw ConfigError("weighted boundary norm needs >= 3 points per axis");
  }
  const int d = g.dim();
  H00Result result;
  for (int level = 1; level <= levels; ++level) {
    std::vector<std::vector<AxisNode>> rules;
    for (int a = 0; a < d; ++a) rules.push_back(graded_axis_rule(g, a, level));
    std::array<std::size_t, 3> sizes{1, 1, 1};
    for (int a = 0; a < d; ++a) sizes[static_cast<std::size_t>(a)] = rules[static_cast<std::size_t>(a)].size();

    double sum = 0.0;
    std::array<std::size_t, 3> idx{0, 0, 0};
    const std::size_t total = sizes[0] * sizes[1] * sizes[2];
    for (std::size_t flat = 0; flat < total; ++flat) {
      std::size_t rem = flat;
      for (int a = d - 1; a >= 0; --a) {
        const auto aa = static_cast<std::size_t>(a);
        idx[aa] = rem % sizes[aa];
        rem /= sizes[aa];
      }
      Point x{0.0, 0.0, 0.0};
      double weight = 1.0;
      for (int a = 0; a < d; ++a) {
        const auto aa = static_cast<std::size_t>(a);
        const AxisNode& nd = rules[aa][idx[aa]];
        x[aa] = nd.x;
        weight *= nd.w;
      }
      // multilinear interpolation over the 2^d cell corners
      double mag2 = 0.0;
      for (int c = 0; c < g.components(); ++c) {
        cplx v{};
        for (int corner = 0; corner < (1 << d); ++corner) {
          double cw = 1.0;
          std::size_t pflat = 0;
          for (int a = 0; a < d; ++a) {
            const auto aa = static_cast<std::size_t>(a);
            const AxisNode& nd = rules[aa][idx[aa]];
            const int bit = (corner >> a) & 1;
            cw *= bit ? nd.t : 1.0 - nd.t;
            pflat = pflat * static_cast<std::size_t>(g.resolution(a)) +
                    static_cast<std::size_t>(nd.cell + bit);
          }
          v += cw * g.at(pflat, c);
        }
        mag2 += std::norm(v);
      }
      sum += weight * mag2 / w.rho(x);
    }
    result.refinements.push_back(sum);
  }

  const auto& r = result.refinements;
  const std::size_t n = r.size();
  const bool increasing = r[n - 1] > r[n - 2] && r[n - 2] > r[n - 3] && r[n - 3] > r[n - 4];
  const double change = std::abs(r[n - 1] - r[n - 2]) / std::max(std::abs(r[n - 1]), 1e-300);
  result.divergent = increasing && change > 0.02;
  return result;
}

}  // namespace spectral::interp
