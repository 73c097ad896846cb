#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spectral/field.hpp"
#include "spectral/report.hpp"

namespace spectral::interp {

/// Real-interpolation query for the pair (H, D(A)).
///
/// The t-integral runs over [t_min, t_max] with `points` log-spaced Simpson
/// intervals; contributions outside the window are added analytically. When
/// t_min/t_max are not given, the window is chosen from the field's spectrum
/// so that each tail holds at most ~0.5% of any single mode's integral.
struct InterpolationQuery {
  double theta = 0.5;
  std::optional<double> t_min;
  std::optional<double> t_max;
  int points = 512;

  void validate() const;
};

/// Positive weight comparable to the distance to the boundary.
struct BoundaryWeight {
  std::string name;
  std::function<double(const Point&)> rho;

  /// x(L-x)/L on intervals, product of the per-axis weights on boxes.
  static BoundaryWeight distance_like(const DomainSpec& domain);
};

/// K(f,t) = (sum t^2 lambda^2 |u|^2 / (1 + t^2 lambda^2))^{1/2}, the
/// minimum over splittings f = x + y of (||x||^2 + t^2 ||A y||^2)^{1/2}.
double k_functional(const SpectralField& f, double t);

/// (integral_0^inf t^{-2 theta} K(f,t)^2 dt/t)^{1/2}.
/// Throws AccuracyError when the analytic tails exceed 1% of the total.
double interpolation_norm(const SpectralField& f, const InterpolationQuery& q);

/// Same computation on an explicit spectrum (eigenvalue, |coefficient|^2).
double interpolation_norm(std::span<const double> eigenvalues, std::span<const double> weights,
                          const InterpolationQuery& q);

/// pi / (2 sin(pi theta)) = integral_0^inf s^{1-2 theta} / (1 + s^2) ds.
double i_theta(double theta);

/// Numerical evaluation of the same integral (exp-sinh quadrature).
double i_theta_quadrature(double theta);

struct ReiterationReport {
  NormReport lower;  // (H, D(A^{1/2}))_theta vs D(A^{theta/2})
  NormReport upper;  // (D(A^{1/2}), D(A))_theta vs D(A^{(1+theta)/2})
};

/// Interpolates with the square-root spectrum and compares with
/// sqrt(I(theta)) times the matching fractional norm.
ReiterationReport reiteration_check(const SpectralField& f, double theta);

struct H00Result {
  std::vector<double> refinements;  // weighted integral per refinement level
  bool divergent = false;
  double value() const { return refinements.empty() ? 0.0 : refinements.back(); }
};

inline constexpr int kDefaultH00Levels = 12;

/// integral of |g|^2 / rho over the domain using the multilinear
/// interpolant of the samples. Level l excludes a boundary layer of width
/// h 2^-l and grades the remaining boundary cell geometrically; the
/// divergence flag is raised when the last two levels differ by more than
/// 2% and the last four are strictly increasing.
H00Result h00_weighted_norm(const GridField& g, const BoundaryWeight& w,
                            int levels = kDefaultH00Levels);

}  // namespace spectral::interp
