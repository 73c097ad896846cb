#pragma once

#include <array>
#include <complex>
#include <map>
#include <vector>

#include "spectral/domain.hpp"

namespace spectral {

/// A function given by finitely many eigenbasis coefficients.
///
/// Coefficients are taken against the L2-orthonormal eigenfunctions of the
/// operator, so the coefficient l2 sum is the squared L2 norm. Zero
/// coefficients are not stored.
class SpectralField {
 public:
  using Map = std::map<ModeIndex, cplx>;

  explicit SpectralField(OperatorSpec op) : op_(std::move(op)) {}

  const OperatorSpec& op() const { return op_; }
  const Map& coefficients() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }
  bool empty() const { return coeffs_.empty(); }

  /// Sets a coefficient; a zero value erases the entry.
  void set(const ModeIndex& m, cplx value);
  void add(const ModeIndex& m, cplx value);
  cplx get(const ModeIndex& m) const;

  /// Largest |k_i| over stored modes and axes (0 for an empty field).
  int max_axis_index() const;
  double max_eigenvalue() const;
  /// Smallest strictly positive eigenvalue among stored modes (0 if none).
  double min_positive_eigenvalue() const;

  Map::const_iterator begin() const { return coeffs_.begin(); }
  Map::const_iterator end() const { return coeffs_.end(); }

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(cplx s);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(cplx s, SpectralField a) { return a *= s; }

 private:
  void require_same_op(const SpectralField& o) const;

  OperatorSpec op_;
  Map coeffs_;
};

/// Plain l2 norm of the coefficient vector.
double coefficient_l2_norm(const SpectralField& f);

/// Max over modes of |f_k - g_k| (fields must share an operator).
double max_coefficient_difference(const SpectralField& f, const SpectralField& g);

/// Torus fields representing real functions satisfy c(-k) = conj(c(k)) in
/// Cartesian components.
bool is_conjugate_symmetric(const SpectralField& f, double tol = 1e-12);

/// Samples of a (possibly vector-valued) function on a tensor grid.
///
/// Dirichlet axes use N uniform points including both endpoints; torus axes
/// use N uniform points x_i = 2*pi*i/N. Values are stored point-major with
/// `components` entries per point; points are row-major with axis 0 slowest.
class GridField {
 public:
  GridField(DomainSpec domain, std::array<int, 3> resolution, int components);

  const DomainSpec& domain() const { return domain_; }
  int dim() const { return domain_.dim(); }
  int components() const { return components_; }
  int resolution(int axis) const { return resolution_.at(static_cast<std::size_t>(axis)); }
  const std::array<int, 3>& resolution() const { return resolution_; }
  std::size_t num_points() const { return num_points_; }

  double coordinate(int axis, int i) const;
  Point point(std::size_t flat) const;
  std::array<int, 3> unflatten(std::size_t flat) const;

  cplx& at(std::size_t point, int component) {
    return values_[point * static_cast<std::size_t>(components_) + static_cast<std::size_t>(component)];
  }
  cplx at(std::size_t point, int component) const {
    return values_[point * static_cast<std::size_t>(components_) + static_cast<std::size_t>(component)];
  }
  std::vector<cplx>& values() { return values_; }
  const std::vector<cplx>& values() const { return values_; }

  /// Euclidean magnitude of the value at a point.
  double magnitude(std::size_t point) const;

 private:
  DomainSpec domain_;
  std::array<int, 3> resolution_;
  int components_;
  std::size_t num_points_;
  std::vector<cplx> values_;
};

/// One-dimensional quadrature weights for a grid axis: uniform weights on
/// torus axes, composite Simpson (3/8 rule on a trailing odd panel) on
/// Dirichlet axes.
std::vector<double> axis_quadrature_weights(const DomainSpec& domain, int axis, int n);

/// Per-axis grid resolution used when none is given: 4x the largest index,
/// at least the Nyquist count, odd on Dirichlet axes.
std::array<int, 3> default_resolution(const SpectralField& f, int oversample = 4);

}  // namespace spectral
