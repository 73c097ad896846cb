#include "spectral/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spectral/error.hpp"
#include "spectral/leray.hpp"

namespace spectral {

void SpectralField::set(const ModeIndex& m, cplx value) {
  op_.validate(m);
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    throw ConfigError("spectral coefficients must be finite");
  }
  if (value == cplx{}) {
    coeffs_.erase(m);
  } else {
    coeffs_[m] = value;
  }
}

void SpectralField::add(const ModeIndex& m, cplx value) { set(m, get(m) + value); }

cplx SpectralField::get(const ModeIndex& m) const {
  auto it = coeffs_.find(m);
  return it == coeffs_.end() ? cplx{} : it->second;
}

int SpectralField::max_axis_index() const {
  int r = 0;
  for (const auto& [m, v] : coeffs_) r = std::max(r, m.max_abs());
  return r;
}

double SpectralField::max_eigenvalue() const {
  double r = 0.0;
  for (const auto& [m, v] : coeffs_) r = std::max(r, op_.eigenvalue(m));
  return r;
}

double SpectralField::min_positive_eigenvalue() const {
  double r = 0.0;
  for (const auto& [m, v] : coeffs_) {
    const double lam = op_.eigenvalue(m);
    if (lam > 0.0 && (r == 0.0 || lam < r)) r = lam;
  }
  return r;
}

void SpectralField::require_same_op(const SpectralField& o) const {
  if (!(op_ == o.op_)) throw ConfigError("field arithmetic requires a common operator");
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  require_same_op(o);
  for (const auto& [m, v] : o.coeffs_) add(m, v);
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  require_same_op(o);
  for (const auto& [m, v] : o.coeffs_) add(m, -v);
  return *this;
}

SpectralField& SpectralField::operator*=(cplx s) {
  if (s == cplx{}) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [m, v] : coeffs_) v *= s;
  return *this;
}

double coefficient_l2_norm(const SpectralField& f) {
  double s = 0.0;
  for (const auto& [m, v] : f) s += std::norm(v);
  return std::sqrt(s);
}

double max_coefficient_difference(const SpectralField& f, const SpectralField& g) {
  if (!(f.op() == g.op())) throw ConfigError("fields live on different operators");
  double r = 0.0;
  for (const auto& [m, v] : f) r = std::max(r, std::abs(v - g.get(m)));
  for (const auto& [m, v] : g) r = std::max(r, std::abs(v - f.get(m)));
  return r;
}

bool is_conjugate_symmetric(const SpectralField& f, double tol) {
  if (!f.op().domain().periodic()) return true;
  const SpectralField cart = f.op().kind() == OperatorKind::TorusStokes ? to_cartesian(f) : f;
  for (const auto& [m, v] : cart) {
    if (std::abs(cart.get(m.negated()) - std::conj(v)) > tol) return false;
  }
  return true;
}

GridField::GridField(DomainSpec domain, std::array<int, 3> resolution, int components)
    : domain_(domain), resolution_{1, 1, 1}, components_(components), num_points_(1) {
  if (components < 1 || components > 3) throw ConfigError("grid components must be 1..3");
  for (int i = 0; i < domain_.dim(); ++i) {
    const auto ii = static_cast<std::size_t>(i);
    if (resolution[ii] < 2) throw ConfigError("grid resolution must be >= 2 per axis");
    resolution_[ii] = resolution[ii];
    num_points_ *= static_cast<std::size_t>(resolution[ii]);
  }
  values_.assign(num_points_ * static_cast<std::size_t>(components_), cplx{});
}

double GridField::coordinate(int axis, int i) const {
  const int n = resolution(axis);
  if (domain_.periodic()) return 2.0 * std::numbers::pi * i / n;
  if (i == n - 1) return domain_.length(axis);
  return domain_.length(axis) * i / (n - 1);
}

std::array<int, 3> GridField::unflatten(std::size_t flat) const {
  std::array<int, 3> idx{0, 0, 0};
  for (int a = dim() - 1; a >= 0; --a) {
    const auto n = static_cast<std::size_t>(resolution(a));
    idx[static_cast<std::size_t>(a)] = static_cast<int>(flat % n);
    flat /= n;
  }
  return idx;
}

Point GridField::point(std::size_t flat) const {
  const auto idx = unflatten(flat);
  Point x{0.0, 0.0, 0.0};
  for (int a = 0; a < dim(); ++a) {
    x[static_cast<std::size_t>(a)] = coordinate(a, idx[static_cast<std::size_t>(a)]);
  }
  return x;
}

double GridField::magnitude(std::size_t point) const {
  double s = 0.0;
  for (int c = 0; c < components_; ++c) s += std::norm(at(point, c));
  return std::sqrt(s);
}

std::vector<double> axis_quadrature_weights(const DomainSpec& domain, int axis, int n) {
  if (n < 2) throw ConfigError("quadrature needs at least two points");
  std::vector<double> w(static_cast<std::size_t>(n), 0.0);
  if (domain.periodic()) {
    std::fill(w.begin(), w.end(), domain.length(axis) / n);
    return w;
  }
  const double h = domain.length(axis) / (n - 1);
  const int intervals = n - 1;
  if (intervals == 1) {
    w[0] = w[1] = h / 2.0;
    return w;
  }
  // Simpson panels over an even number of intervals, then one 3/8 panel if
  // an odd interval count remains.
  const int simpson_intervals = intervals % 2 == 0 ? intervals : intervals - 3;
  for (int i = 0; i < simpson_intervals; i += 2) {
    const auto ii = static_cast<std::size_t>(i);
    w[ii] += h / 3.0;
    w[ii + 1] += 4.0 * h / 3.0;
    w[ii + 2] += h / 3.0;
  }
  if (simpson_intervals != intervals) {
    const auto s = static_cast<std::size_t>(simpson_intervals);
    w[s] += 3.0 * h / 8.0;
    w[s + 1] += 9.0 * h / 8.0;
    w[s + 2] += 9.0 * h / 8.0;
    w[s + 3] += 3.0 * h / 8.0;
  }
  return w;
}

std::array<int, 3> default_resolution(const SpectralField& f, int oversample) {
  std::array<int, 3> per_axis{0, 0, 0};
  for (const auto& [m, v] : f) {
    for (int a = 0; a < m.dim; ++a) {
      const auto aa = static_cast<std::size_t>(a);
      per_axis[aa] = std::max(per_axis[aa], std::abs(m.k[aa]));
    }
  }
  std::array<int, 3> res{1, 1, 1};
  for (int a = 0; a < f.op().dim(); ++a) {
    const int k = std::max(per_axis[static_cast<std::size_t>(a)], 1);
    int n = std::max(oversample * k, 2 * k + 1);
    if (!f.op().domain().periodic() && n % 2 == 0) ++n;
    res[static_cast<std::size_t>(a)] = n;
  }
  return res;
}

}  // namespace spectral
