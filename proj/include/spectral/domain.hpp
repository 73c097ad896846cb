#pragma once

#include <array>
#include <compare>
#include <complex>
#include <span>
#include <string>
#include <vector>

namespace spectral {

using cplx = std::complex<double>;
using Point = std::array<double, 3>;
using Vec3c = std::array<cplx, 3>;
using Vec3 = std::array<double, 3>;

enum class DomainKind { Interval, Box, Torus };

/// Geometry a spectrum lives on. Intervals and boxes carry Dirichlet
/// boundaries; tori are [0, 2pi)^d.
class DomainSpec {
 public:
  static DomainSpec interval(double length);
  static DomainSpec box(std::span<const double> lengths);
  static DomainSpec box(std::initializer_list<double> lengths);
  static DomainSpec torus(int dim);

  DomainKind kind() const { return kind_; }
  int dim() const { return dim_; }
  double length(int axis) const { return lengths_.at(static_cast<std::size_t>(axis)); }
  bool periodic() const { return kind_ == DomainKind::Torus; }
  double volume() const;
  std::string describe() const;

  bool operator==(const DomainSpec&) const = default;

 private:
  DomainSpec(DomainKind kind, int dim, std::array<double, 3> lengths)
      : kind_(kind), dim_(dim), lengths_(lengths) {}

  DomainKind kind_;
  int dim_;
  std::array<double, 3> lengths_;
};

/// Multi-index of an eigenfunction. `pol` selects the vector direction:
/// 0 for scalar operators, the Cartesian component 1..d for the vector
/// torus Laplacian, and the divergence-free polarization 1..d-1 for the
/// torus Stokes operator (1..d Cartesian directions at k = 0).
struct ModeIndex {
  int dim = 1;
  std::array<int, 3> k{0, 0, 0};
  int pol = 0;

  static ModeIndex scalar(std::initializer_list<int> ks);
  static ModeIndex vector(std::initializer_list<int> ks, int pol);

  int max_abs() const;
  long norm_sq() const;
  ModeIndex negated() const;

  bool operator==(const ModeIndex&) const = default;
  std::strong_ordering operator<=>(const ModeIndex& o) const;
};

enum class OperatorKind { DirichletLaplacian, TorusLaplacian, TorusStokes };

class OperatorSpec {
 public:
  static OperatorSpec dirichlet_laplacian(const DomainSpec& domain);
  /// `components` is 1 (scalar) or d (vector Laplacian acting per component).
  static OperatorSpec torus_laplacian(const DomainSpec& domain, int components = 1);
  static OperatorSpec torus_stokes(const DomainSpec& domain);

  OperatorKind kind() const { return kind_; }
  const DomainSpec& domain() const { return domain_; }
  int dim() const { return domain_.dim(); }
  /// Number of value components of an eigenfunction (1 or d).
  int components() const { return components_; }
  bool vector_valued() const { return components_ > 1; }
  std::string name() const;

  /// Per-axis wavenumber: pi*k/L for Dirichlet axes, k on the torus.
  double axis_wavenumber(int axis, int k) const;
  double eigenvalue(const ModeIndex& m) const;
  /// Smallest strictly positive eigenvalue (lambda_1).
  double first_positive_eigenvalue() const;
  /// Throws ConfigError when `m` is not an eigenfunction index of this operator.
  void validate(const ModeIndex& m) const;
  bool is_valid(const ModeIndex& m) const;

  /// Value of the L2-normalized eigenfunction at `x` (components beyond
  /// `components()` are zero).
  Vec3c evaluate(const ModeIndex& m, const Point& x) const;
  /// Real direction vector of a vector eigenfunction (unit length).
  Vec3 direction(const ModeIndex& m) const;

  bool operator==(const OperatorSpec&) const = default;

 private:
  OperatorSpec(OperatorKind kind, DomainSpec domain, int components)
      : kind_(kind), domain_(domain), components_(components) {}

  OperatorKind kind_;
  DomainSpec domain_;
  int components_;
};

/// Orthonormal basis of the plane orthogonal to k (k != 0), chosen
/// deterministically: 2D rotates k by 90 degrees, 3D orthogonalizes e_z
/// against k (e_x when k is parallel to e_z) and completes with k x e_1.
std::array<Vec3, 2> stokes_polarization_basis(int dim, const std::array<int, 3>& k);

struct EigenPair {
  OperatorSpec op;
  ModeIndex index;
  double eigenvalue;

  Vec3c value_at(const Point& x) const { return op.evaluate(index, x); }
};

inline constexpr std::size_t kDefaultModeCap = 1'000'000;

/// All eigenpairs with eigenvalue <= lambda_max, sorted by eigenvalue with
/// ModeIndex order breaking ties.
std::vector<EigenPair> enumerate_modes(const OperatorSpec& op, double lambda_max,
                                       std::size_t mode_cap = kDefaultModeCap);

}  // namespace spectral
