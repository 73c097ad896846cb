#include "spectral/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spectral/error.hpp"

namespace spectral {

namespace {

void require_length(double l) {
  if (!(l > 0.0) || !std::isfinite(l)) {
    throw ConfigError("domain lengths must be finite and strictly positive");
  }
}

}  // namespace

DomainSpec DomainSpec::interval(double length) {
  require_length(length);
  return DomainSpec(DomainKind::Interval, 1, {length, 0.0, 0.0});
}

DomainSpec DomainSpec::box(std::span<const double> lengths) {
  if (lengths.empty() || lengths.size() > 3) {
    throw ConfigError("box dimension must be 1, 2 or 3");
  }
  std::array<double, 3> ls{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    require_length(lengths[i]);
    ls[i] = lengths[i];
  }
  return DomainSpec(DomainKind::Box, static_cast<int>(lengths.size()), ls);
}

DomainSpec DomainSpec::box(std::initializer_list<double> lengths) {
  return box(std::span<const double>(lengths.begin(), lengths.size()));
}

DomainSpec DomainSpec::torus(int dim) {
  if (dim < 1 || dim > 3) throw ConfigError("torus dimension must be 1, 2 or 3");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::array<double, 3> ls{0.0, 0.0, 0.0};
  for (int i = 0; i < dim; ++i) ls[static_cast<std::size_t>(i)] = two_pi;
  return DomainSpec(DomainKind::Torus, dim, ls);
}

double DomainSpec::volume() const {
  double v = 1.0;
  for (int i = 0; i < dim_; ++i) v *= length(i);
  return v;
}

std::string DomainSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (kind_) {
    case DomainKind::Interval: os << "interval(L=" << length(0) << ")"; break;
    case DomainKind::Box:
      os << "box(";
      for (int i = 0; i < dim_; ++i) os << (i ? "," : "") << length(i);
      os << ")";
      break;
    case DomainKind::Torus: os << "torus(d=" << dim_ << ")"; break;
  }
  return os.str();
}

ModeIndex ModeIndex::scalar(std::initializer_list<int> ks) { return vector(ks, 0); }

ModeIndex ModeIndex::vector(std::initializer_list<int> ks, int pol) {
  if (ks.size() == 0 || ks.size() > 3) throw ConfigError("mode index dimension must be 1..3");
  ModeIndex m;
  m.dim = static_cast<int>(ks.size());
  std::copy(ks.begin(), ks.end(), m.k.begin());
  m.pol = pol;
  return m;
}

int ModeIndex::max_abs() const {
  int r = 0;
  for (int i = 0; i < dim; ++i) r = std::max(r, std::abs(k[static_cast<std::size_t>(i)]));
  return r;
}

long ModeIndex::norm_sq() const {
  long s = 0;
  for (int i = 0; i < dim; ++i) {
    const long ki = k[static_cast<std::size_t>(i)];
    s += ki * ki;
  }
  return s;
}

ModeIndex ModeIndex::negated() const {
  ModeIndex m = *this;
  for (int i = 0; i < dim; ++i) m.k[static_cast<std::size_t>(i)] = -k[static_cast<std::size_t>(i)];
  return m;
}

std::strong_ordering ModeIndex::operator<=>(const ModeIndex& o) const {
  if (auto c = dim <=> o.dim; c != 0) return c;
  for (std::size_t i = 0; i < 3; ++i) {
    if (auto c = k[i] <=> o.k[i]; c != 0) return c;
  }
  return pol <=> o.pol;
}

OperatorSpec OperatorSpec::dirichlet_laplacian(const DomainSpec& domain) {
  if (domain.periodic()) throw ConfigError("Dirichlet Laplacian requires an interval or box");
  return OperatorSpec(OperatorKind::DirichletLaplacian, domain, 1);
}

OperatorSpec OperatorSpec::torus_laplacian(const DomainSpec& domain, int components) {
  if (!domain.periodic()) throw ConfigError("torus Laplacian requires a torus domain");
  if (components != 1 && components != domain.dim()) {
    throw ConfigError("torus Laplacian components must be 1 or the dimension");
  }
  return OperatorSpec(OperatorKind::TorusLaplacian, domain, components);
}

OperatorSpec OperatorSpec::torus_stokes(const DomainSpec& domain) {
  if (!domain.periodic()) throw ConfigError("torus Stokes operator requires a torus domain");
  if (domain.dim() < 2) throw ConfigError("torus Stokes operator requires dimension >= 2");
  return OperatorSpec(OperatorKind::TorusStokes, domain, domain.dim());
}

std::string OperatorSpec::name() const {
  switch (kind_) {
    case OperatorKind::DirichletLaplacian: return "dirichlet-laplacian/" + domain_.describe();
    case OperatorKind::TorusLaplacian:
      return (components_ > 1 ? "vector-torus-laplacian/" : "torus-laplacian/") +
             domain_.describe();
    case OperatorKind::TorusStokes: return "torus-stokes/" + domain_.describe();
  }
  return "unknown";
}

double OperatorSpec::axis_wavenumber(int axis, int k) const {
  if (kind_ == OperatorKind::DirichletLaplacian) {
    return std::numbers::pi / domain_.length(axis) * k;
  }
  return static_cast<double>(k);
}

double OperatorSpec::eigenvalue(const ModeIndex& m) const {
  if (kind_ != OperatorKind::DirichletLaplacian) return static_cast<double>(m.norm_sq());
  double lam = 0.0;
  for (int i = 0; i < dim(); ++i) {
    const double f = std::numbers::pi / domain_.length(i);
    const double ki = m.k[static_cast<std::size_t>(i)];
    lam += (f * f) * (ki * ki);
  }
  return lam;
}

double OperatorSpec::first_positive_eigenvalue() const {
  if (kind_ != OperatorKind::DirichletLaplacian) return 1.0;
  ModeIndex m;
  m.dim = dim();
  for (int i = 0; i < dim(); ++i) m.k[static_cast<std::size_t>(i)] = 1;
  return eigenvalue(m);
}

bool OperatorSpec::is_valid(const ModeIndex& m) const {
  if (m.dim != dim()) return false;
  for (int i = m.dim; i < 3; ++i) {
    if (m.k[static_cast<std::size_t>(i)] != 0) return false;
  }
  switch (kind_) {
    case OperatorKind::DirichletLaplacian:
      for (int i = 0; i < m.dim; ++i) {
        if (m.k[static_cast<std::size_t>(i)] < 1) return false;
      }
      return m.pol == 0;
    case OperatorKind::TorusLaplacian:
      return components_ == 1 ? m.pol == 0 : (m.pol >= 1 && m.pol <= components_);
    case OperatorKind::TorusStokes:
      if (m.norm_sq() == 0) return m.pol >= 1 && m.pol <= dim();
      return m.pol >= 1 && m.pol <= dim() - 1;
  }
  return false;
}

void OperatorSpec::validate(const ModeIndex& m) const {
  if (!is_valid(m)) {
    std::ostringstream os;
    os << "mode (";
    for (int i = 0; i < m.dim; ++i) os << (i ? "," : "") << m.k[static_cast<std::size_t>(i)];
    os << "; pol " << m.pol << ") is not an eigenfunction index of " << name();
    throw ConfigError(os.str());
  }
}

std::array<Vec3, 2> stokes_polarization_basis(int dim, const std::array<int, 3>& k) {
  Vec3 kh{static_cast<double>(k[0]), static_cast<double>(k[1]),
          dim == 3 ? static_cast<double>(k[2]) : 0.0};
  const double kn = std::sqrt(kh[0] * kh[0] + kh[1] * kh[1] + kh[2] * kh[2]);
  if (kn == 0.0) throw ConfigError("polarization basis undefined at k = 0");
  for (double& c : kh) c /= kn;
  if (dim == 2) return {Vec3{-kh[1], kh[0], 0.0}, Vec3{0.0, 0.0, 0.0}};

  Vec3 r = (k[0] == 0 && k[1] == 0) ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 0.0, 1.0};
  const double rk = r[0] * kh[0] + r[1] * kh[1] + r[2] * kh[2];
  Vec3 e1{r[0] - rk * kh[0], r[1] - rk * kh[1], r[2] - rk * kh[2]};
  const double n1 = std::sqrt(e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]);
  for (double& c : e1) c /= n1;
  Vec3 e2{kh[1] * e1[2] - kh[2] * e1[1], kh[2] * e1[0] - kh[0] * e1[2],
          kh[0] * e1[1] - kh[1] * e1[0]};
  return {e1, e2};
}

Vec3 OperatorSpec::direction(const ModeIndex& m) const {
  Vec3 e{0.0, 0.0, 0.0};
  if (components_ == 1) {
    e[0] = 1.0;
    return e;
  }
  if (kind_ == OperatorKind::TorusStokes && m.norm_sq() != 0) {
    return stokes_polarization_basis(dim(), m.k)[static_cast<std::size_t>(m.pol - 1)];
  }
  e[static_cast<std::size_t>(m.pol - 1)] = 1.0;
  return e;
}

Vec3c OperatorSpec::evaluate(const ModeIndex& m, const Point& x) const {
  validate(m);
  Vec3c out{};
  if (kind_ == OperatorKind::DirichletLaplacian) {
    double v = 1.0;
    for (int i = 0; i < dim(); ++i) {
      const double L = domain_.length(i);
      const double xi = x[static_cast<std::size_t>(i)];
      if (xi == 0.0 || xi == L) return out;
      v *= std::sqrt(2.0 / L) * std::sin(std::numbers::pi * m.k[static_cast<std::size_t>(i)] * xi / L);
    }
    out[0] = v;
    return out;
  }
  double phase = 0.0;
  for (int i = 0; i < dim(); ++i) {
    phase += m.k[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
  }
  const cplx w = std::polar(std::pow(2.0 * std::numbers::pi, -0.5 * dim()), phase);
  const Vec3 e = direction(m);
  for (int c = 0; c < components_; ++c) out[static_cast<std::size_t>(c)] = e[static_cast<std::size_t>(c)] * w;
  return out;
}

std::vector<EigenPair> enumerate_modes(const OperatorSpec& op, double lambda_max,
                                       std::size_t mode_cap) {
  if (!(lambda_max > 0.0) || !std::isfinite(lambda_max)) {
    throw ConfigError("lambda_max must be finite and positive");
  }
  const int d = op.dim();
  std::array<int, 3> lo{0, 0, 0};
  std::array<int, 3> hi{0, 0, 0};
  for (int i = 0; i < d; ++i) {
    const double w1 = op.axis_wavenumber(i, 1);
    const double bound = std::floor(std::sqrt(lambda_max) / w1) + 1.0;
    if (bound > 1e9) throw ResourceLimitError("mode count exceeds cap");
    const int b = static_cast<int>(bound);
    const auto ii = static_cast<std::size_t>(i);
    lo[ii] = op.kind() == OperatorKind::DirichletLaplacian ? 1 : -b;
    hi[ii] = b;
  }

  std::vector<int> pols;
  switch (op.kind()) {
    case OperatorKind::DirichletLaplacian: pols = {0}; break;
    case OperatorKind::TorusLaplacian:
      if (op.components() == 1) {
        pols = {0};
      } else {
        for (int p = 1; p <= op.components(); ++p) pols.push_back(p);
      }
      break;
    case OperatorKind::TorusStokes:
      for (int p = 1; p <= d; ++p) pols.push_back(p);
      break;
  }

  std::vector<EigenPair> out;
  ModeIndex m;
  m.dim = d;
  for (int a = lo[0]; a <= hi[0]; ++a) {
    for (int b = lo[1]; b <= hi[1]; ++b) {
      for (int c = lo[2]; c <= hi[2]; ++c) {
        m.k = {a, b, c};
        const double lam = op.eigenvalue(m);
        if (lam > lambda_max) continue;
        for (int p : pols) {
          m.pol = p;
          if (!op.is_valid(m)) continue;
          if (out.size() >= mode_cap) {
            throw ResourceLimitError("mode count exceeds cap of " + std::to_string(mode_cap) +
                                     " for lambda_max");
          }
          out.push_back(EigenPair{op, m, lam});
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const EigenPair& x, const EigenPair& y) {
    if (x.eigenvalue != y.eigenvalue) return x.eigenvalue < y.eigenvalue;
    return x.index < y.index;
  });
  return out;
}

}  // namespace spectral
