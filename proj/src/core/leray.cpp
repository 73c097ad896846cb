#include "spectral/leray.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "spectral/error.hpp"

namespace spectral {

namespace {

// Groups Cartesian component coefficients of a vector torus field by k.
std::map<std::array<int, 3>, Vec3c> cartesian_by_wavevector(const SpectralField& f) {
  std::map<std::array<int, 3>, Vec3c> out;
  for (const auto& [m, v] : f) {
    out[m.k][static_cast<std::size_t>(m.pol - 1)] += v;
  }
  return out;
}

}  // namespace

SpectralField to_cartesian(const SpectralField& stokes) {
  const OperatorSpec& op = stokes.op();
  if (op.kind() != OperatorKind::TorusStokes) throw ConfigError("to_cartesian expects a Stokes field");
  SpectralField out(OperatorSpec::torus_laplacian(op.domain(), op.dim()));
  for (const auto& [m, v] : stokes) {
    const Vec3 e = op.direction(m);
    for (int c = 0; c < op.dim(); ++c) {
      const double ec = e[static_cast<std::size_t>(c)];
      if (ec == 0.0) continue;
      ModeIndex mc = m;
      mc.pol = c + 1;
      out.add(mc, ec * v);
    }
  }
  return out;
}

SpectralField leray_project(const SpectralField& f) {
  const OperatorSpec& op = f.op();
  if (op.kind() == OperatorKind::TorusStokes) return f;
  if (op.kind() != OperatorKind::TorusLaplacian || !op.vector_valued() || op.dim() < 2) {
    throw ConfigError("leray_project expects a vector-valued torus field in dimension >= 2");
  }
  const int d = op.dim();
  SpectralField out(OperatorSpec::torus_stokes(op.domain()));
  for (const auto& [k, u] : cartesian_by_wavevector(f)) {
    ModeIndex m;
    m.dim = d;
    m.k = k;
    if (m.norm_sq() == 0) {
      for (int c = 0; c < d; ++c) {
        m.pol = c + 1;
        out.set(m, u[static_cast<std::size_t>(c)]);
      }
      continue;
    }
    const auto basis = stokes_polarization_basis(d, k);
    for (int p = 0; p < d - 1; ++p) {
      const Vec3& e = basis[static_cast<std::size_t>(p)];
      cplx a{};
      for (int c = 0; c < d; ++c) a += e[static_cast<std::size_t>(c)] * u[static_cast<std::size_t>(c)];
      m.pol = p + 1;
      out.set(m, a);
    }
  }
  return out;
}

double divergence_residual(const SpectralField& f) {
  const SpectralField cart = f.op().kind() == OperatorKind::TorusStokes ? to_cartesian(f) : f;
  if (!cart.op().vector_valued()) throw ConfigError("divergence needs a vector field");
  double r = 0.0;
  for (const auto& [k, u] : cartesian_by_wavevector(cart)) {
    cplx div{};
    for (int c = 0; c < cart.op().dim(); ++c) {
      div += static_cast<double>(k[static_cast<std::size_t>(c)]) * u[static_cast<std::size_t>(c)];
    }
    r = std::max(r, std::abs(div));
  }
  return r;
}

cplx coefficient_inner_product(const SpectralField& f, const SpectralField& g) {
  const SpectralField a = f.op().kind() == OperatorKind::TorusStokes ? to_cartesian(f) : f;
  const SpectralField b = g.op().kind() == OperatorKind::TorusStokes ? to_cartesian(g) : g;
  if (!(a.op() == b.op())) throw ConfigError("inner product of fields on different operators");
  cplx s{};
  for (const auto& [m, v] : a) s += std::conj(v) * b.get(m);
  return s;
}

}  // namespace spectral
