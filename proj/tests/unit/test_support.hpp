#pragma once

#include <random>
#include <vector>

#include "spectral/domain.hpp"
#include "spectral/field.hpp"
#include "spectral/leray.hpp"

namespace spectral::testing {

// Random field over the first `n_modes` enumerated modes with lambda > 0.
// Torus fields are made real (conjugate-symmetric).
inline SpectralField random_field(const OperatorSpec& op, std::mt19937_64& rng, int n_modes,
                                  double lambda_max = 64.0) {
  std::normal_distribution<double> nd(0.0, 1.0);
  SpectralField f(op);
  auto modes = enumerate_modes(op, lambda_max);
  std::vector<ModeIndex> pick;
  for (const auto& ep : modes) {
    if (ep.eigenvalue > 0.0) pick.push_back(ep.index);
  }
  std::shuffle(pick.begin(), pick.end(), rng);
  int taken = 0;
  for (const auto& m : pick) {
    if (taken >= n_modes) break;
    if (f.get(m) != cplx{}) continue;
    const cplx v(nd(rng), op.domain().periodic() ? nd(rng) : 0.0);
    f.set(m, v);
    if (op.domain().periodic() && op.kind() != OperatorKind::TorusStokes) {
      f.set(m.negated(), std::conj(v));
    }
    ++taken;
  }
  return f;
}

// Real divergence-free field: random real Cartesian field, Leray-projected.
inline SpectralField random_divergence_free(int dim, std::mt19937_64& rng, int n_modes,
                                            double lambda_max = 30.0) {
  const auto vec = OperatorSpec::torus_laplacian(DomainSpec::torus(dim), dim);
  SpectralField cart = random_field(vec, rng, n_modes, lambda_max);
  return leray_project(cart);
}

}  // namespace spectral::testing
