#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "spectral/approx.hpp"
#include "spectral/cbf.hpp"
#include "spectral/error.hpp"
#include "spectral/leray.hpp"
#include "spectral/transforms.hpp"

using namespace spectral;
using namespace spectral::cbf;

namespace {
constexpr double kPi = std::numbers::pi;

double energy(const CBFState& s) { return std::pow(coefficient_l2_norm(s.u), 2.0); }

CBFParams params(int dim, int N, double beta, double dt, double T) {
  CBFParams p;
  p.dim = dim;
  p.N = N;
  p.beta = beta;
  p.dt = dt;
  p.T = T;
  return p;
}
}  // namespace

TEST_CASE("parameter and state validation") {
  CBFParams p;
  p.N = 63;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p.N = 64;
  p.dt = 0.3;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p.dt = 1e-3;
  p.snapshot_every = 7;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p.snapshot_every = 10;
  CHECK_NOTHROW(p.validate());
  CHECK(p.dealias_cutoff() == 21);
  p.beta = 1.0;
  CHECK(p.dealias_cutoff() == 15);
  p.absorption_path = false;
  CHECK_THROWS_AS(p.validate(), ConfigError);

  const auto big = random_smooth_state(2, 3, 1);
  CHECK_THROWS_AS(cbf_rhs(big, params(2, 8, 0.0, 1e-3, 1.0)), AliasingError);
  CHECK_THROWS_AS(cbf_rhs(big, params(3, 64, 0.0, 1e-3, 1.0)), ConfigError);
}

TEST_CASE("rhs examples") {
  const auto p = params(2, 32, 0.0, 1e-3, 1.0);
  CHECK(cbf_rhs(zero_state(2), p).empty());

  const auto tg = taylor_green();
  CHECK(tg.u.size() == 4);
  CHECK(energy(tg) == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-14));  // integral of sin^2 cos^2 + cos^2 sin^2
  const auto rhs = cbf_rhs(tg, p);
  CHECK(max_coefficient_difference(rhs, cplx(-2.0 * p.mu) * tg.u) < 1e-13);

  for (int dim : {2, 3}) {
    for (double beta : {0.0, 1.0}) {
      const auto s = random_smooth_state(dim, 3, 17 + dim, 2.0);
      const auto r = cbf_rhs(s, params(dim, 16, beta, 1e-3, 1.0));
      CHECK(divergence_residual(to_cartesian(r)) < 1e-13);
      CHECK(is_conjugate_symmetric(r, 1e-12));
      for (const auto& [m, v] : r) CHECK(m.norm_sq() > 0);
    }
  }
}

TEST_CASE("rhs against a direct grid evaluation") {
  // oracle: evaluate (u.grad)u + beta|u|^2 u by synthesis on a fine grid,
  // project with analyze + Leray, compare with the solver's rhs
  const auto s = random_smooth_state(2, 2, 5, 1.0);
  const auto p = params(2, 32, 0.7, 1e-3, 1.0);
  const auto cart = to_cartesian(s.u);
  const std::array<int, 3> res{40, 40, 1};
  const auto u = synthesize(cart, res);
  std::vector<GridField> grads;
  for (int i = 0; i < 2; ++i) {
    SpectralField comp(OperatorSpec::torus_laplacian(DomainSpec::torus(2)));
    for (const auto& [m, v] : cart) {
      if (m.pol == i + 1) comp.set(ModeIndex::scalar({m.k[0], m.k[1]}), v);
    }
    grads.push_back(synthesize_gradient(comp, res));
  }
  GridField n(DomainSpec::torus(2), res, 2);
  for (std::size_t x = 0; x < u.num_points(); ++x) {
    const double s2 = std::norm(u.at(x, 0)) + std::norm(u.at(x, 1));
    for (int i = 0; i < 2; ++i) {
      const auto& g = grads[static_cast<std::size_t>(i)];
      n.at(x, i) = u.at(x, 0) * g.at(x, 0) + u.at(x, 1) * g.at(x, 1) + p.beta * s2 * u.at(x, i);
    }
  }
  const auto vec = OperatorSpec::torus_laplacian(DomainSpec::torus(2), 2);
  std::vector<EigenPair> modes;
  for (const auto& ep : enumerate_modes(vec, 2.0 * 15 * 15)) {
    if (ep.index.max_abs() <= p.dealias_cutoff() && ep.index.max_abs() <= 6) modes.push_back(ep);
  }
  auto proj = leray_project(analyze(n, modes));
  SpectralField expect(OperatorSpec::torus_stokes(DomainSpec::torus(2)));
  for (const auto& [m, v] : proj) {
    if (m.norm_sq() > 0) expect.set(m, -v);
  }
  expect -= cplx(p.mu) * approx::apply_fractional_power(s.u, 1.0);
  CHECK(max_coefficient_difference(cbf_rhs(s, p), expect) < 1e-11);
}

TEST_CASE("stepping invariants") {
  const auto p = params(2, 32, 0.0, 1e-2, 1.0);
  const auto z = step(zero_state(2), p);
  CHECK(z.u.empty());
  CHECK(z.t == doctest::Approx(0.01));

  for (double beta : {0.0, 1.0}) {
    auto q = params(3, 16, beta, 1e-2, 1.0);
    CBFState s = random_smooth_state(3, 2, 3, 1.0);
    Solver solver(q);
    for (int i = 0; i < 10; ++i) s = solver.step(s);
    CHECK(divergence_residual(to_cartesian(s.u)) < 1e-12);
    CHECK(is_conjugate_symmetric(s.u, 0.0));
    CHECK(s.u.max_axis_index() <= q.dealias_cutoff());
    for (const auto& [m, v] : s.u) CHECK(m.norm_sq() > 0);
  }
}

TEST_CASE("Taylor-Green decay and ledger") {
  const auto p = params(2, 64, 0.0, 1e-3, 1.0);
  const auto t0 = std::chrono::steady_clock::now();
  const auto traj = simulate(taylor_green(), p);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(traj.snapshots.size() == 101);
  const double e0 = energy(traj.snapshots.front());
  for (const auto& s : traj.snapshots) {
    CHECK(energy(s) == doctest::Approx(e0 * std::exp(-4.0 * p.mu * s.t)).epsilon(1e-10));
  }
  const auto l = energy_ledger(traj, 0.0, 1.0);
  CHECK(std::abs(l.residual) / e0 < 1e-6);
  CHECK(l.absorption == 0.0);
  CHECK(secs < 60.0);

  // odd panel count exercises the 3/8 tail
  const auto l3 = energy_ledger(traj, 0.0, 0.03);
  CHECK(std::abs(l3.residual) / e0 < 1e-8);
  CHECK_THROWS_AS(energy_ledger(traj, 0.0, 0.01), ConfigError);
  CHECK_THROWS_AS(energy_ledger(traj, 0.0, 0.015), ConfigError);
}

TEST_CASE("zero trajectory ledger") {
  const auto traj = simulate(zero_state(2), params(2, 16, 1.0, 0.01, 0.3));
  const auto l = energy_ledger(traj, 0.0, 0.3);
  CHECK(l.kinetic0 == 0.0);
  CHECK(l.kinetic1 == 0.0);
  CHECK(l.dissipation == 0.0);
  CHECK(l.absorption == 0.0);
  CHECK(l.residual == 0.0);
}

TEST_CASE("ledger residual converges under refinement") {
  const auto s = random_smooth_state(2, 3, 42, 4.0);
  double prev = INFINITY;
  for (int level = 0; level < 3; ++level) {
    auto p = params(2, 16 << level, 1.0, 0.04 / (1 << level), 0.8);
    p.mu = 0.05;
    p.snapshot_every = 2;
    const auto l = energy_ledger(simulate(s, p), 0.0, 0.8);
    const double r = std::abs(l.residual);
    if (level > 0) CHECK(prev / r >= 8.0);
    prev = r;
    CHECK(l.residual > -1e-3);
  }
}

TEST_CASE("beta = 0 matches the Navier-Stokes path bit for bit") {
  const auto s = random_smooth_state(2, 4, 8, 3.0);
  auto p = params(2, 32, 0.0, 0.01, 0.5);
  std::ostringstream a, b;
  const std::vector<EnergyLedger> la{energy_ledger(simulate(s, p), 0.0, 0.5)};
  p.absorption_path = false;
  const std::vector<EnergyLedger> lb{energy_ledger(simulate(s, p), 0.0, 0.5)};
  write_ledger_csv(a, la);
  write_ledger_csv(b, lb);
  CHECK(a.str() == b.str());
  CHECK(la[0].absorption == 0.0);
}

TEST_CASE("dealiased modes stay zero") {
  auto p = params(2, 24, 0.0, 0.01, 0.5);
  const auto traj = simulate(random_smooth_state(2, 7, 2, 5.0), p);
  for (const auto& s : traj.snapshots) CHECK(s.u.max_axis_index() <= p.dealias_cutoff());
  CHECK(traj.snapshots.back().u.max_axis_index() == p.dealias_cutoff());
}

TEST_CASE("blow-up guard") {
  auto p = params(2, 16, 1.0, 0.5, 1.0);
  p.snapshot_every = 1;
  CHECK_THROWS_AS(simulate(random_smooth_state(2, 2, 1, 1e6), p), AccuracyError);
}

TEST_CASE("mollifier and time mollification") {
  const Mollifier eta(0.1);
  CHECK(eta.mass(-1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eta.mass(0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(eta(0.05) == eta(-0.05));
  CHECK(eta(0.1) == 0.0);

  Trajectory traj;
  traj.params = params(2, 16, 0.0, 0.01, 1.0);
  const auto a = random_smooth_state(2, 2, 1, 1.0).u;
  const auto b = random_smooth_state(2, 2, 2, 1.0).u;
  for (int i = 0; i <= 50; ++i) {
    const double t = 0.02 * i;
    traj.snapshots.push_back({t, a + cplx(t) * b});
  }
  // linear in time: interior value reproduced
  CHECK(max_coefficient_difference(time_mollify(traj, eta, 0.5), a + cplx(0.5) * b) < 1e-10);
  // endpoint: half the mass, plus the first moment of the half bump
  const auto e = time_mollify(traj, eta, 0.0);
  CHECK(std::abs(e.get(a.begin()->first) - 0.5 * a.begin()->second) < 0.05 * std::abs(a.begin()->second) + 0.1);

  Trajectory constant = traj;
  for (auto& s : constant.snapshots) s.u = a;
  CHECK(max_coefficient_difference(time_mollify(constant, eta, 0.3), a) < 1e-12);
  CHECK(max_coefficient_difference(time_mollify(constant, eta, 0.0), cplx(0.5) * a) < 1e-12);
  CHECK(max_coefficient_difference(time_mollify(constant, eta, 1.0), cplx(0.5) * a) < 1e-12);
  CHECK_THROWS_AS(time_mollify(constant, Mollifier(0.03), 0.5), ConfigError);
  CHECK_THROWS_AS(time_mollify(constant, eta, 1.5), ConfigError);
}

TEST_CASE("space mollification") {
  for (int dim : {2, 3}) {
    const auto s = random_smooth_state(dim, 3, 11, 1.0);
    double prev = INFINITY;
    for (int m = 0; m <= 14; ++m) {
      const auto r = space_mollify(s, 1 << m);
      CHECK(r.divergence < 1e-12);
      CHECK(r.h1_ratio <= 1.0);
      CHECK(r.l4_ratio <= 1.0 + 1e-12);
      std::array<int, 3> res{1, 1, 1};
      for (int a = 0; a < dim; ++a) res[static_cast<std::size_t>(a)] = 14;
      const double err = lp_norm(synthesize(r.state.u - s.u, res), 4.0);
      CHECK(err < prev);
      prev = err;
    }
    CHECK(prev < 1e-3);
  }
  CHECK_THROWS_AS(space_mollify(zero_state(2), 0), ConfigError);
}
