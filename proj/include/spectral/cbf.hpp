#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "spectral/field.hpp"

namespace spectral::cbf {

struct CBFParams {
  double mu = 0.1;
  double beta = 0.0;
  double r = 2.0;
  int dim = 2;
  int N = 64;
  double dt = 1e-3;
  double T = 1.0;
  int snapshot_every = 10;
  // false runs the plain Navier-Stokes path with no absorption branch at all
  // (only allowed with beta == 0)
  bool absorption_path = true;

  void validate() const;
  /// Number of time steps T/dt (T must be an integer multiple of dt).
  long steps() const;
  /// Largest retained |k_i|: ceil(N/3)-1 without absorption, ceil(N/4)-1 with.
  int dealias_cutoff() const;
};

/// Velocity as a zero-mean torus Stokes field.
struct CBFState {
  double t = 0.0;
  SpectralField u;
};

/// Throws ConfigError unless `s` is a real, zero-mean Stokes field on the
/// torus of dimension p.dim, and AliasingError when it has modes beyond the
/// dealiasing cutoff.
void validate_state(const CBFState& s, const CBFParams& p);

CBFState zero_state(int dim);

/// (sin x cos y, -cos x sin y) scaled by `amplitude`; 2D only.
CBFState taylor_green(double amplitude = 1.0);

/// Real divergence-free field on modes with |k| <= kmax, scaled to the
/// given kinetic energy ||u||^2.
CBFState random_smooth_state(int dim, int kmax, std::uint64_t seed, double energy = 1.0);

struct Trajectory;

/// FFTW-backed pseudospectral evaluator for one parameter set.
class Solver {
 public:
  explicit Solver(const CBFParams& p);
  ~Solver();
  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;

  const CBFParams& params() const;

  /// -mu A u - P[(u.grad)u + beta |u|^r u] as a Stokes field.
  SpectralField rhs(const CBFState& s);
  /// One integrating-factor RK4 step.
  CBFState step(const CBFState& s);
  /// Integral of |u|^{r+2} over the torus on the solver grid.
  double absorption_integral(const CBFState& s);

 private:
  friend Trajectory simulate(const CBFState& initial, const CBFParams& p);
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

SpectralField cbf_rhs(const CBFState& s, const CBFParams& p);
CBFState step(const CBFState& s, const CBFParams& p);

struct Trajectory {
  CBFParams params;
  std::vector<CBFState> snapshots;
  // per snapshot: ||grad u||^2 and integral |u|^{r+2}
  std::vector<double> enstrophy;
  std::vector<double> absorption;
};

/// Runs to p.T, storing every p.snapshot_every steps (and t = 0).
Trajectory simulate(const CBFState& initial, const CBFParams& p);

struct EnergyLedger {
  double t0 = 0.0;
  double t1 = 0.0;
  double kinetic0 = 0.0;
  double kinetic1 = 0.0;
  double dissipation = 0.0;
  double absorption = 0.0;
  double residual = 0.0;
};

/// Energy balance between two snapshot times, time integrals by Simpson
/// over the stored snapshots (3/8 rule on a trailing odd panel).
EnergyLedger energy_ledger(const Trajectory& traj, double t0, double t1);

void write_ledger_csv(std::ostream& os, std::span<const EnergyLedger> rows);

/// Even bump exp(-1/(1-(s/h)^2)) scaled to unit mass on the line.
class Mollifier {
 public:
  explicit Mollifier(double h);
  double h() const { return h_; }
  double operator()(double s) const;
  /// Integral of the profile over [a, b].
  double mass(double a, double b) const;

 private:
  double h_;
  double scale_;
};

/// u^h(t) = integral over the trajectory range of eta_h(t - s) u(s) ds, with
/// u linearly interpolated between snapshots.
SpectralField time_mollify(const Trajectory& traj, const Mollifier& eta, double t);

struct SpaceMollified {
  CBFState state;
  double divergence = 0.0;  // max |k . u(k)|
  double h1_ratio = 0.0;    // ||grad u_n|| / ||grad u||
  double l4_ratio = 0.0;    // ||u_n||_4 / ||u||_4
};

/// e^{-A/n} on the Stokes spectrum. Throws AccuracyError when the result
/// is not divergence-free or the H^1 / L^4 ratios exceed 1.
SpaceMollified space_mollify(const CBFState& s, int n);

}  // namespace spectral::cbf
