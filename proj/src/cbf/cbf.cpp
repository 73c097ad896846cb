#include "spectral/cbf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <fftw3.h>

#include "spectral/approx.hpp"
#include "spectral/error.hpp"
#include "spectral/io.hpp"
#include "spectral/leray.hpp"
#include "spectral/transforms.hpp"

namespace spectral::cbf {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBlowUpFactor = 10.0;

using Dense = std::vector<cplx>;  // d components of the half spectrum, component-major

}  // namespace

void CBFParams::validate() const {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw ConfigError("mu must be > 0");
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw ConfigError("beta must be >= 0");
  if (!(r >= 0.0) || !std::isfinite(r)) throw ConfigError("r must be >= 0");
  if (dim != 2 && dim != 3) throw ConfigError("dimension must be 2 or 3");
  if (N < 8 || N % 2 != 0) throw ConfigError("N must be even and >= 8");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be > 0");
  if (!(T > 0.0) || !std::isfinite(T)) throw ConfigError("T must be > 0");
  if (snapshot_every < 1) throw ConfigError("snapshot_every must be >= 1");
  if (!absorption_path && beta != 0.0) throw ConfigError("the Navier-Stokes path needs beta = 0");
  const double n = T / dt;
  if (std::abs(n - std::round(n)) > 1e-9 * n) throw ConfigError("T must be an integer multiple of dt");
  if (steps() % snapshot_every != 0) throw ConfigError("snapshot_every must divide the step count");
}

long CBFParams::steps() const { return std::lround(T / dt); }

int CBFParams::dealias_cutoff() const { return beta > 0.0 ? (N + 3) / 4 - 1 : (N + 2) / 3 - 1; }

void validate_state(const CBFState& s, const CBFParams& p) {
  const OperatorSpec& op = s.u.op();
  if (op.kind() != OperatorKind::TorusStokes || op.dim() != p.dim) {
    throw ConfigError("state must be a torus Stokes field of dimension " + std::to_string(p.dim));
  }
  const int K = p.dealias_cutoff();
  double scale = 0.0;
  for (const auto& [m, v] : s.u) {
    if (m.norm_sq() == 0) throw ConfigError("state must have zero mean");
    if (m.max_abs() > K) {
      std::ostringstream os;
      os << "mode |k|_inf=" << m.max_abs() << " exceeds the dealiasing cutoff " << K << " for N=" << p.N;
      throw AliasingError(os.str());
    }
    scale = std::max(scale, std::abs(v));
  }
  if (!is_conjugate_symmetric(s.u, 1e-12 * std::max(1.0, scale))) throw ConfigError("state must be real");
}

CBFState zero_state(int dim) { return {0.0, SpectralField(OperatorSpec::torus_stokes(DomainSpec::torus(dim)))}; }

CBFState taylor_green(double amplitude) {
  const auto vec = OperatorSpec::torus_laplacian(DomainSpec::torus(2), 2);
  SpectralField f(vec);
  // sin x cos y = sum over sx, sy of sx/(4i) e^{i(sx x + sy y)}; orthonormal coefficients carry 2 pi
  for (int sx : {-1, 1}) {
    for (int sy : {-1, 1}) {
      const cplx c1 = amplitude * 2.0 * kPi * static_cast<double>(sx) / cplx(0.0, 4.0);
      const cplx c2 = -amplitude * 2.0 * kPi * static_cast<double>(sy) / cplx(0.0, 4.0);
      f.set(ModeIndex::vector({sx, sy}, 1), c1);
      f.set(ModeIndex::vector({sx, sy}, 2), c2);
    }
  }
  return {0.0, leray_project(f)};
}

CBFState random_smooth_state(int dim, int kmax, std::uint64_t seed, double energy) {
  if (dim != 2 && dim != 3) throw ConfigError("dimension must be 2 or 3");
  if (kmax < 1) throw ConfigError("kmax must be >= 1");
  if (!(energy > 0.0)) throw ConfigError("energy must be > 0");
  const auto vec = OperatorSpec::torus_laplacian(DomainSpec::torus(dim), dim);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  SpectralField f(vec);
  for (const auto& ep : enumerate_modes(vec, static_cast<double>(kmax) * kmax)) {
    if (ep.eigenvalue == 0.0 || f.get(ep.index) != cplx{}) continue;
    const cplx v(nd(rng), nd(rng));
    f.set(ep.index, v);
    f.set(ep.index.negated(), std::conj(v));
  }
  SpectralField u = leray_project(f);
  const double e = coefficient_l2_norm(u);
  u *= std::sqrt(energy) / e;
  return {0.0, u};
}

struct Solver::Impl {
  CBFParams p;
  int d;
  int N;
  int K;
  int half;
  std::size_t nspec;
  std::size_t nphys;
  std::vector<std::array<int, 3>> kvec;
  std::vector<double> k2;
  std::vector<char> mask;
  std::vector<double> half_exp;  // exp(-mu |k|^2 dt / 2)
  fftw_complex* spec = nullptr;
  double* phys = nullptr;
  fftw_plan c2r = nullptr;
  fftw_plan r2c = nullptr;
  double norm_cart;  // Cartesian dense coefficient per orthonormal coefficient

  explicit Impl(const CBFParams& params) : p(params), d(params.dim), N(params.N) {
    p.validate();
    K = p.dealias_cutoff();
    half = N / 2 + 1;
    nspec = static_cast<std::size_t>(half);
    nphys = static_cast<std::size_t>(N);
    for (int a = 0; a < d - 1; ++a) {
      nspec *= static_cast<std::size_t>(N);
      nphys *= static_cast<std::size_t>(N);
    }
    kvec.resize(nspec);
    k2.resize(nspec);
    mask.resize(nspec);
    half_exp.resize(nspec);
    for (std::size_t s = 0; s < nspec; ++s) {
      std::size_t rem = s;
      std::array<int, 3> k{0, 0, 0};
      k[static_cast<std::size_t>(d - 1)] = static_cast<int>(rem % static_cast<std::size_t>(half));
      rem /= static_cast<std::size_t>(half);
      for (int a = d - 2; a >= 0; --a) {
        int v = static_cast<int>(rem % static_cast<std::size_t>(N));
        rem /= static_cast<std::size_t>(N);
        if (v > N / 2) v -= N;
        k[static_cast<std::size_t>(a)] = v;
      }
      kvec[s] = k;
      long q = 0;
      int mx = 0;
      for (int a = 0; a < d; ++a) {
        q += static_cast<long>(k[static_cast<std::size_t>(a)]) * k[static_cast<std::size_t>(a)];
        mx = std::max(mx, std::abs(k[static_cast<std::size_t>(a)]));
      }
      k2[s] = static_cast<double>(q);
      mask[s] = mx <= K;
      half_exp[s] = std::exp(-p.mu * k2[s] * p.dt / 2.0);
    }
    spec = fftw_alloc_complex(nspec);
    phys = fftw_alloc_real(nphys);
    std::array<int, 3> n{N, N, N};
    c2r = fftw_plan_dft_c2r(d, n.data(), spec, phys, FFTW_ESTIMATE);
    r2c = fftw_plan_dft_r2c(d, n.data(), phys, spec, FFTW_ESTIMATE);
    norm_cart = std::pow(2.0 * kPi, -0.5 * d);
  }

  ~Impl() {
    fftw_destroy_plan(c2r);
    fftw_destroy_plan(r2c);
    fftw_free(spec);
    fftw_free(phys);
  }

  std::size_t index_of(const std::array<int, 3>& k) const {
    std::size_t s = 0;
    for (int a = 0; a < d - 1; ++a) {
      int v = k[static_cast<std::size_t>(a)];
      if (v < 0) v += N;
      s = s * static_cast<std::size_t>(N) + static_cast<std::size_t>(v);
    }
    return s * static_cast<std::size_t>(half) + static_cast<std::size_t>(k[static_cast<std::size_t>(d - 1)]);
  }

  Dense to_dense(const SpectralField& u) const {
    Dense c(static_cast<std::size_t>(d) * nspec, cplx{});
    for (const auto& [m, v] : u) {
      if (m.k[static_cast<std::size_t>(d - 1)] < 0) continue;
      const std::size_t s = index_of(m.k);
      const Vec3 e = u.op().direction(m);
      for (int i = 0; i < d; ++i) {
        c[static_cast<std::size_t>(i) * nspec + s] += norm_cart * e[static_cast<std::size_t>(i)] * v;
      }
    }
    return c;
  }

  // Canonical half of a Hermitian spectrum: the last nonzero component of k
  // is positive.
  bool canonical(const std::array<int, 3>& k) const {
    for (int a = d - 1; a >= 0; --a) {
      const int v = k[static_cast<std::size_t>(a)];
      if (v != 0) return v > 0;
    }
    return false;
  }

  SpectralField from_dense(const Dense& c) const {
    const auto op = OperatorSpec::torus_stokes(DomainSpec::torus(d));
    SpectralField u(op);
    for (std::size_t s = 0; s < nspec; ++s) {
      if (!mask[s] || !canonical(kvec[s])) continue;
      const auto basis = stokes_polarization_basis(d, kvec[s]);
      ModeIndex m;
      m.dim = d;
      m.k = kvec[s];
      ModeIndex mn = m.negated();
      for (int pol = 1; pol < d; ++pol) {
        cplx a{};
        const Vec3& e = basis[static_cast<std::size_t>(pol - 1)];
        for (int i = 0; i < d; ++i) a += e[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(i) * nspec + s];
        a /= norm_cart;
        m.pol = pol;
        mn.pol = pol;
        u.set(m, a);
        // basis vectors at -k may flip sign relative to k
        const Vec3 en = op.direction(mn);
        double sgn = 0.0;
        for (int i = 0; i < d; ++i) sgn += en[static_cast<std::size_t>(i)] * e[static_cast<std::size_t>(i)];
        u.set(mn, (sgn > 0.0 ? 1.0 : -1.0) * std::conj(a));
      }
    }
    return u;
  }

  void to_physical(const cplx* src, double* dst) {
    auto* w = reinterpret_cast<cplx*>(spec);
    std::copy(src, src + nspec, w);
    fftw_execute(c2r);
    std::copy(phys, phys + nphys, dst);
  }

  void to_spectral(const double* src, cplx* dst) {
    std::copy(src, src + nphys, phys);
    fftw_execute(r2c);
    const double scale = 1.0 / static_cast<double>(nphys);
    const auto* w = reinterpret_cast<const cplx*>(spec);
    for (std::size_t s = 0; s < nspec; ++s) dst[s] = w[s] * scale;
  }

  // Velocity components on the grid.
  std::vector<double> velocity(const Dense& c) {
    std::vector<double> u(static_cast<std::size_t>(d) * nphys);
    for (int i = 0; i < d; ++i) to_physical(&c[static_cast<std::size_t>(i) * nspec], &u[static_cast<std::size_t>(i) * nphys]);
    return u;
  }

  // -P[(u.grad)u + beta |u|^r u], dealiased, zero mode dropped.
  Dense nonlinear(const Dense& c) {
    const auto u = velocity(c);
    std::vector<double> n(static_cast<std::size_t>(d) * nphys, 0.0);
    std::vector<cplx> deriv(nspec);
    std::vector<double> g(nphys);
    for (int i = 0; i < d; ++i) {
      const cplx* ci = &c[static_cast<std::size_t>(i) * nspec];
      double* ni = &n[static_cast<std::size_t>(i) * nphys];
      for (int j = 0; j < d; ++j) {
        for (std::size_t s = 0; s < nspec; ++s) {
          deriv[s] = cplx(0.0, kvec[s][static_cast<std::size_t>(j)]) * ci[s];
        }
        to_physical(deriv.data(), g.data());
        const double* uj = &u[static_cast<std::size_t>(j) * nphys];
        for (std::size_t x = 0; x < nphys; ++x) ni[x] += uj[x] * g[x];
      }
    }
    if (p.absorption_path) {
      for (std::size_t x = 0; x < nphys; ++x) {
        double s2 = 0.0;
        for (int i = 0; i < d; ++i) s2 += u[static_cast<std::size_t>(i) * nphys + x] * u[static_cast<std::size_t>(i) * nphys + x];
        const double w = p.beta * (p.r == 2.0 ? s2 : std::pow(s2, 0.5 * p.r));
        for (int i = 0; i < d; ++i) n[static_cast<std::size_t>(i) * nphys + x] += w * u[static_cast<std::size_t>(i) * nphys + x];
      }
    }
    Dense out(static_cast<std::size_t>(d) * nspec);
    for (int i = 0; i < d; ++i) to_spectral(&n[static_cast<std::size_t>(i) * nphys], &out[static_cast<std::size_t>(i) * nspec]);
    for (std::size_t s = 0; s < nspec; ++s) {
      if (!mask[s] || k2[s] == 0.0) {
        for (int i = 0; i < d; ++i) out[static_cast<std::size_t>(i) * nspec + s] = cplx{};
        continue;
      }
      cplx kn{};
      for (int i = 0; i < d; ++i) kn += static_cast<double>(kvec[s][static_cast<std::size_t>(i)]) * out[static_cast<std::size_t>(i) * nspec + s];
      for (int i = 0; i < d; ++i) {
        cplx& v = out[static_cast<std::size_t>(i) * nspec + s];
        v = -(v - static_cast<double>(kvec[s][static_cast<std::size_t>(i)]) * kn / k2[s]);
      }
    }
    return out;
  }

  // ||u||^2 of a dense state (half spectrum, interior planes counted twice)
  double energy(const Dense& c) const {
    double e = 0.0;
    for (std::size_t s = 0; s < nspec; ++s) {
      const int kl = kvec[s][static_cast<std::size_t>(d - 1)];
      const double w = (kl == 0 || 2 * kl == N) ? 1.0 : 2.0;
      for (int i = 0; i < d; ++i) e += w * std::norm(c[static_cast<std::size_t>(i) * nspec + s]);
    }
    return e * std::pow(2.0 * kPi, d);
  }

  void rk4(Dense& c) {
    const std::size_t n = c.size();
    auto E = [&](std::size_t idx) { return half_exp[idx % nspec]; };
    const double dt = p.dt;
    const Dense k1 = nonlinear(c);
    Dense tmp(n);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = E(i) * (c[i] + 0.5 * dt * k1[i]);
    const Dense k2v = nonlinear(tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = E(i) * c[i] + 0.5 * dt * k2v[i];
    const Dense k3 = nonlinear(tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = E(i) * E(i) * c[i] + dt * E(i) * k3[i];
    const Dense k4 = nonlinear(tmp);
    for (std::size_t i = 0; i < n; ++i) {
      const double e = E(i);
      c[i] = e * e * c[i] + dt / 6.0 * (e * e * k1[i] + 2.0 * e * (k2v[i] + k3[i]) + k4[i]);
    }
  }

  double absorption(const Dense& c) {
    const auto u = velocity(c);
    std::array<int, 3> res{1, 1, 1};
    for (int a = 0; a < d; ++a) res[static_cast<std::size_t>(a)] = N;
    GridField g(DomainSpec::torus(d), res, d);
    for (std::size_t x = 0; x < nphys; ++x) {
      for (int i = 0; i < d; ++i) g.at(x, i) = u[static_cast<std::size_t>(i) * nphys + x];
    }
    return std::pow(lp_norm(g, p.r + 2.0), p.r + 2.0);
  }
};

Solver::Solver(const CBFParams& p) : impl_(std::make_unique<Impl>(p)) {}
Solver::~Solver() = default;
const CBFParams& Solver::params() const { return impl_->p; }

SpectralField Solver::rhs(const CBFState& s) {
  validate_state(s, impl_->p);
  Dense c = impl_->to_dense(s.u);
  Dense nl = impl_->nonlinear(c);
  for (std::size_t i = 0; i < nl.size(); ++i) nl[i] -= impl_->p.mu * impl_->k2[i % impl_->nspec] * c[i];
  return impl_->from_dense(nl);
}

CBFState Solver::step(const CBFState& s) {
  validate_state(s, impl_->p);
  Dense c = impl_->to_dense(s.u);
  const double before = impl_->energy(c);
  impl_->rk4(c);
  const double after = impl_->energy(c);
  if (!std::isfinite(after) || (before > 0.0 && after > kBlowUpFactor * kBlowUpFactor * before)) {
    std::ostringstream os;
    os << "blow-up guard: ||u|| grew from " << std::sqrt(before) << " to " << std::sqrt(after) << " at t=" << s.t;
    throw AccuracyError(os.str());
  }
  return {s.t + impl_->p.dt, impl_->from_dense(c)};
}

double Solver::absorption_integral(const CBFState& s) { return impl_->absorption(impl_->to_dense(s.u)); }

SpectralField cbf_rhs(const CBFState& s, const CBFParams& p) { return Solver(p).rhs(s); }

CBFState step(const CBFState& s, const CBFParams& p) { return Solver(p).step(s); }

Trajectory simulate(const CBFState& initial, const CBFParams& p) {
  p.validate();
  validate_state(initial, p);
  Solver solver(p);
  auto& im = *solver.impl_;
  Trajectory traj;
  traj.params = p;
  Dense c = im.to_dense(initial.u);
  auto record = [&](long n) {
    CBFState s{initial.t + static_cast<double>(n) * p.dt, im.from_dense(c)};
    traj.enstrophy.push_back(std::pow(approx::fractional_norm(s.u, 0.5), 2.0));
    traj.absorption.push_back(p.absorption_path ? im.absorption(c) : 0.0);
    traj.snapshots.push_back(std::move(s));
  };
  record(0);
  const long steps = p.steps();
  for (long n = 1; n <= steps; ++n) {
    const double before = im.energy(c);
    im.rk4(c);
    const double after = im.energy(c);
    if (!std::isfinite(after) || (before > 0.0 && after > kBlowUpFactor * kBlowUpFactor * before)) {
      std::ostringstream os;
      os << "blow-up guard: ||u|| grew from " << std::sqrt(before) << " to " << std::sqrt(after) << " at step " << n;
      throw AccuracyError(os.str());
    }
    if (n % p.snapshot_every == 0) record(n);
  }
  return traj;
}

EnergyLedger energy_ledger(const Trajectory& traj, double t0, double t1) {
  const auto& snaps = traj.snapshots;
  if (snaps.size() < 3) throw ConfigError("energy ledger needs at least 3 snapshots");
  if (!(t0 < t1)) throw ConfigError("energy ledger needs t0 < t1");
  const double tol = 1e-9 * std::max(1.0, std::abs(snaps.back().t));
  auto find = [&](double t) {
    for (std::size_t i = 0; i < snaps.size(); ++i) {
      if (std::abs(snaps[i].t - t) <= tol) return i;
    }
    throw ConfigError("ledger times must coincide with stored snapshots");
  };
  const std::size_t i0 = find(t0);
  const std::size_t i1 = find(t1);
  const std::size_t n = i1 - i0;
  if (n < 2) throw ConfigError("energy ledger needs at least 3 snapshots in [t0, t1]");
  const double h = (snaps[i1].t - snaps[i0].t) / static_cast<double>(n);

  auto integrate = [&](const std::vector<double>& f) {
    double s = 0.0;
    std::size_t simpson_end = i0 + (n % 2 == 0 ? n : n - 3);
    for (std::size_t i = i0; i + 2 <= simpson_end; i += 2) s += h / 3.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
    if (n % 2 == 1) {
      const std::size_t j = simpson_end;
      s += 3.0 * h / 8.0 * (f[j] + 3.0 * f[j + 1] + 3.0 * f[j + 2] + f[j + 3]);
    }
    return s;
  };

  const auto& p = traj.params;
  EnergyLedger l;
  l.t0 = snaps[i0].t;
  l.t1 = snaps[i1].t;
  l.kinetic0 = std::pow(coefficient_l2_norm(snaps[i0].u), 2.0);
  l.kinetic1 = std::pow(coefficient_l2_norm(snaps[i1].u), 2.0);
  l.dissipation = 2.0 * p.mu * integrate(traj.enstrophy);
  l.absorption = 2.0 * p.beta * integrate(traj.absorption);
  l.residual = l.kinetic1 + l.dissipation + l.absorption - l.kinetic0;
  return l;
}

void write_ledger_csv(std::ostream& os, std::span<const EnergyLedger> rows) {
  os << "t0,t1,kinetic0,kinetic1,dissipation,absorption,residual\n";
  for (const auto& r : rows) {
    os << format_double(r.t0) << ',' << format_double(r.t1) << ',' << format_double(r.kinetic0) << ','
       << format_double(r.kinetic1) << ',' << format_double(r.dissipation) << ',' << format_double(r.absorption)
       << ',' << format_double(r.residual) << '\n';
  }
}

namespace {

double bump(double s) { return std::abs(s) < 1.0 ? std::exp(-1.0 / (1.0 - s * s)) : 0.0; }

// composite 20-point Gauss-Legendre of f over [a, b]
template <class F>
double composite_gl(F f, double a, double b, int panels) {
  using GL = boost::math::quadrature::gauss<double, 20>;
  if (!(b > a)) return 0.0;
  const double w = (b - a) / panels;
  double s = 0.0;
  for (int i = 0; i < panels; ++i) s += GL::integrate(f, a + w * i, a + w * (i + 1));
  return s;
}

}  // namespace

Mollifier::Mollifier(double h) : h_(h), scale_(1.0) {
  if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("mollifier half-width must be > 0");
  scale_ = 1.0 / composite_gl([](double s) { return bump(s); }, -1.0, 1.0, 64);
}

double Mollifier::operator()(double s) const { return scale_ * bump(s / h_) / h_; }

double Mollifier::mass(double a, double b) const {
  a = std::max(a, -h_);
  b = std::min(b, h_);
  if (!(b > a)) return 0.0;
  const int panels = std::max(1, static_cast<int>(std::ceil(64.0 * (b - a) / (2.0 * h_))));
  return composite_gl([this](double s) { return (*this)(s); }, a, b, panels);
}

SpectralField time_mollify(const Trajectory& traj, const Mollifier& eta, double t) {
  const auto& snaps = traj.snapshots;
  if (snaps.size() < 2) throw ConfigError("time mollifier needs at least 2 snapshots");
  double spacing = 0.0;
  for (std::size_t i = 1; i < snaps.size(); ++i) spacing = std::max(spacing, snaps[i].t - snaps[i - 1].t);
  if (eta.h() < 2.0 * spacing) {
    std::ostringstream os;
    os << "mollifier half-width " << eta.h() << " is below twice the snapshot spacing " << spacing;
    throw ConfigError(os.str());
  }
  if (t < snaps.front().t || t > snaps.back().t) throw ConfigError("time outside the trajectory range");

  const double lo = t - eta.h();
  const double hi = t + eta.h();
  SpectralField out(snaps.front().u.op());
  for (std::size_t j = 0; j < snaps.size(); ++j) {
    double w = 0.0;
    // rising half of the hat on [t_{j-1}, t_j], falling half on [t_j, t_{j+1}]
    for (int side : {-1, 1}) {
      if ((side < 0 && j == 0) || (side > 0 && j + 1 == snaps.size())) continue;
      const double tj = snaps[j].t;
      const double tn = snaps[side < 0 ? j - 1 : j + 1].t;
      const double a = std::max(std::min(tj, tn), lo);
      const double b = std::min(std::max(tj, tn), hi);
      if (!(b > a)) continue;
      auto f = [&](double s) { return eta(t - s) * (s - tn) / (tj - tn); };
      w += composite_gl(f, a, b, 8);
    }
    if (w != 0.0) out += w * snaps[j].u;
  }
  return out;
}

SpaceMollified space_mollify(const CBFState& s, int n) {
  if (n < 1) throw ConfigError("space mollifier index must be >= 1");
  if (s.u.op().kind() != OperatorKind::TorusStokes) throw ConfigError("space mollifier needs a Stokes field");
  SpaceMollified out{{s.t, approx::semigroup_apply(s.u, 1.0 / n)}};
  out.divergence = divergence_residual(to_cartesian(out.state.u));
  const double g0 = approx::fractional_norm(s.u, 0.5);
  out.h1_ratio = g0 > 0.0 ? approx::fractional_norm(out.state.u, 0.5) / g0 : 0.0;
  std::array<int, 3> res{1, 1, 1};
  for (int a = 0; a < s.u.op().dim(); ++a) res[static_cast<std::size_t>(a)] = 4 * std::max(1, s.u.max_axis_index()) + 2;
  const double l0 = s.u.empty() ? 0.0 : lp_norm(synthesize(s.u, res), 4.0);
  out.l4_ratio = l0 > 0.0 ? lp_norm(synthesize(out.state.u, res), 4.0) / l0 : 0.0;
  const double scale = std::max(1.0, coefficient_l2_norm(s.u));
  if (out.divergence > 1e-12 * scale || out.h1_ratio > 1.0 + 1e-12 || out.l4_ratio > 1.0 + 1e-12) {
    std::ostringstream os;
    os << "space mollifier check failed: divergence=" << out.divergence << " h1_ratio=" << out.h1_ratio
       << " l4_ratio=" << out.l4_ratio;
    throw AccuracyError(os.str());
  }
  return out;
}

}  // namespace spectral::cbf
