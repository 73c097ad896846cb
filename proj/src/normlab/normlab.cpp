#include "spectral/normlab.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "spectral/error.hpp"
#include "spectral/leray.hpp"
#include "spectral/transforms.hpp"

namespace spectral::lab {

namespace {

constexpr double kPi = std::numbers::pi;

std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

double bump(double r) { return std::abs(r) < 1.0 ? std::exp(-1.0 / (1.0 - r * r)) : 0.0; }

// integral of bump((x-c)/w) * conj(phi_k(x)) on one axis, composite Gauss-Legendre
cplx axis_bump_coefficient(const DomainSpec& dom, int axis, int k, double c, double w) {
  using GL = boost::math::quadrature::gauss<double, 20>;
  const int panels = 32;
  const double a = c - w;
  const double h = 2.0 * w / panels;
  cplx s{};
  for (int p = 0; p < panels; ++p) {
    const double lo = a + h * p;
    s += GL::integrate(
        [&](double x) {
          const double b = bump((x - c) / w);
          if (dom.periodic()) return b * std::cos(k * x);
          const double L = dom.length(axis);
          return b * std::sqrt(2.0 / L) * std::sin(kPi * k * x / L);
        },
        lo, lo + h);
    if (dom.periodic()) {
      s -= cplx(0.0, 1.0) *
           GL::integrate([&](double x) { return bump((x - c) / w) * std::sin(k * x); }, lo, lo + h);
    }
  }
  return dom.periodic() ? s / std::sqrt(2.0 * kPi) : s;
}

// Scalar version of an operator (its domain with the scalar Laplacian).
OperatorSpec scalar_op(const OperatorSpec& op) {
  return op.domain().periodic() ? OperatorSpec::torus_laplacian(op.domain())
                                : OperatorSpec::dirichlet_laplacian(op.domain());
}

// Lifts a scalar field into component 1 of the target operator.
SpectralField lift(const SpectralField& scalar, const OperatorSpec& op) {
  if (!op.vector_valued()) return scalar;
  const auto vec = OperatorSpec::torus_laplacian(op.domain(), op.dim());
  SpectralField out(vec);
  for (const auto& [m, v] : scalar) {
    ModeIndex mi = m;
    mi.pol = 1;
    out.set(mi, v);
  }
  if (op.kind() == OperatorKind::TorusStokes) return leray_project(out);
  return out;
}

SpectralField random_smooth(const ExperimentConfig& cfg, std::mt19937_64& rng) {
  const OperatorSpec base = cfg.op.kind() == OperatorKind::TorusStokes
                                ? OperatorSpec::torus_laplacian(cfg.op.domain(), cfg.op.dim())
                                : cfg.op;
  std::normal_distribution<double> nd(0.0, 1.0);
  std::vector<ModeIndex> pick;
  for (const auto& ep : enumerate_modes(base, cfg.lambda_max)) {
    if (ep.eigenvalue > 0.0) pick.push_back(ep.index);
  }
  std::shuffle(pick.begin(), pick.end(), rng);
  SpectralField f(base);
  const bool periodic = base.domain().periodic();
  int taken = 0;
  for (const auto& m : pick) {
    if (taken >= cfg.modes) break;
    if (f.get(m) != cplx{}) continue;
    const cplx v(nd(rng), periodic ? nd(rng) : 0.0);
    f.set(m, v);
    if (periodic) f.set(m.negated(), std::conj(v));
    ++taken;
  }
  return cfg.op.kind() == OperatorKind::TorusStokes ? leray_project(f) : f;
}

SpectralField boundary_bump(const ExperimentConfig& cfg, std::mt19937_64& rng) {
  const OperatorSpec sop = scalar_op(cfg.op);
  const DomainSpec& dom = sop.domain();
  std::uniform_real_distribution<double> gap(0.02, 0.1);
  std::uniform_real_distribution<double> width(0.05, 0.15);
  std::array<double, 3> centre{};
  std::array<double, 3> half{};
  for (int a = 0; a < dom.dim(); ++a) {
    const auto aa = static_cast<std::size_t>(a);
    const double L = dom.periodic() ? 2.0 * kPi : dom.length(a);
    if (a == 0) {
      half[aa] = width(rng) * L;
      centre[aa] = gap(rng) * L + half[aa];
    } else {
      half[aa] = 0.3 * L;
      centre[aa] = 0.5 * L;
    }
  }
  std::vector<std::map<int, cplx>> cache(static_cast<std::size_t>(dom.dim()));
  SpectralField f(sop);
  for (const auto& ep : enumerate_modes(sop, cfg.lambda_max)) {
    cplx v{1.0};
    for (int a = 0; a < dom.dim(); ++a) {
      const auto aa = static_cast<std::size_t>(a);
      const int k = ep.index.k[aa];
      auto it = cache[aa].find(k);
      if (it == cache[aa].end()) {
        it = cache[aa].emplace(k, axis_bump_coefficient(dom, a, k, centre[aa], half[aa])).first;
      }
      v *= it->second;
    }
    f.set(ep.index, v);
  }
  return lift(f, cfg.op);
}

SpectralField near_extremal(const ExperimentConfig& cfg, std::mt19937_64& rng) {
  const OperatorSpec sop = scalar_op(cfg.op);
  if (!sop.domain().periodic()) throw ConfigError("near-extremal family needs a torus");
  std::uniform_real_distribution<double> radius(0.6, 2.4);
  std::uniform_real_distribution<double> pos(0.0, 2.0 * kPi);
  Point c{pos(rng), pos(rng), pos(rng)};
  const int band = static_cast<int>(std::floor(std::sqrt(cfg.lambda_max)));
  const double r = radius(rng);
  return lift(smoothed_indicator(sop, r, c, 0.25 / std::max(1, band * band), band), cfg.op);
}

double ball_transform(int d, double r, double k) {
  if (k == 0.0) {
    if (d == 1) return 2.0 * r;
    if (d == 2) return kPi * r * r;
    return 4.0 * kPi * r * r * r / 3.0;
  }
  if (d == 1) return 2.0 * std::sin(r * k) / k;
  if (d == 2) return 2.0 * kPi * r * std::cyl_bessel_j(1.0, r * k) / k;
  return 4.0 * kPi * (std::sin(r * k) - r * k * std::cos(r * k)) / (k * k * k);
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::RandomSmooth: return "random-smooth";
    case Family::BoundaryBump: return "boundary-bump";
    case Family::NearExtremal: return "near-extremal";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  for (Family f : {Family::RandomSmooth, Family::BoundaryBump, Family::NearExtremal}) {
    if (family_name(f) == name) return f;
  }
  throw ConfigError("unknown family '" + name + "'");
}

void ExperimentConfig::validate() const {
  if (!(lambda_max > 0.0)) throw ConfigError("lambda_max must be > 0");
  if (samples < 1) throw ConfigError("samples must be >= 1");
  if (modes < 1) throw ConfigError("modes must be >= 1");
  for (double p : ps) {
    if (!(p > 1.0) || !std::isfinite(p)) throw ConfigError("p must lie in (1, inf)");
  }
  for (double t : thetas) {
    if (!(t > 0.0) || !std::isfinite(t)) throw ConfigError("theta grid values must be > 0");
  }
}

std::vector<SpectralField> sample_family(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<SpectralField> out;
  for (int i = 0; i < cfg.samples; ++i) {
    auto rng = sample_rng(cfg.seed, static_cast<std::uint64_t>(i));
    switch (cfg.family) {
      case Family::RandomSmooth: out.push_back(random_smooth(cfg, rng)); break;
      case Family::BoundaryBump: out.push_back(boundary_bump(cfg, rng)); break;
      case Family::NearExtremal: out.push_back(near_extremal(cfg, rng)); break;
    }
  }
  return out;
}

SpectralField smoothed_indicator(const OperatorSpec& op, double radius, const Point& center,
                                 double smoothing, int bandwidth) {
  if (op.kind() != OperatorKind::TorusLaplacian || op.vector_valued()) {
    throw ConfigError("smoothed indicator needs the scalar torus Laplacian");
  }
  if (!(radius > 0.0) || smoothing < 0.0 || bandwidth < 0) throw ConfigError("bad indicator parameters");
  const int d = op.dim();
  const double norm = std::pow(2.0 * kPi, -0.5 * d);
  SpectralField f(op);
  std::array<int, 3> k{0, 0, 0};
  const int side = 2 * bandwidth + 1;
  int total = 1;
  for (int a = 0; a < d; ++a) total *= side;
  for (int flat = 0; flat < total; ++flat) {
    int rem = flat;
    double phase = 0.0;
    long k2 = 0;
    for (int a = d - 1; a >= 0; --a) {
      const auto aa = static_cast<std::size_t>(a);
      k[aa] = rem % side - bandwidth;
      rem /= side;
      phase += k[aa] * center[aa];
      k2 += static_cast<long>(k[aa]) * k[aa];
    }
    const double kk = std::sqrt(static_cast<double>(k2));
    const double amp = norm * ball_transform(d, radius, kk) * std::exp(-smoothing * static_cast<double>(k2));
    ModeIndex m;
    m.dim = d;
    m.k = k;
    f.set(m, std::polar(amp, -phase));
  }
  return f;
}

OperatorNormResult operator_norm_lower_bound(const approx::Multiplier& t, double p,
                                             std::vector<SpectralField> family,
                                             const std::array<int, 3>& resolution, std::uint64_t seed) {
  if (!(p > 1.0) || !std::isfinite(p)) throw ConfigError("p must lie in (1, inf)");
  if (family.empty()) throw ConfigError("empty sample family");

  double best = -1.0;
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const double den = lp_norm(synthesize(family[i], resolution), p);
    if (den == 0.0) continue;
    const double r = lp_norm(synthesize(approx::apply_multiplier(family[i], t), resolution), p) / den;
    if (r > best) {
      best = r;
      best_i = i;
    }
  }
  if (best < 0.0) throw ConfigError("degenerate family: every sample is zero");
  const double initial = best;

  // Coordinate ascent with incremental grid updates.
  SpectralField f = family[best_i];
  const OperatorSpec& op = f.op();
  const int d = op.dim();
  GridField gf = synthesize(f, resolution);
  GridField gt = synthesize(approx::apply_multiplier(f, t), resolution);
  std::vector<ModeIndex> keys;
  for (const auto& [m, v] : f) keys.push_back(m);

  auto rng = sample_rng(seed, 0xA5CE17u);
  std::uniform_int_distribution<std::size_t> pick(0, keys.size() - 1);
  std::bernoulli_distribution sign(0.5);

  struct Delta {
    ModeIndex m;
    cplx dv;
  };
  auto apply = [&](const std::vector<Delta>& ds, double s) {
    for (const auto& [m, dv] : ds) {
      std::array<std::vector<cplx>, 3> cols;
      for (int a = 0; a < d; ++a) {
        const auto aa = static_cast<std::size_t>(a);
        const AxisMatrix tab = axis_eigen_table(op, a, resolution[aa], m.k[aa], m.k[aa]);
        cols[aa] = tab.data;
      }
      const Vec3 dir = op.direction(m);
      const double tf = t.factor(m, op.eigenvalue(m));
      for (std::size_t pt = 0; pt < gf.num_points(); ++pt) {
        const auto idx = gf.unflatten(pt);
        cplx phi = s * dv;
        for (int a = 0; a < d; ++a) {
          const auto aa = static_cast<std::size_t>(a);
          phi *= cols[aa][static_cast<std::size_t>(idx[aa])];
        }
        for (int c = 0; c < gf.components(); ++c) {
          const double e = dir[static_cast<std::size_t>(c)];
          if (e == 0.0) continue;
          gf.at(pt, c) += e * phi;
          gt.at(pt, c) += e * tf * phi;
        }
      }
    }
  };

  double current = best;
  int accepted = 0;
  for (int it = 0; it < kAscentIterations; ++it) {
    const double eps = 0.1 * std::pow(0.1, static_cast<double>(it) / (kAscentIterations - 1));
    const double z = sign(rng) ? 1.0 : -1.0;
    const ModeIndex m = keys[pick(rng)];
    std::vector<Delta> ds{{m, eps * z * f.get(m)}};
    const ModeIndex partner = m.negated();
    if (op.domain().periodic() && !(partner == m) && f.get(partner) != cplx{}) {
      ds.push_back({partner, eps * z * f.get(partner)});
    }
    apply(ds, 1.0);
    const double den = lp_norm(gf, p);
    const double r = den > 0.0 ? lp_norm(gt, p) / den : 0.0;
    if (r > current) {
      current = r;
      for (const auto& [mm, dv] : ds) f.add(mm, dv);
      ++accepted;
    } else {
      apply(ds, -1.0);
    }
  }

  // Recompute the final ratio from scratch so it does not carry update drift.
  const double ratio =
      lp_norm(synthesize(approx::apply_multiplier(f, t), resolution), p) / lp_norm(synthesize(f, resolution), p);
  std::ostringstream meta;
  meta << "samples=" << family.size() << " grid=" << resolution[0] << "x" << resolution[1] << "x"
       << resolution[2] << " initial=" << initial << " accepted=" << accepted;
  return {NormReport::make("opnorm_" + t.name, {{"p", p}}, ratio, 1.0, meta.str()), std::move(f)};
}

OperatorNormResult operator_norm_lower_bound(const approx::Multiplier& t, double p,
                                             const ExperimentConfig& cfg) {
  auto family = sample_family(cfg);
  std::array<int, 3> res{1, 1, 1};
  if (cfg.resolution) {
    res = *cfg.resolution;
  } else {
    for (const auto& f : family) {
      const auto r = default_resolution(f);
      for (std::size_t a = 0; a < 3; ++a) res[a] = std::max(res[a], r[a]);
    }
  }
  return operator_norm_lower_bound(t, p, std::move(family), res, cfg.seed);
}

std::string NormTag::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Fractional: os << "D(A^" << value << ")"; break;
    case Kind::Lp: os << "L^" << value; break;
    case Kind::H1: os << "H^1"; break;
  }
  return os.str();
}

std::vector<NormReport> convergence_study(const SpectralField& f, Method method,
                                          const std::vector<NormTag>& norms,
                                          const std::vector<double>& thetas) {
  const OperatorSpec& op = f.op();
  for (const auto& n : norms) {
    if (n.kind == NormTag::Kind::H1 && op.vector_valued()) {
      throw ConfigError("norm " + n.describe() + " not supported for " + op.name());
    }
    if (n.kind == NormTag::Kind::Lp && !(n.value >= 1.0)) throw ConfigError("L^p needs p >= 1");
  }
  for (double th : thetas) {
    if (!(th > 0.0)) throw ConfigError("theta grid values must be > 0");
  }
  const auto res = default_resolution(f);
  const bool stokes = op.kind() == OperatorKind::TorusStokes;
  const bool dirichlet = !op.domain().periodic();
  const std::string qname = method == Method::Semigroup ? "error_semigroup" : "error_pi_theta";

  auto measure = [&](const SpectralField& g, const NormTag& n) {
    switch (n.kind) {
      case NormTag::Kind::Fractional: return approx::fractional_norm(g, n.value);
      case NormTag::Kind::Lp: return lp_norm(synthesize(g, res), n.value);
      case NormTag::Kind::H1: return lp_norm(synthesize_gradient(g, res), 2.0);
    }
    return 0.0;
  };
  std::vector<double> ref;
  for (const auto& n : norms) ref.push_back(measure(f, n));

  std::vector<NormReport> rows;
  for (double th : thetas) {
    const SpectralField u = method == Method::Semigroup ? approx::semigroup_apply(f, th) : approx::pi_theta(f, th);
    if (stokes) {
      const double div = divergence_residual(to_cartesian(u));
      if (div > 1e-12 * std::max(1.0, coefficient_l2_norm(u))) {
        std::ostringstream os;
        os << "u_theta left the divergence-free subspace at theta=" << th << " (residual " << div << ")";
        throw AccuracyError(os.str());
      }
    }
    if (dirichlet && !u.empty()) {
      const GridField g = synthesize(u, res);
      for (std::size_t pt = 0; pt < g.num_points(); ++pt) {
        const auto idx = g.unflatten(pt);
        bool boundary = false;
        for (int a = 0; a < g.dim(); ++a) {
          const int i = idx[static_cast<std::size_t>(a)];
          boundary = boundary || i == 0 || i == g.resolution(a) - 1;
        }
        if (boundary && g.magnitude(pt) != 0.0) {
          throw AccuracyError("u_theta does not vanish on the boundary");
        }
      }
    }
    const SpectralField e = u - f;
    for (std::size_t j = 0; j < norms.size(); ++j) {
      const auto& n = norms[j];
      const std::string pname = n.kind == NormTag::Kind::Lp ? "p" : "alpha";
      rows.push_back(NormReport::make(qname, {{"theta", th}, {pname, n.value}}, measure(e, n), ref[j],
                                      "space=" + n.describe()));
    }
  }
  return rows;
}

namespace {

// Coefficients of the zero extension of sqrt(2/L) sin(pi k x/L) against
// e^{i pi m x/L}/sqrt(2L) on [0, 2L), m = -M..M.
std::vector<cplx> extension_row(int k, double L, int M) {
  std::vector<cplx> c(static_cast<std::size_t>(2 * M + 1));
  const double a = kPi * k / L;
  for (int m = -M; m <= M; ++m) {
    cplx v;
    if (m == k) {
      v = cplx(0.0, -0.5);
    } else if (m == -k) {
      v = cplx(0.0, 0.5);
    } else {
      const double b = kPi * m / L;
      const bool even = ((k + m) % 2) == 0;
      v = even ? 0.0 : 2.0 * a / (a * a - b * b) / L;
    }
    c[static_cast<std::size_t>(m + M)] = v;
  }
  return c;
}

}  // namespace

double sobolev_surrogate(const SpectralField& f, double theta) {
  const OperatorSpec& op = f.op();
  if (op.kind() != OperatorKind::DirichletLaplacian || op.dim() > 2) {
    throw ConfigError("Sobolev surrogate needs an interval or 2D box");
  }
  if (!(theta >= 0.0 && theta < 0.75)) throw ConfigError("Sobolev surrogate needs 0 <= theta < 3/4");
  if (f.empty()) return 0.0;
  const auto res = default_resolution(f, 8);
  if (theta == 0.0) return lp_norm(synthesize(f, res), 2.0);
  if (theta == 0.5) return lp_norm(synthesize_gradient(f, res), 2.0);

  const double s2 = 4.0 * theta;  // |xi|^{2s}, s = 2 theta
  if (op.dim() == 1) {
    const int M = kSobolevTerms1d;
    const double L = op.domain().length(0);
    std::vector<cplx> c(static_cast<std::size_t>(2 * M + 1));
    for (const auto& [m, v] : f) {
      const auto row = extension_row(m.k[0], L, M);
      for (std::size_t j = 0; j < c.size(); ++j) c[j] += v * row[j];
    }
    double s = 0.0;
    for (int m = -M; m <= M; ++m) {
      if (m == 0) continue;
      s += std::pow(std::abs(kPi * m / L), s2) * std::norm(c[static_cast<std::size_t>(m + M)]);
    }
    return std::sqrt(s);
  }

  const int M = kSobolevTerms2d;
  const int W = 2 * M + 1;
  const double L0 = op.domain().length(0);
  const double L1 = op.domain().length(1);
  std::map<int, std::vector<cplx>> rows0;
  std::map<int, std::vector<cplx>> rows1;
  // C = sum_k u_k r0(k0) r1(k1)^T, accumulated through the k1 rows
  std::map<int, std::vector<cplx>> partial;  // k1 -> sum over k0 of u_k r0(k0)
  for (const auto& [m, v] : f) {
    auto& r0 = rows0[m.k[0]];
    if (r0.empty()) r0 = extension_row(m.k[0], L0, M);
    if (!rows1.count(m.k[1])) rows1[m.k[1]] = extension_row(m.k[1], L1, M);
    auto& acc = partial[m.k[1]];
    if (acc.empty()) acc.assign(static_cast<std::size_t>(W), cplx{});
    for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += v * r0[j];
  }
  double s = 0.0;
  for (int i = 0; i < W; ++i) {
    const double b0 = kPi * (i - M) / L0;
    for (int j = 0; j < W; ++j) {
      const double b1 = kPi * (j - M) / L1;
      const double xi2 = b0 * b0 + b1 * b1;
      if (xi2 == 0.0) continue;
      cplx c{};
      for (const auto& [k1, acc] : partial) c += acc[static_cast<std::size_t>(i)] * rows1[k1][static_cast<std::size_t>(j)];
      s += std::pow(xi2, 0.5 * s2) * std::norm(c);
    }
  }
  return std::sqrt(s);
}

std::vector<NormReport> sobolev_equivalence_study(const std::vector<double>& thetas,
                                                  const std::vector<SpectralField>& family) {
  if (family.size() < 10) throw ConfigError("Sobolev study needs at least 10 fields");
  std::vector<NormReport> rows;
  for (double th : thetas) {
    double lo = INFINITY;
    double hi = -INFINITY;
    for (const auto& f : family) {
      const double a = approx::fractional_norm(f, th);
      if (a == 0.0) continue;
      const double r = sobolev_surrogate(f, th) / a;
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    std::string meta = "fields=" + std::to_string(family.size());
    if (th == 0.0 || th == 0.5) {
      meta += " exact";
    } else {
      meta += " series_terms=" + std::to_string(family.front().op().dim() == 1 ? kSobolevTerms1d : kSobolevTerms2d);
    }
    if (th == 0.25) meta += " non-conclusive";
    rows.push_back(NormReport::make("sobolev_ratio_min", {{"theta", th}}, lo, 1.0, meta));
    rows.push_back(NormReport::make("sobolev_ratio_max", {{"theta", th}}, hi, 1.0, meta));
  }
  return rows;
}

std::vector<NormReport> truncation_trend(const TruncationConfig& cfg) {
  if (cfg.dim < 1 || cfg.dim > 3) throw ConfigError("truncation dimension must be 1, 2 or 3");
  if (!(cfg.p > 1.0) || !std::isfinite(cfg.p)) throw ConfigError("p must lie in (1, inf)");
  if (cfg.samples < 1) throw ConfigError("samples must be >= 1");
  const auto op = OperatorSpec::torus_laplacian(DomainSpec::torus(cfg.dim));
  std::vector<NormReport> rows;
  for (int n : cfg.ns) {
    if (n < 1) throw ConfigError("truncation orders must be >= 1");
    const int band = 2 * n;
    const int N = 8 * n + 4;
    std::array<int, 3> res{1, 1, 1};
    for (int a = 0; a < cfg.dim; ++a) res[static_cast<std::size_t>(a)] = N;

    std::vector<SpectralField> family;
    for (int i = 0; i < cfg.samples; ++i) {
      auto rng = sample_rng(cfg.seed, static_cast<std::uint64_t>(n) * 1000 + static_cast<std::uint64_t>(i));
      std::uniform_real_distribution<double> radius(0.6, 2.4);
      std::uniform_real_distribution<double> pos(0.0, 2.0 * kPi);
      const double r = radius(rng);
      const Point c{pos(rng), pos(rng), pos(rng)};
      family.push_back(smoothed_indicator(op, r, c, 0.25 / (band * band), band));
    }
    const std::uint64_t seed = cfg.seed * 7919 + static_cast<std::uint64_t>(n);
    for (const auto& mult : {approx::spherical_multiplier(n), approx::cubic_multiplier(n)}) {
      auto res_n = operator_norm_lower_bound(mult, cfg.p, family, res, seed);
      auto rep = res_n.report;
      rep.quantity = "truncation_" + mult.name;
      rep.params = {{"d", cfg.dim}, {"p", cfg.p}, {"n", n}};
      rows.push_back(std::move(rep));
    }
  }
  return rows;
}

bool cubic_sequence_bounded(const std::vector<NormReport>& rows) {
  std::vector<std::pair<double, double>> seq;
  for (const auto& r : rows) {
    if (r.quantity == "truncation_cubic") seq.emplace_back(r.param("n"), r.value);
  }
  if (seq.size() < 3) return false;
  std::sort(seq.begin(), seq.end());
  double first = 0.0;
  double all = 0.0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i < 3) first = std::max(first, seq[i].second);
    all = std::max(all, seq[i].second);
  }
  return all <= 1.2 * first;
}

}  // namespace spectral::lab
