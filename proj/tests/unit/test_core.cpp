#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "spectral/error.hpp"
#include "spectral/io.hpp"
#include "spectral/leray.hpp"
#include "spectral/transforms.hpp"
#include "test_support.hpp"

using namespace spectral;
using spectral::testing::random_divergence_free;
using spectral::testing::random_field;

namespace {
constexpr double kPi = std::numbers::pi;

OperatorSpec interval_pi() { return OperatorSpec::dirichlet_laplacian(DomainSpec::interval(kPi)); }
}  // namespace

TEST_CASE("domain and operator invariants") {
  CHECK_THROWS_AS(DomainSpec::interval(0.0), ConfigError);
  CHECK_THROWS_AS(DomainSpec::box({1.0, -2.0}), ConfigError);
  CHECK_THROWS_AS(DomainSpec::torus(4), ConfigError);
  CHECK_THROWS_AS(OperatorSpec::torus_stokes(DomainSpec::torus(1)), ConfigError);
  CHECK_THROWS_AS(OperatorSpec::dirichlet_laplacian(DomainSpec::torus(2)), ConfigError);
  CHECK_THROWS_AS(OperatorSpec::torus_laplacian(DomainSpec::interval(1.0)), ConfigError);

  const auto op = interval_pi();
  CHECK_FALSE(op.is_valid(ModeIndex::scalar({0})));
  const auto stokes = OperatorSpec::torus_stokes(DomainSpec::torus(2));
  CHECK(stokes.is_valid(ModeIndex::vector({1, 0}, 1)));
  CHECK_FALSE(stokes.is_valid(ModeIndex::vector({1, 0}, 2)));
  CHECK(stokes.is_valid(ModeIndex::vector({0, 0}, 2)));
}

TEST_CASE("enumerate_modes on the Dirichlet interval") {
  const auto modes = enumerate_modes(interval_pi(), 5.0);
  REQUIRE(modes.size() == 2);
  CHECK(modes[0].index.k[0] == 1);
  CHECK(modes[0].eigenvalue == 1.0);
  CHECK(modes[1].index.k[0] == 2);
  CHECK(modes[1].eigenvalue == 4.0);
  for (double x : {0.3, 1.1, 2.9}) {
    CHECK(modes[1].value_at({x, 0, 0})[0].real() ==
          doctest::Approx(std::sqrt(2.0 / kPi) * std::sin(2 * x)).epsilon(1e-14));
  }
}

TEST_CASE("enumerate_modes on the 2D torus includes the zero mode") {
  const auto modes = enumerate_modes(OperatorSpec::torus_laplacian(DomainSpec::torus(2)), 1.0);
  REQUIRE(modes.size() == 5);
  CHECK(modes[0].eigenvalue == 0.0);
  CHECK(modes[0].index.norm_sq() == 0);
  for (std::size_t i = 1; i < 5; ++i) CHECK(modes[i].eigenvalue == 1.0);
  // lexicographic tie-break
  CHECK(modes[1].index < modes[2].index);
  CHECK(modes[2].index < modes[3].index);
}

TEST_CASE("enumerate_modes on the Dirichlet square") {
  const auto op = OperatorSpec::dirichlet_laplacian(DomainSpec::box({kPi, kPi}));
  const auto modes = enumerate_modes(op, 5.0);
  // oracle: brute-force k1^2 + k2^2 <= 5 with k_i >= 1
  std::vector<std::pair<int, int>> expect;
  for (int a = 1; a <= 5; ++a)
    for (int b = 1; b <= 5; ++b)
      if (a * a + b * b <= 5) expect.emplace_back(a, b);
  REQUIRE(modes.size() == expect.size());
  CHECK(modes[0].index.k[0] == 1);
  CHECK(modes[0].index.k[1] == 1);
  CHECK(modes[0].eigenvalue == 2.0);
  CHECK(modes[1].index.k == std::array<int, 3>{1, 2, 0});
  CHECK(modes[2].index.k == std::array<int, 3>{2, 1, 0});
  CHECK(modes[1].eigenvalue == 5.0);
}

TEST_CASE("enumerate_modes respects the mode cap") {
  const auto op = OperatorSpec::torus_laplacian(DomainSpec::torus(3));
  CHECK_THROWS_AS(enumerate_modes(op, 400.0, 1000), ResourceLimitError);
  CHECK_THROWS_AS(enumerate_modes(op, -1.0), ConfigError);
}

TEST_CASE("Stokes modes are orthogonal to k") {
  for (int d : {2, 3}) {
    const auto op = OperatorSpec::torus_stokes(DomainSpec::torus(d));
    for (const auto& ep : enumerate_modes(op, 6.0)) {
      if (ep.index.norm_sq() == 0) continue;
      const Vec3 e = op.direction(ep.index);
      double dot = 0.0;
      double nrm = 0.0;
      for (int c = 0; c < d; ++c) {
        dot += e[static_cast<std::size_t>(c)] * ep.index.k[static_cast<std::size_t>(c)];
        nrm += e[static_cast<std::size_t>(c)] * e[static_cast<std::size_t>(c)];
      }
      CHECK(std::abs(dot) < 1e-15);
      CHECK(nrm == doctest::Approx(1.0).epsilon(1e-15));
    }
  }
  // parallel-to-e_z fallback
  const auto basis = stokes_polarization_basis(3, {0, 0, 2});
  CHECK(std::abs(basis[0][2]) < 1e-15);
  CHECK(std::abs(basis[1][2]) < 1e-15);
}

TEST_CASE("synthesize matches direct evaluation") {
  SUBCASE("single sine mode") {
    SpectralField f(interval_pi());
    f.set(ModeIndex::scalar({1}), 1.0);
    const auto g = synthesize(f, {33, 1, 1});
    for (std::size_t p = 0; p < g.num_points(); ++p) {
      const double x = g.point(p)[0];
      CHECK(std::abs(g.at(p, 0) - std::sqrt(2.0 / kPi) * std::sin(x)) < 1e-14);
    }
  }
  SUBCASE("empty field") {
    SpectralField f(interval_pi());
    const auto g = synthesize(f, {9, 1, 1});
    for (const auto& v : g.values()) CHECK(v == cplx{});
  }
  SUBCASE("two modes vs pointwise oracle at random points") {
    const auto op = OperatorSpec::dirichlet_laplacian(DomainSpec::box({2.0, 3.0}));
    SpectralField f(op);
    f.set(ModeIndex::scalar({1, 2}), 0.7);
    f.set(ModeIndex::scalar({3, 1}), -1.3);
    const auto g = synthesize(f, {13, 13, 1});
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::size_t> pick(0, g.num_points() - 1);
    for (int t = 0; t < 10; ++t) {
      const std::size_t p = pick(rng);
      const Point x = g.point(p);
      const double direct = 0.7 * (1.0 / std::sqrt(1.5)) * std::sin(kPi * x[0] / 2.0) *
                                std::sin(2 * kPi * x[1] / 3.0) -
                            1.3 * (1.0 / std::sqrt(1.5)) * std::sin(3 * kPi * x[0] / 2.0) *
                                std::sin(kPi * x[1] / 3.0);
      CHECK(std::abs(g.at(p, 0) - direct) < 1e-12);
    }
  }
  SUBCASE("torus vector field vs EigenPair evaluator") {
    std::mt19937_64 rng(11);
    const auto f = random_divergence_free(3, rng, 6, 6.0);
    const auto g = synthesize(f, {9, 9, 9});
    for (std::size_t p : {0ul, 17ul, 400ul, 728ul}) {
      Vec3c direct{};
      for (const auto& [m, v] : f) {
        const auto w = f.op().evaluate(m, g.point(p));
        for (int c = 0; c < 3; ++c) direct[static_cast<std::size_t>(c)] += v * w[static_cast<std::size_t>(c)];
      }
      for (int c = 0; c < 3; ++c) CHECK(std::abs(g.at(p, c) - direct[static_cast<std::size_t>(c)]) < 1e-12);
    }
  }
}

TEST_CASE("synthesize rejects under-resolved grids") {
  SpectralField f(OperatorSpec::torus_laplacian(DomainSpec::torus(2)));
  f.set(ModeIndex::scalar({3, 0}), 1.0);
  CHECK_THROWS_AS(synthesize(f, {6, 8, 1}), AliasingError);
  CHECK_NOTHROW(synthesize(f, {7, 2, 1}));
}

TEST_CASE("analyze inverts synthesize") {
  SUBCASE("random 5-mode Dirichlet field") {
    const auto op = OperatorSpec::dirichlet_laplacian(DomainSpec::box({1.0, 2.0}));
    std::mt19937_64 rng(3);
    const auto f = random_field(op, rng, 5, 200.0);
    const auto g = synthesize(f);
    const auto modes = enumerate_modes(op, 200.0);
    const auto back = analyze(g, modes);
    CHECK(max_coefficient_difference(f, back) < 1e-10);
  }
  SUBCASE("random torus Stokes field") {
    std::mt19937_64 rng(5);
    const auto f = random_divergence_free(2, rng, 5, 20.0);
    const auto g = synthesize(f);
    const auto modes = enumerate_modes(f.op(), 20.0);
    CHECK(max_coefficient_difference(f, analyze(g, modes)) < 1e-12);
  }
  SUBCASE("zero field") {
    GridField g(DomainSpec::interval(kPi), {17, 1, 1}, 1);
    const auto back = analyze(g, enumerate_modes(interval_pi(), 9.0));
    CHECK(back.empty());
  }
  SUBCASE("sampled sin(2x)") {
    GridField g(DomainSpec::interval(kPi), {33, 1, 1}, 1);
    for (std::size_t p = 0; p < g.num_points(); ++p) {
      g.at(p, 0) = std::sqrt(2.0 / kPi) * std::sin(2.0 * g.point(p)[0]);
    }
    const auto back = analyze(g, enumerate_modes(interval_pi(), 16.0));
    CHECK(std::abs(back.get(ModeIndex::scalar({2})) - 1.0) < 1e-10);
    for (int k : {1, 3, 4}) CHECK(std::abs(back.get(ModeIndex::scalar({k}))) < 1e-10);
  }
}

TEST_CASE("analyze self-check reports the offending mode pair") {
  GridField g(DomainSpec::interval(kPi), {9, 1, 1}, 1);
  try {
    analyze(g, enumerate_modes(interval_pi(), 100.0));
    FAIL("expected AccuracyError");
  } catch (const AccuracyError& e) {
    CHECK(std::string(e.what()).find("index pair") != std::string::npos);
  }
}

TEST_CASE("quadrature Gram matrix is the identity") {
  for (const auto& op : {interval_pi(), OperatorSpec::dirichlet_laplacian(DomainSpec::box({1.0, 1.5})),
                         OperatorSpec::torus_laplacian(DomainSpec::torus(2))}) {
    const auto modes = enumerate_modes(op, 40.0);
    SpectralField probe(op);
    for (const auto& ep : modes) probe.set(ep.index, 1.0);
    const auto res = default_resolution(probe);
    for (std::size_t i = 0; i < modes.size(); i += 3) {
      SpectralField fi(op);
      fi.set(modes[i].index, 1.0);
      const auto g = synthesize(fi, res);
      const auto back = analyze(g, modes);
      for (const auto& ep : modes) {
        const double expect = ep.index == modes[i].index ? 1.0 : 0.0;
        CHECK(std::abs(back.get(ep.index) - expect) < 1e-8);
      }
    }
  }
}

TEST_CASE("lp_norm closed forms") {
  GridField c(DomainSpec::torus(1), {16, 1, 1}, 1);
  for (auto& v : c.values()) v = -3.0;
  for (double p : {1.0, 2.0, 3.5}) CHECK(lp_norm(c, p) == doctest::Approx(3.0 * std::pow(2 * kPi, 1.0 / p)));
  CHECK(lp_norm(c, kInfinity) == 3.0);

  GridField s(DomainSpec::interval(kPi), {129, 1, 1}, 1);
  for (std::size_t p = 0; p < s.num_points(); ++p) s.at(p, 0) = std::sin(s.point(p)[0]);
  CHECK(lp_norm(s, 2.0) == doctest::Approx(std::sqrt(kPi / 2.0)).epsilon(1e-12));
  CHECK(lp_norm(s, 4.0) == doctest::Approx(std::pow(3.0 * kPi / 8.0, 0.25)).epsilon(1e-12));
  CHECK_THROWS_AS(lp_norm(s, 0.5), ConfigError);
}

TEST_CASE("lp_norm is refinement-stable for non-polynomial integrands") {
  SpectralField f(interval_pi());
  f.set(ModeIndex::scalar({1}), 1.0);
  f.set(ModeIndex::scalar({3}), 0.4);
  const double coarse = lp_norm(synthesize(f, {201, 1, 1}), 3.0);
  const double fine = lp_norm(synthesize(f, {401, 1, 1}), 3.0);
  CHECK(std::abs(coarse - fine) < 1e-8);
  // even column count exercises the 3/8 panel
  CHECK(std::abs(lp_norm(synthesize(f, {400, 1, 1}), 3.0) - fine) < 1e-8);
}

TEST_CASE("Parseval") {
  std::mt19937_64 rng(21);
  for (const auto& op : {interval_pi(), OperatorSpec::torus_laplacian(DomainSpec::torus(2)),
                         OperatorSpec::torus_stokes(DomainSpec::torus(3))}) {
    const auto f = op.kind() == OperatorKind::TorusStokes ? random_divergence_free(3, rng, 8, 8.0)
                                                         : random_field(op, rng, 8, 30.0);
    const double l2 = lp_norm(synthesize(f), 2.0);
    CHECK(l2 * l2 == doctest::Approx(std::pow(coefficient_l2_norm(f), 2)).epsilon(1e-12));
  }
}

TEST_CASE("Dirichlet samples vanish exactly on the boundary") {
  const auto op = OperatorSpec::dirichlet_laplacian(DomainSpec::box({1.3, 0.7}));
  std::mt19937_64 rng(4);
  const auto g = synthesize(random_field(op, rng, 10, 400.0));
  for (std::size_t p = 0; p < g.num_points(); ++p) {
    const auto idx = g.unflatten(p);
    const bool boundary = idx[0] == 0 || idx[0] == g.resolution(0) - 1 || idx[1] == 0 ||
                          idx[1] == g.resolution(1) - 1;
    if (boundary) CHECK(g.at(p, 0) == cplx{});
  }
  const auto modes = enumerate_modes(op, 100.0);
  for (const auto& ep : modes) {
    CHECK(ep.value_at({0.0, 0.3, 0.0})[0] == cplx{});
    CHECK(ep.value_at({1.3, 0.3, 0.0})[0] == cplx{});
    CHECK(ep.value_at({0.5, 0.7, 0.0})[0] == cplx{});
  }
}

TEST_CASE("leray_project") {
  const auto vec = OperatorSpec::torus_laplacian(DomainSpec::torus(2), 2);
  SUBCASE("gradient mode is annihilated") {
    SpectralField f(vec);
    f.set(ModeIndex::vector({1, 2}, 1), 1.0);
    f.set(ModeIndex::vector({1, 2}, 2), 2.0);
    CHECK(coefficient_l2_norm(leray_project(f)) < 1e-15);
  }
  SUBCASE("solenoidal mode is unchanged") {
    SpectralField f(vec);
    f.set(ModeIndex::vector({1, 2}, 1), cplx(2.0, 1.0));
    f.set(ModeIndex::vector({1, 2}, 2), cplx(-1.0, -0.5));
    CHECK(max_coefficient_difference(to_cartesian(leray_project(f)), f) < 1e-15);
  }
  SUBCASE("mean is kept") {
    SpectralField f(vec);
    f.set(ModeIndex::vector({0, 0}, 2), 1.5);
    CHECK(to_cartesian(leray_project(f)).get(ModeIndex::vector({0, 0}, 2)) == cplx(1.5));
  }
  SUBCASE("idempotent and self-adjoint on random fields") {
    std::mt19937_64 rng(8);
    for (int d : {2, 3}) {
      const auto op = OperatorSpec::torus_laplacian(DomainSpec::torus(d), d);
      for (int trial = 0; trial < 20; ++trial) {
        const auto f = random_field(op, rng, 12, 20.0);
        const auto g = random_field(op, rng, 12, 20.0);
        const auto pf = to_cartesian(leray_project(f));
        const auto ppf = to_cartesian(leray_project(pf));
        CHECK(max_coefficient_difference(pf, ppf) < 1e-14);
        CHECK(divergence_residual(pf) < 1e-13);
        const auto pg = to_cartesian(leray_project(g));
        CHECK(std::abs(coefficient_inner_product(pf, g) - coefficient_inner_product(f, pg)) < 1e-12);
        CHECK(is_conjugate_symmetric(pf));
      }
    }
  }
  CHECK_THROWS_AS(leray_project(SpectralField(OperatorSpec::torus_laplacian(DomainSpec::torus(2)))),
                  ConfigError);
}

TEST_CASE("spectral CSV round trip") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = random_divergence_free(3, rng, 10, 12.0);
    std::stringstream ss;
    write_spectral_csv(ss, f);
    const auto back = read_spectral_csv(ss, f.op());
    CHECK(max_coefficient_difference(f, back) == 0.0);
  }
  std::stringstream bad("k1,re,im\n");
  CHECK_THROWS_AS(read_spectral_csv(bad, interval_pi()), ConfigError);
}

TEST_CASE("grid CSV layout") {
  SpectralField f(interval_pi());
  f.set(ModeIndex::scalar({1}), 1.0);
  std::stringstream ss;
  write_grid_csv(ss, synthesize(f, {3, 1, 1}));
  std::string header;
  std::getline(ss, header);
  CHECK(header == "x1,re,im");
  std::string first;
  std::getline(ss, first);
  CHECK(first == "0,0,0");
}
