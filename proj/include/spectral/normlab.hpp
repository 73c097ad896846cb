#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spectral/approx.hpp"
#include "spectral/field.hpp"
#include "spectral/report.hpp"

namespace spectral::lab {

enum class Family { RandomSmooth, BoundaryBump, NearExtremal };

std::string family_name(Family f);
Family parse_family(const std::string& name);

struct ExperimentConfig {
  OperatorSpec op = OperatorSpec::torus_laplacian(DomainSpec::torus(2));
  double lambda_max = 64.0;
  Family family = Family::RandomSmooth;
  std::vector<double> thetas;
  std::vector<double> ps;
  int samples = 8;
  int modes = 10;  // modes per random-smooth field
  std::uint64_t seed = 1;
  std::optional<std::array<int, 3>> resolution;  // grid for L^p norms

  void validate() const;
};

/// Deterministic sample family. Sample i draws from a generator seeded by
/// (seed, i), so a family is a prefix of any larger one.
std::vector<SpectralField> sample_family(const ExperimentConfig& cfg);

/// Smoothed indicator of a disc (ball, interval) of radius `radius` centred
/// at `center`, band-limited to max|k_i| <= bandwidth. Torus scalar only.
SpectralField smoothed_indicator(const OperatorSpec& op, double radius, const Point& center,
                                 double smoothing, int bandwidth);

struct OperatorNormResult {
  NormReport report;
  SpectralField field;
};

inline constexpr int kAscentIterations = 200;

/// Lower bound for the L^p operator norm of a diagonal multiplier: best
/// ratio ||Tf||_p/||f||_p over the family, then refined by coordinate
/// ascent on the coefficients of the best field.
OperatorNormResult operator_norm_lower_bound(const approx::Multiplier& t, double p,
                                             const ExperimentConfig& cfg);
OperatorNormResult operator_norm_lower_bound(const approx::Multiplier& t, double p,
                                             std::vector<SpectralField> family,
                                             const std::array<int, 3>& resolution, std::uint64_t seed);

enum class Method { Semigroup, PiTheta };

struct NormTag {
  enum class Kind { Fractional, Lp, H1 } kind = Kind::Fractional;
  double value = 0.0;  // exponent alpha, or p

  static NormTag fractional(double alpha) { return {Kind::Fractional, alpha}; }
  static NormTag lp(double p) { return {Kind::Lp, p}; }
  static NormTag h1() { return {Kind::H1, 1.0}; }
  std::string describe() const;
};

/// Error ||u_theta - u||_X for every theta and X. Rows carry the relative
/// error as ratio (reference = ||u||_X). Throws AccuracyError when a Stokes
/// u_theta leaves the divergence-free subspace or a Dirichlet u_theta does
/// not vanish on the boundary.
std::vector<NormReport> convergence_study(const SpectralField& f, Method method,
                                          const std::vector<NormTag>& norms,
                                          const std::vector<double>& thetas);

inline constexpr int kSobolevTerms1d = 4096;
inline constexpr int kSobolevTerms2d = 512;

/// Zero-extension H^{2 theta} surrogate on the torus of doubled period.
/// theta = 0 and 1/2 are computed by physical-space quadrature, other
/// theta in (0, 3/4) from the truncated extension series.
double sobolev_surrogate(const SpectralField& f, double theta);

/// Min/max of sobolev_surrogate/fractional_norm over the family; two rows
/// per theta. Dirichlet interval or 2D box fields, at least 10 of them.
std::vector<NormReport> sobolev_equivalence_study(const std::vector<double>& thetas,
                                                  const std::vector<SpectralField>& family);

struct TruncationConfig {
  int dim = 2;
  double p = 4.0;
  std::vector<int> ns{4, 8, 12, 16, 20, 24, 28, 32};
  int samples = 4;
  std::uint64_t seed = 1;
};

/// Spherical and cubic partial-sum ratios for n in cfg.ns on smoothed
/// indicators of band 2n sampled on an (8n+4)-point grid per axis.
std::vector<NormReport> truncation_trend(const TruncationConfig& cfg);

/// max over n <= 1.2 * max over the first three n, for the cubic rows.
bool cubic_sequence_bounded(const std::vector<NormReport>& rows);

}  // namespace spectral::lab
