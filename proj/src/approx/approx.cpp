#include "spectral/approx.hpp"

#include <cmath>

#include "spectral/error.hpp"

namespace spectral::approx {

namespace {

void require_positive_theta(double theta) {
  if (!(theta > 0.0) || !std::isfinite(theta)) throw ConfigError("theta must be finite and > 0");
}

void require_torus(const SpectralField& f) {
  if (!f.op().domain().periodic()) throw ConfigError("Fourier truncations need a torus field");
}

}  // namespace

void SmoothingParams::validate() const {
  require_positive_theta(theta);
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(kappa)) {
    throw ConfigError("fractional exponents must be finite");
  }
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ConfigError("gamma must be finite and >= 0");
}

Multiplier identity_multiplier() {
  return {"identity", [](const ModeIndex&, double) { return 1.0; }};
}

Multiplier semigroup_multiplier(double theta) {
  if (!(theta >= 0.0) || !std::isfinite(theta)) throw ConfigError("semigroup time must be >= 0");
  return {"semigroup", [theta](const ModeIndex&, double lam) { return std::exp(-theta * lam); }};
}

Multiplier pi_theta_multiplier(double theta) {
  require_positive_theta(theta);
  const double cutoff = 1.0 / (theta * theta);
  return {"pi_theta", [theta, cutoff](const ModeIndex&, double lam) {
            return lam < cutoff ? std::exp(-theta * lam) : 0.0;
          }};
}

Multiplier spherical_multiplier(int n) {
  if (n < 0) throw ConfigError("truncation order must be >= 0");
  const long n2 = static_cast<long>(n) * n;
  return {"spherical", [n2](const ModeIndex& m, double) { return m.norm_sq() <= n2 ? 1.0 : 0.0; }};
}

Multiplier cubic_multiplier(int n) {
  if (n < 0) throw ConfigError("truncation order must be >= 0");
  return {"cubic", [n](const ModeIndex& m, double) { return m.max_abs() <= n ? 1.0 : 0.0; }};
}

SpectralField apply_multiplier(const SpectralField& f, const Multiplier& mult) {
  SpectralField out(f.op());
  for (const auto& [m, v] : f) {
    const double s = mult.factor(m, f.op().eigenvalue(m));
    if (s != 0.0) out.set(m, s * v);
  }
  return out;
}

SpectralField semigroup_apply(const SpectralField& f, double theta) {
  if (theta == 0.0) return f;
  return apply_multiplier(f, semigroup_multiplier(theta));
}

SpectralField pi_theta(const SpectralField& f, double theta) {
  return apply_multiplier(f, pi_theta_multiplier(theta));
}

double fractional_norm(const SpectralField& f, double alpha) {
  double s = 0.0;
  for (const auto& [m, v] : f) {
    const double lam = f.op().eigenvalue(m);
    if (lam <= 0.0) continue;
    s += std::pow(lam, 2.0 * alpha) * std::norm(v);
  }
  return std::sqrt(s);
}

SpectralField apply_fractional_power(const SpectralField& f, double alpha) {
  if (alpha == 0.0) return f;
  SpectralField out(f.op());
  for (const auto& [m, v] : f) {
    const double lam = f.op().eigenvalue(m);
    out.set(m, lam > 0.0 ? std::pow(lam, alpha) * v : v);
  }
  return out;
}

double phi(double theta, double kappa) {
  require_positive_theta(theta);
  if (!std::isfinite(kappa)) throw ConfigError("kappa must be finite");
  if (kappa <= 0.0 || theta * 2.0 * kappa <= 1.0) {
    return std::exp(-2.0 * kappa * std::log(theta) - 1.0 / theta);
  }
  return std::exp(2.0 * kappa * (std::log(2.0 * kappa) - 1.0));
}

double c_gamma(double gamma) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ConfigError("gamma must be finite and >= 0");
  if (gamma == 0.0) return 1.0;
  return std::exp(gamma * (std::log(gamma) - 1.0));
}

double smoothing_constant(double theta, double alpha, double beta, double lambda_1) {
  require_positive_theta(theta);
  if (!(lambda_1 > 0.0)) throw ConfigError("lambda_1 must be > 0");
  const double gap = beta - alpha;
  if (gap >= 0.0) return c_gamma(gap) * std::pow(theta, -gap);
  return std::exp(-lambda_1 * theta) * std::pow(lambda_1, gap);
}

SpectralField spherical_truncate(const SpectralField& f, int n) {
  require_torus(f);
  return apply_multiplier(f, spherical_multiplier(n));
}

SpectralField cubic_truncate(const SpectralField& f, int n) {
  require_torus(f);
  return apply_multiplier(f, cubic_multiplier(n));
}

}  // namespace spectral::approx
