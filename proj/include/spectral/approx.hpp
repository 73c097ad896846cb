#pragma once

#include <functional>
#include <string>

#include "spectral/field.hpp"

namespace spectral::approx {

/// Parameters shared by the smoothing/truncation estimates.
struct SmoothingParams {
  double theta = 0.1;  // semigroup time / truncation parameter
  double alpha = 0.0;
  double beta = 0.0;
  double kappa = 0.0;
  double gamma = 0.0;  // embedding exponent, >= 0

  void validate() const;
};

/// Diagonal operator acting on eigencoefficients: u_j -> factor(j) u_j.
struct Multiplier {
  std::string name;
  std::function<double(const ModeIndex&, double eigenvalue)> factor;
};

Multiplier identity_multiplier();
Multiplier semigroup_multiplier(double theta);
Multiplier pi_theta_multiplier(double theta);
Multiplier spherical_multiplier(int n);
Multiplier cubic_multiplier(int n);

SpectralField apply_multiplier(const SpectralField& f, const Multiplier& m);

/// e^{-theta A}: scales each coefficient by exp(-theta*lambda). theta = 0 is
/// the identity; negative theta throws ConfigError.
SpectralField semigroup_apply(const SpectralField& f, double theta);

/// Finite-rank smoothing truncation: keeps modes with lambda < theta^-2
/// (strict) and damps each by exp(-theta*lambda).
SpectralField pi_theta(const SpectralField& f, double theta);

/// sqrt(sum lambda^{2 alpha} |u_j|^2) over modes with lambda > 0.
double fractional_norm(const SpectralField& f, double alpha);

/// A^alpha: per-mode scaling by lambda^alpha. Zero-eigenvalue modes (torus
/// mean) are left untouched.
SpectralField apply_fractional_power(const SpectralField& f, double alpha);

/// sup over lambda >= theta^-2 of lambda^kappa exp(-sqrt(lambda)), in closed form.
double phi(double theta, double kappa);

/// sup over lambda >= 0 of lambda^gamma exp(-lambda) = (gamma/e)^gamma, with 0^0 = 1.
double c_gamma(double gamma);

/// Constant of the smoothing estimate
///   ||e^{-theta A} u||_{D(A^beta)} <= C ||u||_{D(A^alpha)},
/// c_gamma(beta-alpha) theta^{-(beta-alpha)} for beta >= alpha and
/// exp(-lambda_1 theta) lambda_1^{beta-alpha} otherwise.
double smoothing_constant(double theta, double alpha, double beta, double lambda_1);

/// Fourier partial sums on the torus: Euclidean ball |k| <= n and cube
/// max|k_j| <= n.
SpectralField spherical_truncate(const SpectralField& f, int n);
SpectralField cubic_truncate(const SpectralField& f, int n);

}  // namespace spectral::approx
