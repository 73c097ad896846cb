#pragma once

#include <array>
#include <limits>
#include <span>
#include <vector>

#include "spectral/domain.hpp"
#include "spectral/field.hpp"

namespace spectral {

/// Samples a spectral field on a tensor grid. Throws AliasingError unless
/// every axis has at least 2*max|k_i|+1 points.
GridField synthesize(const SpectralField& f, const std::array<int, 3>& resolution);
GridField synthesize(const SpectralField& f);

/// Samples the gradient of a scalar field; component a holds d/dx_a.
GridField synthesize_gradient(const SpectralField& f, const std::array<int, 3>& resolution);

inline constexpr double kOrthonormalityTolerance = 1e-8;

/// Quadrature projection of grid samples onto the listed eigenfunctions.
/// Before projecting, the per-axis quadrature Gram matrix of the listed
/// modes is checked against the identity; a violation throws AccuracyError
/// naming the offending pair.
SpectralField analyze(const GridField& g, std::span<const EigenPair> modes,
                      double tolerance = kOrthonormalityTolerance);

/// Composite-quadrature L^p norm of |g| (Euclidean magnitude for vector
/// fields); p = infinity gives the max over samples.
double lp_norm(const GridField& g, double p);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Dense tensor contraction used by the transforms: applies, axis by axis,
/// a row-major (rows x cols) matrix to a tensor whose axis has length cols.
struct AxisMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<cplx> data;

  cplx& operator()(int r, int c) { return data[static_cast<std::size_t>(r * cols + c)]; }
  cplx operator()(int r, int c) const { return data[static_cast<std::size_t>(r * cols + c)]; }
};

std::vector<cplx> separable_apply(std::vector<cplx> tensor, std::array<int, 3> shape, int dim,
                                  std::span<const AxisMatrix> matrices);

/// Per-axis table of (unnormalized in other axes) eigenfunction factors
/// phi_k(x_i) for k in [k_lo, k_hi] on the grid of `g`'s layout.
/// `derivative` selects d/dx. Values vanish exactly at Dirichlet endpoints.
AxisMatrix axis_eigen_table(const OperatorSpec& op, int axis, int n_points, int k_lo, int k_hi,
                            bool derivative = false);

}  // namespace spectral
