#pragma once

#include "spectral/field.hpp"

namespace spectral {

/// Orthogonal projection onto divergence-free fields: per mode
/// u(k) -> (I - k k^T/|k|^2) u(k), expressed in the Stokes polarization
/// basis. The k = 0 mean is kept unchanged. Accepts a vector torus
/// Laplacian field, or a Stokes field (returned unchanged).
SpectralField leray_project(const SpectralField& f);

/// Re-expresses a Stokes field in Cartesian components (vector torus
/// Laplacian field on the same torus).
SpectralField to_cartesian(const SpectralField& stokes);

/// max_k |k . u(k)| of a vector torus field (Stokes fields give 0 up to
/// round-off of the basis).
double divergence_residual(const SpectralField& f);

/// Coefficient inner product <f, g> = sum conj(f_j) g_j over Cartesian
/// components.
cplx coefficient_inner_product(const SpectralField& f, const SpectralField& g);

}  // namespace spectral
