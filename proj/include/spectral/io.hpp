#pragma once

#include <iosfwd>
#include <string>

#include "spectral/field.hpp"

namespace spectral {

/// CSV with header `k1,...,kd,polarization,re,im`, one row per stored
/// coefficient in ModeIndex order. Values use 17 significant digits so a
/// read back reproduces the field exactly.
void write_spectral_csv(std::ostream& os, const SpectralField& f);
SpectralField read_spectral_csv(std::istream& is, const OperatorSpec& op);

/// CSV with header `x1,...,xd,re,im` (scalar) or `x1,...,xd,re1,im1,...`
/// (vector), one row per grid point.
void write_grid_csv(std::ostream& os, const GridField& g);

/// Shortest round-trip representation used throughout CSV output.
std::string format_double(double v);

}  // namespace spectral
