#pragma once

#include <vector>

#include "cns/harmonic/littlewood_paley.hpp"

namespace cns::harmonic {

/// Radii used by the discrete maximal function: 0, dx, 2 dx, ..., L/2.
std::vector<double> maximal_radii(const TorusGrid& grid);

/// Centered maximal function: at each grid point, the largest mean of |f|
/// over the periodic discrete balls of radius in maximal_radii. Radius 0 is
/// the point itself, so M[f] >= |f| holds pointwise.
SpectralField maximal_function(const SpectralField& f);

}  // namespace cns::harmonic
