#pragma once

#include "cns/harmonic/littlewood_paley.hpp"

namespace cns::harmonic {

/// Modified Riesz transform with symbol i k_i / (eta + |k|^2)^{1/2}.
/// @throws std::invalid_argument if eta <= 0 or the axis is out of range.
SpectralField modified_riesz(const SpectralField& f, int axis, double eta);

}  // namespace cns::harmonic
