#pragma once

#include <cstddef>

#include "cns/spectral/field.hpp"

namespace cns::harmonic {

using spectral::SpectralField;
using spectral::TorusGrid;
using spectral::VectorField;

/// C-infinity step: 1 for s <= 0, 0 for s >= 1.
double smooth_step(double s);
/// Radial low-pass profile: 1 on |xi| <= 1, 0 on |xi| >= 2.
double low_pass_profile(double radius);
/// Annulus profile low_pass(r) - low_pass(2r), supported in 1/2 <= r <= 2.
double annulus_profile(double radius);

/// Index range of the dyadic blocks that can be nonzero on a grid.
struct BlockRange {
    int first;
    int last;
};

BlockRange block_range(const TorusGrid& grid, bool homogeneous);

/// Multiplier of block j at a flat mode index. Nonhomogeneous blocks:
/// j <= -2 vanish, j = -1 is the low-pass profile at scale 1/2, j >= 0 the
/// annulus profile at scale 2^j, so the blocks sum to one. Homogeneous
/// blocks use the annulus profile for every j.
double block_symbol(const TorusGrid& grid, int j, bool homogeneous, std::size_t flat);

SpectralField dyadic_block(const SpectralField& f, int j, bool homogeneous);
VectorField dyadic_block(const VectorField& v, int j, bool homogeneous);

/// Low-frequency cutoff S_j = sum of the blocks below j: the low-pass profile
/// at scale 2^{j-1} for j >= 0, zero for j < 0.
SpectralField low_frequency_cutoff(const SpectralField& f, int j);

}  // namespace cns::harmonic
