#pragma once

#include "cns/spectral/field.hpp"

namespace cns::state {

using spectral::Point;
using spectral::SpectralField;
using spectral::TorusGrid;
using spectral::VectorField;

/// Signed distance to the circle |x - center| = radius (positive inside),
/// using the nearest periodic image of the center.
double disc_signed_distance(const TorusGrid& grid, const Point& center, double radius, const Point& x);

/// Smooth indicator of a disc (ball in d = 3): 1 well inside, 0 well outside,
/// with a C-infinity transition of the given width centred on the boundary.
SpectralField mollified_disc(const TorusGrid& grid, const Point& center, double radius, double width);

/// Patch density deviation eps * indicator, dealiased and rescaled so that
/// its sup norm equals eps. Width defaults to 2 dx when nonpositive.
SpectralField patch_density(const TorusGrid& grid, const Point& center, double radius, double epsilon,
                            double width = 0.0);

/// Smooth low-mode density deviation with sup norm equal to amplitude.
SpectralField smooth_density(const TorusGrid& grid, double amplitude);

/// Smooth low-mode velocity with solenoidal and gradient parts, scaled so the
/// sup of its magnitude equals amplitude.
VectorField smooth_velocity(const TorusGrid& grid, double amplitude);

/// Divergence-free field omega * beta(r) * (-(x2 - c2), x1 - c1) about the box
/// centre (d = 2), with beta = 1 for r <= inner_radius and beta = 0 for
/// r >= outer_radius, so it is a rigid rotation on the inner disc.
/// @throws std::invalid_argument unless d = 2 and 0 < inner < outer <= L / 2.
VectorField rotation_velocity(const TorusGrid& grid, double omega, double inner_radius, double outer_radius);

/// Smooth radial cutoff equal to 1 for r <= inner and 0 for r >= outer.
double radial_cutoff(double r, double inner, double outer);

}  // namespace cns::state
