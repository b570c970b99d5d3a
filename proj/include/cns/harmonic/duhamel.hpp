#pragma once

#include <vector>

#include "cns/harmonic/littlewood_paley.hpp"

namespace cns::harmonic {

/// Heat Duhamel operator on a uniformly sampled source f(t_k), t_k = k dt,
/// by the left-endpoint rule:
///   A_m f(t_n) = sum_{k < n} dt grad^m exp(viscosity (t_n - t_k) Lap) f(t_k).
/// Order 0 returns one component, order 1 the d gradient components, order 2
/// the d^2 Hessian entries in row-major order. A_m f(t_0) = 0.
/// @throws std::invalid_argument for an empty series, order outside {0,1,2},
///         dt <= 0 or viscosity <= 0.
std::vector<VectorField> duhamel_operator(const std::vector<SpectralField>& series, double dt, int order,
                                          double viscosity = 1.0);

}  // namespace cns::harmonic
