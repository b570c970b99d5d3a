#pragma once

#include <limits>

#include "cns/spectral/field.hpp"

namespace cns::spectral {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Discrete L^p norm (sum |f|^p dx^d)^(1/p); p = infinity gives the max.
/// @throws std::invalid_argument for p < 1.
double lp_norm(const SpectralField& f, double p);
/// L^p norm of the pointwise Euclidean magnitude.
double lp_norm(const VectorField& v, double p);
/// L^p norm of the pointwise Frobenius magnitude.
double lp_norm(const TensorField& t, double p);
double lp_norm_values(const std::vector<double>& values, double cell_volume, double p);

double sup_norm(const SpectralField& f);
double sup_norm(const VectorField& v);
double sup_norm(const TensorField& t);

/// Quadrature inner product sum f g dx^d.
double inner_product(const SpectralField& f, const SpectralField& g);
double inner_product(const VectorField& f, const VectorField& g);

/// Integral of f over the torus.
double integral(const SpectralField& f);

}  // namespace cns::spectral
