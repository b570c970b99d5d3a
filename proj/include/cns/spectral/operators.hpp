#pragma once

#include <functional>

#include "cns/spectral/field.hpp"

namespace cns::spectral {

/// Lame viscosities with the derived nu = mu + lambda.
class LameParameters {
public:
    /// @throws std::invalid_argument unless mu > 0 and mu + lambda > 0.
    LameParameters(double mu, double lambda);

    double mu() const { return mu_; }
    double lambda() const { return lambda_; }
    double nu() const { return mu_ + lambda_; }

private:
    double mu_;
    double lambda_;
};

/// Applies a Fourier multiplier given as a function of the flat mode index.
SpectralField apply_multiplier(const SpectralField& f, const std::function<Complex(std::size_t)>& symbol);

SpectralField partial_derivative(const SpectralField& f, int axis);
VectorField gradient(const SpectralField& f);
SpectralField divergence(const VectorField& v);
SpectralField laplacian(const SpectralField& f);
/// Entry (i, j) holds d_i d_j f built from two first derivatives.
TensorField hessian(const SpectralField& f);
/// Entry (i, j) holds d_j v_i.
TensorField gradient(const VectorField& v);

/// (eta Id - kappa Laplacian)^{-1} f.
/// @throws std::invalid_argument if eta <= 0 or kappa < 0.
SpectralField helmholtz_inverse(const SpectralField& f, double eta, double kappa = 1.0);
VectorField helmholtz_inverse(const VectorField& v, double eta, double kappa = 1.0);

/// Laplacian (Id - Laplacian)^{-1} f written as (Id - Laplacian)^{-1} f - f.
SpectralField bounded_composite(const SpectralField& f);

struct LeraySplit {
    VectorField solenoidal;  ///< divergence-free part, carries the zero mode
    VectorField gradient;    ///< curl-free part
};

LeraySplit leray_split(const VectorField& v);

/// exp(-t L) with L = -mu Laplacian - lambda grad div, acting as
/// exp(-mu |k|^2 t) on the solenoidal part and exp(-nu |k|^2 t) on the gradient part.
/// @throws std::invalid_argument for t < 0 or mismatched dimension.
VectorField lame_semigroup(const VectorField& v, double t, const LameParameters& lame);
/// L v with the same symbol as the semigroup generator.
VectorField lame_apply(const VectorField& v, const LameParameters& lame);

/// Zeroes every mode with some |m_i| > N/3.
SpectralField dealias(const SpectralField& f);
VectorField dealias(const VectorField& v);

/// Heat semigroup exp(kappa t Laplacian).
SpectralField heat_semigroup(const SpectralField& f, double t, double kappa = 1.0);

/// Mode count kept per half-axis by the two-thirds rule.
int dealias_cutoff(const TorusGrid& grid);

}  // namespace cns::spectral
