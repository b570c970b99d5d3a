#pragma once

#include "cns/state/fluid_state.hpp"
#include "cns/state/pressure_law.hpp"
#include "cns/striated/family.hpp"

namespace cns::striated {

/// Measured left side and C = 1 right side of a stationary estimate.
struct EstimatePair {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio() const { return rhs > 0.0 ? lhs / rhs : 0.0; }
};

/// sup over (i, j) of |d_i d_j (eta Id - Lap)^{-1} g| against
/// (1 + |X|^{4d-5} |grad X|_p / I^{4d-4}) |g|_inf + (|X|^{4d-5} / I^{4d-4}) |d_X g|_p.
/// @throws std::domain_error for a degenerate family, std::invalid_argument for eta <= 0.
EstimatePair tang_estimate_check(const SpectralField& g, const VectorFieldFamily& family, double eta);

/// sup over the family of |d_X grad^2 (eta Id - Lap)^{-1} g|_p (Frobenius over (i, j)) against
/// |grad X|_p (1 + Q) |g|_inf + (1 + Q) |d_X g|_p + (|X|^{4d-4} / I^{4d-4}) |grad X|_p |g|_inf,
/// Q = |X|^{4d-5} |grad X|_p / I^{4d-4}.
EstimatePair tang_dx_estimate_check(const SpectralField& g, const VectorFieldFamily& family, double eta);

/// sup over the family of |d_X g|_p.
double family_directional_norm(const SpectralField& g, const VectorFieldFamily& family);

struct VelocityGradient {
    TensorField grad_u;
    double sup = 0.0;  ///< grid sup of the Frobenius norm
};

/// grad u = grad w - grad^2 (Id - Lap)^{-1} P(rho) for a normalized state.
/// @throws std::invalid_argument if the state is not normalized.
VelocityGradient gradient_u_assembly(const state::FluidState& state, const state::PressureLaw& law);

}  // namespace cns::striated
