#pragma once

#include "cns/state/fluid_state.hpp"
#include "cns/state/pressure_law.hpp"

namespace cns::state {

/// Dealiased pressure P(1 + rho_dev).
/// @throws std::domain_error naming the violated bound if 1 + rho_dev leaves
///         the validity interval of the law.
SpectralField pressure_field(const SpectralField& rho_dev, const PressureLaw& law);

/// v = -grad (Id - nu Lap)^{-1} P(1 + rho_dev).
VectorField compute_v(const SpectralField& rho_dev, const PressureLaw& law, double nu);

/// u = w + v.
VectorField compose_u(const FluidState& state, const PressureLaw& law);

/// Fields shared by the density equation and the forcing of a normalized state.
struct Kinematics {
    SpectralField pressure;   ///< dealiased P(rho)
    SpectralField resolvent;  ///< (Id - Lap)^{-1} P
    VectorField v;
    VectorField u;
    SpectralField density;    ///< rho = 1 + rho_dev
};

/// @throws std::invalid_argument unless the state is normalized (nu = 1).
Kinematics kinematics(const FluidState& state, const PressureLaw& law);

/// d_t rho_dev = -u . grad rho_dev - rho div w + rho Lap (Id - Lap)^{-1} P, dealiased.
SpectralField rhs_density(const FluidState& state, const PressureLaw& law);
SpectralField rhs_density(const FluidState& state, const Kinematics& kin);

/// The three groups of the forcing in rho d_t w + L w = -rho F.
struct ForcingTerms {
    VectorField pressure_gradient;  ///< rho^{-1} (Id - Lap)^{-1} grad P
    VectorField transport;          ///< u . grad u, i.e. the four w/v transport groups
    VectorField compressive;        ///< -(Id - Lap)^{-1} grad (g(rho) div u - div(P u))
};

/// @throws std::invalid_argument unless normalized; std::domain_error if min rho <= 0.1.
ForcingTerms forcing_terms(const FluidState& state, const PressureLaw& law);
ForcingTerms forcing_terms(const FluidState& state, const PressureLaw& law, const Kinematics& kin);
/// Sum of the forcing groups, dealiased.
VectorField assemble_F(const FluidState& state, const PressureLaw& law);
VectorField assemble_F(const FluidState& state, const PressureLaw& law, const Kinematics& kin);

/// Rescales (t, x) -> (t / nu, x / nu) so that nu = 1: the box length becomes
/// L / nu, viscosities become mu / nu and lambda / nu, density and velocity
/// values are unchanged, and w is recomputed for the normalized splitting.
FluidState normalize_nu(const FluidState& state, const PressureLaw& law);
/// Inverse of normalize_nu; a physical state is returned unchanged.
FluidState denormalize(const FluidState& state, const PressureLaw& law);

struct EnergyTriple {
    double kinetic;           ///< (1/2) int rho |u|^2
    double potential;         ///< int Pi(rho); NaN when unavailable
    double dissipation_rate;  ///< mu int |grad u|^2 + lambda int (div u)^2
    bool potential_available;
};

/// The potential is only reported for laws with inf P' > 0 on the validity interval.
EnergyTriple energy_functional(const FluidState& state, const PressureLaw& law);

}  // namespace cns::state
