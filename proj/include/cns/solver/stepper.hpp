#pragma once

#include <stdexcept>
#include <string>

#include "cns/state/fluid_state.hpp"
#include "cns/state/pressure_law.hpp"
#include "cns/state/reformulation.hpp"

namespace cns::solver {

using state::FluidState;
using state::PressureLaw;

/// Raised when the step violates the CFL restriction; carries |u|_inf dt / dx.
class CflError : public std::runtime_error {
public:
    CflError(const std::string& what, double courant) : std::runtime_error(what), courant_(courant) {}
    double courant() const { return courant_; }

private:
    double courant_;
};

/// Raised when |rho - 1|_inf reaches 0.5.
class DivergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Largest stable step: min(0.4 dx / |u|_inf, 0.25 dx^2 rho_min / (max(mu, nu) |rho - 1|_inf + tiny)).
double cfl_step(const FluidState& state, const PressureLaw& law);
double cfl_step(const FluidState& state, const state::Kinematics& kin);

/// Explicit part of the w equation: (1 - 1/rho) L w - F, dealiased.
spectral::VectorField explicit_w_term(const FluidState& state, const PressureLaw& law, const state::Kinematics& kin);

/// One second-order step of the normalized system.
///
/// The Lame part is integrated exactly by its semigroup S; everything else is
/// explicit. With R the density right-hand side and N the explicit w term,
/// the midpoint stage is rho_h = rho + dt/2 R, w_h = S(dt/2)(w + dt/2 N) and the
/// update is rho' = rho + dt R_h, w' = S(dt) w + dt S(dt/2) N_h.
///
/// @throws std::invalid_argument for a non-normalized state or dt <= 0,
///         CflError if dt exceeds cfl_step, DivergenceError if |rho - 1|_inf >= 0.5.
FluidState step(const FluidState& state, double dt, const PressureLaw& law);

}  // namespace cns::solver
