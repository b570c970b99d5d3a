#include "cns/solver/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cns/spectral/norms.hpp"
#include "cns/spectral/operators.hpp"

namespace cns::solver {

using spectral::SpectralField;
using spectral::VectorField;

namespace {

constexpr double kTiny = 1e-300;

void check_density(const FluidState& state) {
    const double sup = spectral::sup_norm(state.rho_dev());
    if (sup >= 0.5) {
        std::ostringstream msg;
        msg << "density deviation diverged: |rho - 1|_inf = " << sup << " >= 0.5";
        throw DivergenceError(msg.str());
    }
}

}  // namespace

double cfl_step(const FluidState& state, const state::Kinematics& kin) {
    const double dx = state.grid().dx();
    const double u_sup = spectral::sup_norm(kin.u);
    const auto& rho = kin.density.physical();
    const double rho_min = *std::min_element(rho.begin(), rho.end());
    const double rho_sup = spectral::sup_norm(state.rho_dev());
    const double advective = u_sup > 0.0 ? 0.4 * dx / u_sup : std::numeric_limits<double>::infinity();
    const double viscous = 0.25 * dx * dx * rho_min / (std::max(state.mu(), state.nu()) * rho_sup + kTiny);
    return std::min(advective, viscous);
}

double cfl_step(const FluidState& state, const PressureLaw& law) {
    return cfl_step(state, state::kinematics(state, law));
}

VectorField explicit_w_term(const FluidState& state, const PressureLaw& law, const state::Kinematics& kin) {
    VectorField lw = spectral::lame_apply(state.w(), state.lame());
    const auto& rho = kin.density.physical();
    for (int a = 0; a < lw.size(); ++a) {
        auto& values = lw[a].physical_mut();
        for (std::size_t i = 0; i < values.size(); ++i) values[i] *= 1.0 - 1.0 / rho[i];
    }
    lw -= state::assemble_F(state, law, kin);
    return spectral::dealias(lw);
}

FluidState step(const FluidState& state, double dt, const PressureLaw& law) {
    if (!state.is_normalized()) throw std::invalid_argument("step: state must be normalized (nu = 1)");
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
    check_density(state);
    const auto kin = state::kinematics(state, law);
    const double bound = cfl_step(state, kin);
    if (dt > bound) {
        const double courant = spectral::sup_norm(kin.u) * dt / state.grid().dx();
        std::ostringstream msg;
        msg << "CFL violated: dt = " << dt << " exceeds " << bound << " (|u|_inf dt / dx = " << courant << ")";
        throw CflError(msg.str(), courant);
    }
    const auto& lame = state.lame();

    SpectralField rate = state::rhs_density(state, kin);
    VectorField forcing = explicit_w_term(state, law, kin);

    SpectralField rho_half = state.rho_dev() + (0.5 * dt) * rate;
    VectorField w_half = spectral::lame_semigroup(state.w() + (0.5 * dt) * forcing, 0.5 * dt, lame);
    FluidState mid(state.time() + 0.5 * dt, std::move(rho_half), std::move(w_half), lame, state.units());
    check_density(mid);
    const auto kin_mid = state::kinematics(mid, law);
    SpectralField rate_mid = state::rhs_density(mid, kin_mid);
    VectorField forcing_mid = explicit_w_term(mid, law, kin_mid);

    SpectralField rho_next = state.rho_dev() + dt * rate_mid;
    VectorField w_next = spectral::lame_semigroup(state.w(), dt, lame);
    w_next += dt * spectral::lame_semigroup(forcing_mid, 0.5 * dt, lame);
    return FluidState(state.time() + dt, std::move(rho_next), std::move(w_next), lame, state.units());
}

}  // namespace cns::solver
