#include "cns/solver/run.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cns/solver/stepper.hpp"
#include "cns/spectral/norms.hpp"
#include "cns/spectral/operators.hpp"
#include "cns/state/reformulation.hpp"

namespace cns::solver {

namespace {

double trapezoid(const StepDiagnostics* prev, double t, double value, double prev_value) {
    return prev ? 0.5 * (t - prev->t) * (value + prev_value) : 0.0;
}

}  // namespace

StepDiagnostics sample_diagnostics(const FluidState& state, const PressureLaw& law, double p,
                                   const StepDiagnostics* previous, double energy0) {
    StepDiagnostics d;
    d.t = state.time();
    d.linf_rho = spectral::sup_norm(state.rho_dev());
    d.lp_rho = spectral::lp_norm(state.rho_dev(), p);
    const auto div_w = spectral::divergence(state.w());
    d.div_w_linf = spectral::sup_norm(div_w);
    d.div_w_lp = spectral::lp_norm(div_w, p);
    const auto u = state::compose_u(state, law);
    d.grad_u_linf = spectral::sup_norm(spectral::gradient(u));
    const auto energy = state::energy_functional(state, law);
    d.kinetic = energy.kinetic;
    d.potential = energy.potential;
    d.dissipation_rate = energy.dissipation_rate;
    if (previous) {
        d.div_w_linf_cum = previous->div_w_linf_cum + trapezoid(previous, d.t, d.div_w_linf, previous->div_w_linf);
        d.div_w_lp_cum = previous->div_w_lp_cum + trapezoid(previous, d.t, d.div_w_lp, previous->div_w_lp);
        d.grad_u_cum = previous->grad_u_cum + trapezoid(previous, d.t, d.grad_u_linf, previous->grad_u_linf);
        d.dissipation_cum =
            previous->dissipation_cum + trapezoid(previous, d.t, d.dissipation_rate, previous->dissipation_rate);
    }
    const double total = d.kinetic + (energy.potential_available ? d.potential : 0.0) + d.dissipation_cum;
    if (energy0 > 0.0) {
        d.energy_residual = std::abs(total - energy0) / energy0;
    } else {
        d.energy_residual = std::abs(total - energy0);
    }
    return d;
}

double resolve_step(const RunConfig& config, const FluidState& normalized_initial) {
    const double horizon = config.horizon / normalized_initial.units().scale;
    double dt = config.dt / normalized_initial.units().scale;
    if (dt == 0.0) {
        dt = config.cfl * cfl_step(normalized_initial, config.make_law());
        if (!std::isfinite(dt)) dt = horizon > 0.0 ? horizon : 1.0;
    }
    if (horizon > 0.0) {
        const double steps = std::ceil(horizon / dt - 1e-9);
        dt = horizon / std::max(1.0, steps);
    }
    return dt;
}

Trajectory run(const RunConfig& config, const StepObserver& observer) {
    return run(config, build_initial_state(config), observer);
}

Trajectory run(const RunConfig& config, const FluidState& initial, const StepObserver& observer) {
    config.validate();
    const PressureLaw law = config.make_law();
    if (std::abs(initial.mu() - config.mu) > 1e-14 || std::abs(initial.lambda() - config.lambda) > 1e-14) {
        throw std::invalid_argument("run: initial state viscosities differ from the config");
    }
    FluidState state = state::normalize_nu(initial, law);
    const double scale = state.units().scale;
    const double horizon = config.horizon / scale;
    const double p = config.exponents.p;

    Trajectory traj;
    traj.lp_exponent = p;
    traj.epsilon = config.epsilon;
    traj.smallness_constant = config.smallness_constant();
    traj.time_scale = scale;
    traj.stop_reason = "horizon";
    // The budget constant C multiplies physical time; in normalized time it is C * nu.
    state::SmallnessBudget budget(config.epsilon, traj.smallness_constant * scale);

    const auto energy0_parts = state::energy_functional(state, law);
    const double energy0 =
        energy0_parts.kinetic + (energy0_parts.potential_available ? energy0_parts.potential : 0.0);

    auto record = [&](const FluidState& s) {
        const StepDiagnostics* prev = traj.diagnostics.empty() ? nullptr : &traj.diagnostics.back();
        StepDiagnostics d = sample_diagnostics(s, law, p, prev, energy0);
        budget.record(d.t, d.linf_rho, d.div_w_linf);
        d.budget_exponent = budget.exponent();
        d.budget_admissible = budget.admissible();
        traj.diagnostics.push_back(d);
        return d;
    };

    record(state);
    traj.snapshots.push_back(state);
    if (horizon == 0.0) return traj;

    const double dt = resolve_step(config, state);
    traj.dt = dt;
    traj.snapshot_dt = dt * config.output_every;
    const long steps = std::lround(horizon / dt);
    const double t0 = state.time();
    for (long k = 1; k <= steps; ++k) {
        const bool was_admissible = traj.diagnostics.back().budget_admissible;
        try {
            FluidState next = step(state, dt, law);
            state = FluidState(t0 + k * dt, next.rho_dev(), next.w(), next.lame(), next.units());
        } catch (const std::exception& e) {
            std::ostringstream msg;
            msg << "step failed at t = " << state.time() << ": " << e.what();
            throw std::runtime_error(msg.str());
        }
        const StepDiagnostics d = record(state);
        if (was_admissible && d.budget_admissible && d.linf_rho > 4.0 * config.epsilon) {
            std::ostringstream msg;
            msg << "smallness violated at t = " << d.t << ": |rho - 1|_inf = " << d.linf_rho << " > 4 eps";
            throw std::runtime_error(msg.str());
        }
        if (observer) observer(state, d);
        const bool exited = !d.budget_admissible && traj.budget_exit_time < 0.0;
        if (exited) traj.budget_exit_time = d.t;
        if (k % config.output_every == 0 || k == steps || (exited && config.stop_at_budget_exit)) {
            traj.snapshots.push_back(state);
        }
        if (exited && config.stop_at_budget_exit) {
            traj.stop_reason = "budget";
            break;
        }
    }
    return traj;
}

}  // namespace cns::solver
