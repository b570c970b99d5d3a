#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cns/solver/run_config.hpp"
#include "cns/state/budget.hpp"

namespace cns::solver {

/// Quantities sampled after every accepted step (and at t = 0).
struct StepDiagnostics {
    double t = 0.0;
    double linf_rho = 0.0;
    double lp_rho = 0.0;          ///< L^p norm with p from the run exponents
    double div_w_linf = 0.0;
    double div_w_lp = 0.0;
    double div_w_linf_cum = 0.0;  ///< trapezoid integral of |div w|_inf
    double div_w_lp_cum = 0.0;    ///< trapezoid integral of |div w|_p
    double grad_u_linf = 0.0;     ///< sup of the Frobenius norm of grad u
    double grad_u_cum = 0.0;      ///< U(t), trapezoid integral of grad_u_linf
    double kinetic = 0.0;
    double potential = 0.0;
    double dissipation_rate = 0.0;
    double dissipation_cum = 0.0;  ///< trapezoid integral of the dissipation rate
    double energy_residual = 0.0;  ///< |E(t) + D(t) - E(0)| / E(0), 0 when E(0) = 0
    double budget_exponent = 0.0;  ///< C t + int |div w|_inf
    bool budget_admissible = true;
};

/// Run output in normalized units (nu = 1): snapshots every output_every
/// steps plus the final state, and diagnostics after every step.
struct Trajectory {
    std::vector<FluidState> snapshots;
    std::vector<StepDiagnostics> diagnostics;
    double dt = 0.0;               ///< uniform step
    double snapshot_dt = 0.0;      ///< spacing of interior snapshots
    double lp_exponent = 4.0;
    double smallness_constant = 0.0;
    double epsilon = 0.0;
    double budget_exit_time = -1.0;  ///< first time the budget failed; negative if never
    std::string stop_reason;         ///< "horizon" or "budget"
    double time_scale = 1.0;         ///< nu of the physical problem
};

/// Hook invoked after each accepted step with the new state.
using StepObserver = std::function<void(const FluidState&, const StepDiagnostics&)>;

/// Integrates from the configured initial data.
Trajectory run(const RunConfig& config, const StepObserver& observer = {});
/// Integrates from a given physical-units initial state (its viscosities must match the config).
/// Step errors are rethrown with the time at which they occurred.
Trajectory run(const RunConfig& config, const FluidState& initial, const StepObserver& observer = {});

/// Step size actually used: config.dt, or cfl * cfl_step at t = 0, shrunk so
/// that an integer number of steps reaches the horizon. Normalized units.
double resolve_step(const RunConfig& config, const FluidState& normalized_initial);

/// Diagnostics for one state; running integrals are filled from the previous sample.
StepDiagnostics sample_diagnostics(const FluidState& state, const PressureLaw& law, double p,
                                   const StepDiagnostics* previous, double energy0);

}  // namespace cns::solver
