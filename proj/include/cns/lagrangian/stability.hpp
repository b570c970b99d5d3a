#pragma once

#include <vector>

#include "cns/lagrangian/flow_map.hpp"

namespace cns::lagrangian {

/// E(t) = |sqrt(rho_0) dubar(t)|_2^2 + int_0^t |grad_y dubar|_2^2 for two runs,
/// dubar = u_1 o psi_1 - u_2 o psi_2, with the Gronwall weight
/// f(t) = t (1 + |grad_y ubar_2|_inf^2).
struct StabilityReport {
    std::vector<double> t;
    std::vector<double> kinetic;          ///< |sqrt(rho_0) dubar|_2^2
    std::vector<double> dissipation_cum;  ///< int |grad_y dubar|_2^2
    std::vector<double> energy;           ///< E(t)
    std::vector<double> weight_integral;  ///< int_0^t f
    double gronwall_constant = 0.0;       ///< C of the majorant, fitted or given

    /// E(0) exp(C int_0^t f).
    double majorant(std::size_t k) const;
    /// Number of samples with E(t) > majorant(t) (1 + rel_tol) + abs_tol.
    int violations(double rel_tol = 1e-9, double abs_tol = 0.0) const;
};

/// @throws std::invalid_argument if the runs do not share rho_0, grid, or sample times.
StabilityReport stability_energy(const solver::Trajectory& run1, const solver::Trajectory& run2,
                                 const state::PressureLaw& law, const InterpolationOptions& options = {});

/// Smallest C >= 0 with E(t) <= E(0) exp(C int_0^t f) over samples with t <= fit_until.
double fit_gronwall_constant(const StabilityReport& report, double fit_until);

/// int t |grad w|_inf^2 dt over the snapshots (trapezoid rule).
double weighted_gradient_integral(const solver::Trajectory& trajectory);

}  // namespace cns::lagrangian
