#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cns/cli/config.hpp"
#include "cns/lagrangian/stability.hpp"
#include "cns/solver/run.hpp"
#include "cns/striated/patch_family.hpp"

namespace cns::cli {

/// Calls task(i) for i in [0, count) on at most jobs threads. The first
/// exception thrown by a task is rethrown after all workers finish.
void parallel_for(int count, int jobs, const std::function<void(int)>& task);

/// Trigonometric vector field on the modes with |k_a| <= 3 and coefficients
/// drawn from a seeded mt19937_64, scaled to sup |v| = 1.
spectral::VectorField seeded_perturbation(const spectral::TorusGrid& grid, std::uint64_t seed);

/// Configured initial state with w(0) shifted by perturbation * seeded_perturbation(seed).
state::FluidState perturbed_initial(const Config& config);

/// Two runs from the same rho_0: the configured data and the perturbed data.
struct PairResult {
    solver::Trajectory base;
    solver::Trajectory perturbed;
    lagrangian::StabilityReport report;
    double fit_until = 0.0;  ///< end of the Gronwall fitting window (half of the final time)
};

PairResult run_uniqueness_pair(const Config& config, int jobs);

/// Gronwall constant fitted on the first half of the samples, stored in the report.
double fit_on_first_half(lagrangian::StabilityReport& report);

/// Stationary-estimate sweep over disc widths and resolutions, with the checkerboard control.
struct SweepResult {
    std::vector<striated::SweepCell> cells;
    /// Largest lhs/rhs over the cells at the first resolution.
    double fitted_constant = 0.0;
    double fitted_dx_constant = 0.0;
    /// Largest lhs/rhs over every cell, relative to the fitted constants.
    double worst_relative = 0.0;
    double worst_dx_relative = 0.0;
    /// Largest lhs over the widths at the last resolution divided by the same at the first.
    double striated_growth = 0.0;
    std::vector<double> checkerboard_lhs;  ///< one per resolution
    double checkerboard_growth = 0.0;      ///< last over first
};

SweepResult run_striated_sweep(const Config& config, int jobs);

}  // namespace cns::cli
