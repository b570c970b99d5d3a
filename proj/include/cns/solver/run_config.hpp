#pragma once

#include <string>

#include "cns/spectral/grid.hpp"
#include "cns/spectral/operators.hpp"
#include "cns/state/fluid_state.hpp"
#include "cns/state/pressure_law.hpp"

namespace cns::solver {

using spectral::Point;
using spectral::TorusGrid;
using state::FluidState;
using state::PressureLaw;

/// Integrability pair (p, r) for w with the derived time exponents r0, r1.
struct Exponents {
    double p = 4.0;
    double r = 1.2;

    /// 1/r0 = 1/r - 1 + d/(2p).
    double r0(int dim) const;
    /// 1/r1 = 1/r - 1/2.
    double r1() const;
    /// Smallest admissible R2 plus 0.5: max{r0/2, r1/2, 2} + 0.5.
    double default_weight_exponent(int dim) const;
    /// @throws std::invalid_argument unless d < p < inf and 1 < r < 2p / (2p - d).
    void validate(int dim) const;
};

/// Initial data recipe.
struct InitialCondition {
    /// "zero", "smooth", "patch" or "rotation" (patch density with a rotating velocity).
    std::string kind = "smooth";
    double rho_amplitude = 1e-3;  ///< sup |rho_0 - 1| for smooth data; patch data use eps
    double w_amplitude = 1e-2;    ///< sup |w_0| for smooth data
    double center_x = -1.0;       ///< negative means box centre
    double center_y = -1.0;
    double center_z = -1.0;
    double radius = 0.25;         ///< patch radius as a fraction of L
    double width_cells = 2.0;     ///< transition width in grid cells
    double omega = 0.0;           ///< angular velocity for "rotation"
    double inner_radius = 0.2;    ///< rigid-rotation radius as a fraction of L
    double outer_radius = 0.4;    ///< cutoff radius as a fraction of L
};

struct RunConfig {
    int dim = 2;
    int n = 64;
    double length = spectral::kTwoPi;

    std::string law = "gamma";  ///< "linear" or "gamma"
    double a = 1.0;
    double gamma = 1.4;
    double epsilon = 0.01;

    double mu = 0.5;
    double lambda = 0.5;

    double dt = 0.0;        ///< fixed step; 0 selects the CFL step at t = 0
    double cfl = 1.0;       ///< multiplies the CFL step when dt = 0
    double horizon = 0.5;
    int output_every = 1;   ///< snapshot cadence in steps
    bool stop_at_budget_exit = true;
    double budget_constant = 0.0;  ///< 0 selects sup |P'| on the validity interval

    Exponents exponents;
    InitialCondition initial;

    /// @throws std::invalid_argument on any inconsistent field.
    void validate() const;
    TorusGrid make_grid() const;
    PressureLaw make_law() const;
    spectral::LameParameters make_lame() const;
    double smallness_constant() const;
};

/// Initial state in physical units.
FluidState build_initial_state(const RunConfig& config);

}  // namespace cns::solver
