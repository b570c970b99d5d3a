#pragma once

#include <vector>

#include "cns/solver/run.hpp"
#include "cns/striated/estimates.hpp"
#include "cns/striated/transport.hpp"

namespace cns::striated {

/// Two-field family adapted to a disc of the given radius (d = 2):
/// X_1 = beta(r) (x - c)^perp / radius is tangent to every circle about c and
/// divergence free, cut off between 1.3 and 1.95 radii; X_2 = kappa(r) e_1
/// vanishes on the band |r - radius| <= 0.25 radius and equals 1 outside
/// |r - radius| >= 0.55 radius. I(X) is about 0.45.
/// @throws std::invalid_argument unless d = 2 and 1.95 radius < L / 2.
VectorFieldFamily patch_family(const TorusGrid& grid, const spectral::Point& center, double radius, double p);

/// amplitude * (-1)^(i + j) on a cells x cells board of squares of side L / cells.
SpectralField checkerboard(const TorusGrid& grid, int cells, double amplitude = 1.0);

/// One cell of the mollified-disc sweep for the stationary estimates.
struct SweepCell {
    int n = 0;
    double width_cells = 0.0;
    EstimatePair tang;
    EstimatePair tang_dx;
};

/// Mollified disc of radius radius_fraction * L and transition width w * dx,
/// paired with patch_family, for every n and w.
std::vector<SweepCell> disc_sweep(const std::vector<int>& ns, const std::vector<double>& widths, double length,
                                  double radius_fraction, double eta, double p);

/// Patch run with the patch family transported along the flow.
struct StriatedRun {
    solver::Trajectory trajectory;
    std::vector<FamilySample> history;  ///< every step, normalized time
    double window_end = 0.0;            ///< last time with U <= log 2 and the budget admissible
};

/// Runs a patch configuration (d = 2, initial kind "patch" or "rotation") and
/// transports the patch family alongside.
StriatedRun run_with_family(const solver::RunConfig& config);

/// Same transport driven by stored snapshots instead of every step. Each
/// snapshot interval is split into substeps with Courant number at most 1/2
/// and a velocity linear in time. U(t) is read from the run diagnostics.
/// @throws std::invalid_argument for a configuration run_with_family rejects or an empty trajectory.
StriatedRun replay_with_family(const solver::RunConfig& config, const solver::Trajectory& trajectory);

/// Samples of the history up to window_end.
std::vector<FamilySample> window(const StriatedRun& run);

}  // namespace cns::striated
