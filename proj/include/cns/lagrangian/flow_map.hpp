#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cns/lagrangian/velocity_history.hpp"
#include "cns/spectral/interpolation.hpp"

namespace cns::lagrangian {

/// Raised when det D psi drops to 0.25 or below.
class FlowStabilityError : public std::runtime_error {
public:
    explicit FlowStabilityError(const std::string& what) : std::runtime_error(what) {}
};

/// Off-grid evaluation settings.
struct InterpolationOptions {
    spectral::FourierInterpolator::Method method = spectral::FourierInterpolator::Method::Oversampled;
    int oversample = 4;
    int stencil = 8;
};

/// psi(t, y) = y + displacement(y) on the Lagrangian grid (the Eulerian grid at t = 0).
struct FlowMap {
    double time = 0.0;
    VectorField displacement;
    TensorField jacobian;   ///< (i, j) = d psi_i / d y_j
    SpectralField det;      ///< J
    TensorField inverse;    ///< A = (D psi)^{-1}
    TensorField adjugate;   ///< adj D psi
    double gradient_integral = 0.0;  ///< int_0^t |grad u|_inf
    bool within_k0 = true;           ///< gradient_integral <= k0

    /// Identity map at time t.
    static FlowMap identity(const TorusGrid& grid, double t = 0.0);
    /// Map from a displacement and Jacobian; J, A and adj are derived pointwise.
    /// @throws FlowStabilityError if J <= 0.25 anywhere.
    static FlowMap from_parts(double t, VectorField displacement, TensorField jacobian);

    const TorusGrid& grid() const { return displacement.grid(); }
    /// Points psi(y) for every grid point y.
    std::vector<spectral::Point> positions() const;
};

/// Flow maps at every integration step, starting with the identity.
struct FlowPath {
    std::vector<FlowMap> maps;
    const FlowMap& final() const { return maps.back(); }
};

/// RK4 for d psi / dt = u(t, psi) and d(D psi)/dt = (grad u)(t, psi) D psi.
/// Steps span two sample intervals so that every stage lands on a sample when
/// the samples are uniform; otherwise single intervals with the linearly
/// interpolated velocity at the midpoint.
/// @throws FlowStabilityError if J <= 0.25; std::invalid_argument for a horizon
///         outside the history.
FlowPath integrate_flow(const VelocityHistory& history, double horizon, const InterpolationOptions& options = {},
                        double k0 = 0.5);

/// Values f(psi(y)) on the Lagrangian grid.
SpectralField compose(const SpectralField& f, const FlowMap& flow, const InterpolationOptions& options = {});
VectorField compose(const VectorField& f, const FlowMap& flow, const InterpolationOptions& options = {});

/// Displacement e with psi^{-1}(x) = x + e(x), by the fixed point y = x - d(y).
struct InverseFlow {
    VectorField displacement;
    int iterations = 0;
    double last_change = 0.0;
};
InverseFlow inverse_flow(const FlowMap& flow, int max_iterations = 20, double tolerance = 1e-10,
                         const InterpolationOptions& options = {});

/// Lagrangian velocity u(t, psi(t, .)) at every map of the path.
std::vector<VectorField> lagrangian_velocity(const VelocityHistory& history, const FlowPath& path,
                                             const InterpolationOptions& options = {});

/// Determinant and adjugate of a d x d row-major matrix, d <= 3.
double small_det(const double* m, int d);
void small_adjugate(const double* m, int d, double* adj);

}  // namespace cns::lagrangian
