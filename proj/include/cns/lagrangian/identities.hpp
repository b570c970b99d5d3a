#pragma once

#include <string>
#include <vector>

#include "cns/lagrangian/flow_map.hpp"

namespace cns::lagrangian {

/// Relative sup residuals of the change-of-variables identities at one flow map.
struct IdentityReport {
    double gradient = 0.0;     ///< (grad_x K) o psi vs J^{-1} div_y(adj^T K)
    double divergence = 0.0;   ///< (div_x H) o psi vs J^{-1} div_y(adj H)
    double chain_rule = 0.0;   ///< (D_x f) o psi vs D_y(f o psi) A
    double adjugate = 0.0;     ///< |adj D psi . D psi - J Id|_inf
    double max() const;
};

/// Test fields K, H and f are composed with psi by interpolation; y-derivatives are spectral.
IdentityReport lagrangian_identities_check(const FlowMap& flow, const SpectralField& k, const VectorField& h,
                                           const SpectralField& f, const InterpolationOptions& options = {});

struct MassResidual {
    double t = 0.0;
    double residual = 0.0;  ///< |J rho(t, psi) - rho_0|_inf / |rho_0|_inf
};

/// Mass identity at every flow map whose time matches a trajectory snapshot.
/// @throws std::invalid_argument if no snapshot matches a map or the grids differ.
std::vector<MassResidual> mass_identity_check(const solver::Trajectory& trajectory, const FlowPath& path,
                                              const InterpolationOptions& options = {});

/// Deviation of one flow map from the identity against U = int |grad u|_inf.
struct FlowBounds {
    double gradient_integral = 0.0;  ///< U
    double id_minus_adjugate = 0.0;  ///< |Id - adj D psi|_inf
    double id_minus_inverse = 0.0;   ///< |Id - A|_inf
    double det_deviation = 0.0;      ///< max(|J - 1|_inf, |1/J - 1|_inf)
};

/// @throws std::invalid_argument if U >= 1.
FlowBounds flow_bounds_check(const FlowMap& flow, double gradient_integral);

/// Differences of two flow maps in L^p against int |grad_y (u_1 o psi_1 - u_2 o psi_2)|_p.
struct FlowDeltas {
    double delta_integral = 0.0;
    double adjugate = 0.0;
    double inverse = 0.0;
    double det = 0.0;  ///< max over J and 1/J
};

FlowDeltas flow_delta_check(const FlowMap& a, const FlowMap& b, double delta_integral, double p);

/// int_0^t |grad_y (ubar_1 - ubar_2)|_p dt by the trapezoid rule over the path times.
std::vector<double> lagrangian_delta_integral(const FlowPath& path, const std::vector<VectorField>& ubar1,
                                              const std::vector<VectorField>& ubar2, double p);

/// Constant fitted by least squares through the origin, and the worst member
/// ratio relative to it.
struct LinearFit {
    double constant = 0.0;
    double worst_excess = 0.0;  ///< max_i (q_i / x_i) / constant - 1
    bool within(double tol) const { return worst_excess <= tol; }
};
LinearFit fit_linear_bound(const std::vector<double>& x, const std::vector<double>& q);

/// int rho_0 |ubar|^2 dy and int rho |u|^2 dx.
double lagrangian_kinetic(const SpectralField& rho0, const VectorField& ubar);

}  // namespace cns::lagrangian
