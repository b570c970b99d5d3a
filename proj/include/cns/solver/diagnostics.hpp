#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cns/solver/run.hpp"

namespace cns::solver {

/// Components of the composite norm N(T) over the snapshots of a trajectory.
struct CompositeNorm {
    double rho_sup = 0.0;         ///< sup_t (|rho|_p + |rho|_inf)
    double w_besov_sup = 0.0;     ///< sup_t |w| in the homogeneous B^{2-2/r}_{p,r}
    double w_linf_time = 0.0;     ///< |w|_{L^{r0}_T L^inf}
    double grad_w_time = 0.0;     ///< |grad w|_{L^{r1}_T L^p}
    double second_order_time = 0.0;  ///< |(d_t w, grad^2 w)|_{L^r_T L^p}
    bool time_derivative_included = true;
    std::vector<std::string> warnings;

    double total() const {
        return rho_sup + w_besov_sup + w_linf_time + grad_w_time + second_order_time;
    }
};

/// Discrete L^q(0, T) norm of a sampled function of time with weight t^alpha.
/// Values are held constant on [t_k, t_{k+1}) (left endpoint) and the weight
/// is integrated exactly, so constant samples reproduce the closed form.
/// q = infinity gives the max of t^alpha |value|.
double weighted_time_norm(const std::vector<double>& times, const std::vector<double>& values, double q,
                          double alpha = 0.0);

/// N(T) of the snapshots. d_t w uses centred differences (one-sided at the
/// ends); with fewer than 3 snapshots it is omitted and a warning is recorded.
/// @throws std::invalid_argument for an empty trajectory.
CompositeNorm norms_NT(const Trajectory& traj, double p, double r);

struct WeightedNorms {
    double r2_weight = 0.0;        ///< R2; R0 = R1 = 2 R2
    double alpha2 = 0.0, gamma1 = 0.0, gamma0 = 0.0;
    double hessian = 0.0;          ///< |t^{alpha2} grad^2 w|_{L^{R2}_T L^p}
    double gradient = 0.0;         ///< |t^{gamma1} grad w|_{L^{R1}_T L^p}
    double value = 0.0;            ///< |t^{gamma0} w|_{L^{R0}_T L^inf}
    double gradient_sup_integral = 0.0;  ///< int_0^T t |grad w|_inf^2 dt
};

/// Time-weighted norms with R2 = weight_exponent (0 selects the default).
/// @throws std::invalid_argument unless R2 > max{r0/2, r1/2, 2} and 1/(2 R2) < 3/2 - 1/r + d/(2p).
WeightedNorms weighted_norms(const Trajectory& traj, double p, double r, double weight_exponent = 0.0);

/// Same time grid as the sampled values; in normalized units measured from the first snapshot.
WeightedNorms weighted_norms_of(const std::vector<double>& times, const std::vector<spectral::VectorField>& w, double p,
                                double r, double weight_exponent = 0.0);

struct EnergyAuditRow {
    double t;
    double kinetic;
    double potential;
    double dissipation_cum;
    double residual;
};

/// Energy balance residuals at every diagnostic sample.
/// @throws std::invalid_argument if the law has no positive P' on its validity interval.
std::vector<EnergyAuditRow> energy_audit(const Trajectory& traj, const PressureLaw& law);

struct DensityBoundRow {
    double t;
    double q;  ///< integrability exponent; infinity for the sup norm
    double lhs;
    double rhs;
    bool pass;
};

/// |rho(t)|_q <= exp(C t + int |div w|_inf) (|rho_0|_q + int |div w|_q) for q in {p, inf}
/// at every diagnostic sample, with C = traj.smallness_constant (physical time).
std::vector<DensityBoundRow> density_bound_check(const Trajectory& traj);

/// CSV with columns t, linf_rho, lp_rho, div_w_linf_cum, kinetic, potential,
/// dissipation_cum, energy_residual, budget_admissible.
void write_diagnostics_csv(std::ostream& out, const Trajectory& traj);
void write_diagnostics_csv_file(const std::string& path, const Trajectory& traj);

}  // namespace cns::solver
