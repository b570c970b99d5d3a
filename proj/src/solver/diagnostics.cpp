#include "cns/solver/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include "cns/harmonic/besov.hpp"
#include "cns/spectral/norms.hpp"
#include "cns/spectral/operators.hpp"

namespace cns::solver {

using spectral::SpectralField;
using spectral::VectorField;

namespace {

/// Pointwise magnitude of all second derivatives of a vector field.
SpectralField hessian_magnitude(const VectorField& w) {
    const auto& grid = w.grid();
    std::vector<double> acc(grid.size(), 0.0);
    for (int i = 0; i < w.size(); ++i) {
        const auto h = spectral::hessian(w[i]);
        for (int a = 0; a < grid.dim(); ++a) {
            for (int b = 0; b < grid.dim(); ++b) {
                const auto& values = h(a, b).physical();
                for (std::size_t n = 0; n < acc.size(); ++n) acc[n] += values[n] * values[n];
            }
        }
    }
    for (auto& x : acc) x = std::sqrt(x);
    return SpectralField::from_physical(grid, std::move(acc));
}

double power_integral(double a, double b, double beta) {
    if (std::abs(beta + 1.0) < 1e-14) return std::log(b / a);
    return (std::pow(b, beta + 1.0) - std::pow(a, beta + 1.0)) / (beta + 1.0);
}

std::vector<double> snapshot_times(const Trajectory& traj) {
    std::vector<double> times;
    for (const auto& s : traj.snapshots) times.push_back(s.time());
    return times;
}

}  // namespace

double weighted_time_norm(const std::vector<double>& times, const std::vector<double>& values, double q,
                          double alpha) {
    if (times.size() != values.size()) throw std::invalid_argument("weighted_time_norm: size mismatch");
    if (times.empty()) return 0.0;
    const double origin = times.front();
    if (std::isinf(q)) {
        double m = 0.0;
        for (std::size_t k = 0; k < times.size(); ++k) {
            const double t = times[k] - origin;
            const double weight = alpha == 0.0 ? 1.0 : std::pow(t, alpha);
            m = std::max(m, weight * std::abs(values[k]));
        }
        return m;
    }
    if (!(q >= 1.0)) throw std::invalid_argument("weighted_time_norm: q must be >= 1");
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
        const double a = times[k] - origin;
        const double b = times[k + 1] - origin;
        sum += std::pow(std::abs(values[k]), q) * power_integral(a, b, alpha * q);
    }
    return std::pow(sum, 1.0 / q);
}

CompositeNorm norms_NT(const Trajectory& traj, double p, double r) {
    if (traj.snapshots.empty()) throw std::invalid_argument("norms_NT: empty trajectory");
    const int dim = traj.snapshots.front().grid().dim();
    Exponents exps{p, r};
    exps.validate(dim);
    const double r0 = exps.r0(dim);
    const double r1 = exps.r1();
    const harmonic::BesovSpec spec{2.0 - 2.0 / r, p, r, true};

    const auto times = snapshot_times(traj);
    const std::size_t m = times.size();
    CompositeNorm out;
    std::vector<double> w_sup(m), grad_w(m), hess(m), dtw(m, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
        const auto& s = traj.snapshots[k];
        out.rho_sup = std::max(out.rho_sup, spectral::lp_norm(s.rho_dev(), p) + spectral::sup_norm(s.rho_dev()));
        out.w_besov_sup = std::max(out.w_besov_sup, harmonic::besov_norm(s.w(), spec));
        w_sup[k] = spectral::sup_norm(s.w());
        grad_w[k] = spectral::lp_norm(spectral::gradient(s.w()), p);
        hess[k] = spectral::lp_norm(hessian_magnitude(s.w()), p);
    }
    if (m < 3) {
        out.time_derivative_included = false;
        out.warnings.push_back("fewer than 3 snapshots: d_t w omitted from N(T)");
    } else {
        for (std::size_t k = 0; k < m; ++k) {
            const std::size_t lo = k == 0 ? 0 : k - 1;
            const std::size_t hi = k + 1 == m ? m - 1 : k + 1;
            VectorField diff = traj.snapshots[hi].w() - traj.snapshots[lo].w();
            diff *= 1.0 / (times[hi] - times[lo]);
            dtw[k] = spectral::lp_norm(diff, p);
        }
    }
    std::vector<double> second(m);
    for (std::size_t k = 0; k < m; ++k) second[k] = dtw[k] + hess[k];
    out.w_linf_time = weighted_time_norm(times, w_sup, r0);
    out.grad_w_time = weighted_time_norm(times, grad_w, r1);
    out.second_order_time = weighted_time_norm(times, second, r);
    return out;
}

WeightedNorms weighted_norms_of(const std::vector<double>& times, const std::vector<VectorField>& w, double p,
                                double r, double weight_exponent) {
    if (times.size() != w.size() || times.empty()) throw std::invalid_argument("weighted_norms: bad samples");
    const int dim = w.front().grid().dim();
    Exponents exps{p, r};
    exps.validate(dim);
    const double r0 = exps.r0(dim);
    const double r1 = exps.r1();
    const double r2 = weight_exponent > 0.0 ? weight_exponent : exps.default_weight_exponent(dim);
    if (!(r2 > std::max({r0 / 2.0, r1 / 2.0, 2.0}))) {
        throw std::invalid_argument("weighted_norms: R2 must exceed max{r0/2, r1/2, 2}");
    }
    if (!(1.0 / (2.0 * r2) < 1.5 - 1.0 / r + dim / (2.0 * p))) {
        throw std::invalid_argument("weighted_norms: need 1/(2 R2) < 3/2 - 1/r + d/(2p)");
    }
    WeightedNorms out;
    out.r2_weight = r2;
    const double big = 2.0 * r2;
    out.alpha2 = 1.0 / r - 1.0 / r2;
    out.gamma1 = 1.0 / r1 - 1.0 / (2.0 * big);
    out.gamma0 = 1.0 / r0 - 1.0 / (2.0 * big);
    std::vector<double> hess, grad, value, grad_sup2;
    for (const auto& field : w) {
        hess.push_back(spectral::lp_norm(hessian_magnitude(field), p));
        const auto g = spectral::gradient(field);
        grad.push_back(spectral::lp_norm(g, p));
        value.push_back(spectral::sup_norm(field));
        const double gs = spectral::sup_norm(g);
        grad_sup2.push_back(gs * gs);
    }
    out.hessian = weighted_time_norm(times, hess, r2, out.alpha2);
    out.gradient = weighted_time_norm(times, grad, big, out.gamma1);
    out.value = weighted_time_norm(times, value, big, out.gamma0);
    out.gradient_sup_integral = weighted_time_norm(times, grad_sup2, 1.0, 1.0);
    return out;
}

WeightedNorms weighted_norms(const Trajectory& traj, double p, double r, double weight_exponent) {
    if (traj.snapshots.empty()) throw std::invalid_argument("weighted_norms: empty trajectory");
    std::vector<VectorField> w;
    for (const auto& s : traj.snapshots) w.push_back(s.w());
    return weighted_norms_of(snapshot_times(traj), w, p, r, weight_exponent);
}

std::vector<EnergyAuditRow> energy_audit(const Trajectory& traj, const PressureLaw& law) {
    if (!law.derivative_positive()) {
        throw std::invalid_argument("energy audit unavailable: P' is not positive on the validity interval");
    }
    std::vector<EnergyAuditRow> rows;
    for (const auto& d : traj.diagnostics) {
        rows.push_back({d.t, d.kinetic, d.potential, d.dissipation_cum, d.energy_residual});
    }
    return rows;
}

std::vector<DensityBoundRow> density_bound_check(const Trajectory& traj) {
    std::vector<DensityBoundRow> rows;
    if (traj.diagnostics.empty()) return rows;
    const auto& first = traj.diagnostics.front();
    for (const auto& d : traj.diagnostics) {
        const double growth =
            std::exp(traj.smallness_constant * traj.time_scale * (d.t - first.t) + d.div_w_linf_cum);
        const double rhs_p = growth * (first.lp_rho + d.div_w_lp_cum);
        const double rhs_inf = growth * (first.linf_rho + d.div_w_linf_cum);
        // Relative slack of a few ulps so that equality at t = 0 passes.
        rows.push_back({d.t, traj.lp_exponent, d.lp_rho, rhs_p, d.lp_rho <= rhs_p * (1.0 + 1e-12)});
        rows.push_back({d.t, spectral::kInfinity, d.linf_rho, rhs_inf, d.linf_rho <= rhs_inf * (1.0 + 1e-12)});
    }
    return rows;
}

void write_diagnostics_csv(std::ostream& out, const Trajectory& traj) {
    out << "t,linf_rho,lp_rho,div_w_linf_cum,kinetic,potential,dissipation_cum,energy_residual,budget_admissible\n";
    out << std::setprecision(17);
    for (const auto& d : traj.diagnostics) {
        out << d.t << ',' << d.linf_rho << ',' << d.lp_rho << ',' << d.div_w_linf_cum << ',' << d.kinetic << ','
            << d.potential << ',' << d.dissipation_cum << ',' << d.energy_residual << ','
            << (d.budget_admissible ? 1 : 0) << '\n';
    }
}

void write_diagnostics_csv_file(const std::string& path, const Trajectory& traj) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    write_diagnostics_csv(out, traj);
}

}  // namespace cns::solver
