#include "cns/lagrangian/stability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cns/lagrangian/identities.hpp"
#include "cns/spectral/norms.hpp"
#include "cns/spectral/operators.hpp"

namespace cns::lagrangian {

double StabilityReport::majorant(std::size_t k) const {
    return energy.front() * std::exp(gronwall_constant * weight_integral[k]);
}

int StabilityReport::violations(double rel_tol, double abs_tol) const {
    int count = 0;
    for (std::size_t k = 0; k < energy.size(); ++k) {
        if (energy[k] > majorant(k) * (1.0 + rel_tol) + abs_tol) ++count;
    }
    return count;
}

StabilityReport stability_energy(const solver::Trajectory& run1, const solver::Trajectory& run2,
                                 const state::PressureLaw& law, const InterpolationOptions& options) {
    if (run1.snapshots.empty() || run2.snapshots.empty()) throw std::invalid_argument("stability_energy: empty run");
    const auto& s1 = run1.snapshots.front();
    const auto& s2 = run2.snapshots.front();
    if (s1.grid() != s2.grid()) throw std::invalid_argument("stability_energy: grids differ");
    if (spectral::sup_norm(s1.rho_dev() - s2.rho_dev()) > 1e-12) {
        throw std::invalid_argument("stability_energy: initial densities differ");
    }
    const auto h1 = VelocityHistory::from_trajectory(run1, law);
    const auto h2 = VelocityHistory::from_trajectory(run2, law);
    if (h1.size() != h2.size()) throw std::invalid_argument("stability_energy: sample times differ");
    for (int k = 0; k < h1.size(); ++k) {
        if (std::abs(h1.times()[k] - h2.times()[k]) > 1e-9 * std::max(1.0, std::abs(h1.times()[k]))) {
            throw std::invalid_argument("stability_energy: sample times differ");
        }
    }
    const double horizon = h1.end();
    const auto p1 = integrate_flow(h1, horizon, options);
    const auto p2 = integrate_flow(h2, horizon, options);
    const auto u1 = lagrangian_velocity(h1, p1, options);
    const auto u2 = lagrangian_velocity(h2, p2, options);
    const SpectralField rho0 = s1.rho_dev() + SpectralField::constant(s1.grid(), 1.0);

    StabilityReport r;
    double prev_diss = 0.0, prev_f = 0.0;
    for (std::size_t k = 0; k < p1.maps.size(); ++k) {
        const double t = p1.maps[k].time;
        const VectorField du = u1[k] - u2[k];
        const double diss = std::pow(spectral::lp_norm(spectral::gradient(du), 2.0), 2);
        const double g2 = spectral::sup_norm(spectral::gradient(u2[k]).frobenius());
        const double f = t * (1.0 + g2 * g2);
        r.t.push_back(t);
        r.kinetic.push_back(lagrangian_kinetic(rho0, du));
        if (k == 0) {
            r.dissipation_cum.push_back(0.0);
            r.weight_integral.push_back(0.0);
        } else {
            const double dt = t - r.t[k - 1];
            r.dissipation_cum.push_back(r.dissipation_cum.back() + 0.5 * (prev_diss + diss) * dt);
            r.weight_integral.push_back(r.weight_integral.back() + 0.5 * (prev_f + f) * dt);
        }
        r.energy.push_back(r.kinetic.back() + r.dissipation_cum.back());
        prev_diss = diss;
        prev_f = f;
    }
    return r;
}

double fit_gronwall_constant(const StabilityReport& report, double fit_until) {
    const double e0 = report.energy.front();
    double c = 0.0;
    for (std::size_t k = 1; k < report.energy.size(); ++k) {
        if (report.t[k] > fit_until + 1e-12) break;
        const double e = report.energy[k];
        if (e <= e0) continue;
        if (e0 <= 0.0 || report.weight_integral[k] <= 0.0) return HUGE_VAL;
        c = std::max(c, std::log(e / e0) / report.weight_integral[k]);
    }
    return c;
}

double weighted_gradient_integral(const solver::Trajectory& trajectory) {
    double total = 0.0, prev_t = 0.0, prev_v = 0.0;
    for (std::size_t k = 0; k < trajectory.snapshots.size(); ++k) {
        const auto& s = trajectory.snapshots[k];
        const double g = spectral::sup_norm(spectral::gradient(s.w()).frobenius());
        const double v = s.time() * g * g;
        if (k > 0) total += 0.5 * (prev_v + v) * (s.time() - prev_t);
        prev_t = s.time();
        prev_v = v;
    }
    return total;
}

}  // namespace cns::lagrangian
