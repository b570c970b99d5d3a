#include "cns/lagrangian/velocity_history.hpp"

#include <algorithm>
#include <stdexcept>

#include "cns/spectral/norms.hpp"
#include "cns/spectral/operators.hpp"
#include "cns/state/reformulation.hpp"

namespace cns::lagrangian {

VelocityHistory::VelocityHistory(std::vector<double> times, std::vector<VectorField> velocities)
    : times_(std::move(times)), velocities_(std::move(velocities)) {
    if (times_.empty() || times_.size() != velocities_.size()) {
        throw std::invalid_argument("VelocityHistory: need matching nonempty times and velocities");
    }
    for (std::size_t k = 1; k < times_.size(); ++k) {
        if (!(times_[k] > times_[k - 1])) throw std::invalid_argument("VelocityHistory: times must increase");
        if (velocities_[k].grid() != velocities_[0].grid()) {
            throw std::invalid_argument("VelocityHistory: velocities on different grids");
        }
    }
    for (const auto& u : velocities_) gradient_sup_.push_back(spectral::sup_norm(spectral::gradient(u).frobenius()));
}

VelocityHistory VelocityHistory::from_trajectory(const solver::Trajectory& trajectory,
                                                 const state::PressureLaw& law) {
    std::vector<double> times;
    std::vector<VectorField> velocities;
    for (const auto& s : trajectory.snapshots) {
        times.push_back(s.time());
        velocities.push_back(state::compose_u(s, law));
    }
    return VelocityHistory(std::move(times), std::move(velocities));
}

VectorField VelocityHistory::at(double t) const {
    const double tol = 1e-12 * std::max(1.0, std::abs(end()));
    if (t < start() - tol || t > end() + tol) throw std::out_of_range("VelocityHistory: time outside the samples");
    auto it = std::lower_bound(times_.begin(), times_.end(), t - tol);
    const auto k = static_cast<std::size_t>(it - times_.begin());
    if (std::abs(times_[k] - t) <= tol) return velocities_[k];
    const double s = (t - times_[k - 1]) / (times_[k] - times_[k - 1]);
    return (1.0 - s) * velocities_[k - 1] + s * velocities_[k];
}

double VelocityHistory::gradient_integral(double t) const {
    double total = 0.0;
    for (std::size_t k = 1; k < times_.size(); ++k) {
        if (times_[k - 1] >= t) break;
        const double t1 = std::min(times_[k], t);
        const double s = (t1 - times_[k - 1]) / (times_[k] - times_[k - 1]);
        const double g1 = (1.0 - s) * gradient_sup_[k - 1] + s * gradient_sup_[k];
        total += 0.5 * (gradient_sup_[k - 1] + g1) * (t1 - times_[k - 1]);
    }
    return total;
}

}  // namespace cns::lagrangian
