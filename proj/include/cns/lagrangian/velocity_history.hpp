#pragma once

#include <vector>

#include "cns/solver/run.hpp"
#include "cns/spectral/field.hpp"

namespace cns::lagrangian {

using spectral::SpectralField;
using spectral::TensorField;
using spectral::TorusGrid;
using spectral::VectorField;

/// Eulerian velocity samples u(t_k, .) at increasing times, linear in between.
class VelocityHistory {
public:
    /// @throws std::invalid_argument for empty input, mismatched sizes or grids,
    ///         or times that do not increase strictly.
    VelocityHistory(std::vector<double> times, std::vector<VectorField> velocities);

    /// u = w + v at every snapshot of a trajectory.
    static VelocityHistory from_trajectory(const solver::Trajectory& trajectory, const state::PressureLaw& law);

    const TorusGrid& grid() const { return velocities_.front().grid(); }
    int size() const { return static_cast<int>(times_.size()); }
    const std::vector<double>& times() const { return times_; }
    const VectorField& velocity(int k) const { return velocities_[static_cast<std::size_t>(k)]; }
    double start() const { return times_.front(); }
    double end() const { return times_.back(); }

    /// Velocity at time t by linear interpolation between samples.
    /// @throws std::out_of_range outside [start, end].
    VectorField at(double t) const;

    /// Trapezoid integral of sup |grad u| (Frobenius) from start to t.
    double gradient_integral(double t) const;

private:
    std::vector<double> times_;
    std::vector<VectorField> velocities_;
    std::vector<double> gradient_sup_;
};

}  // namespace cns::lagrangian
