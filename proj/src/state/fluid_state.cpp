#include "cns/state/fluid_state.hpp"

#include <cmath>
#include <stdexcept>

#include "cns/spectral/norms.hpp"

namespace cns::state {

FluidState::FluidState(double time, SpectralField rho_dev, VectorField w, LameParameters lame, Units units)
    : time_(time), rho_dev_(std::move(rho_dev)), w_(std::move(w)), lame_(lame), units_(units) {
    if (w_.grid() != rho_dev_.grid()) throw std::invalid_argument("FluidState: density and velocity grids differ");
    if (w_.size() != grid().dim()) throw std::invalid_argument("FluidState: velocity needs one component per axis");
    if (!(spectral::sup_norm(rho_dev_) < 1.0)) {
        throw std::invalid_argument("FluidState: sup |rho - 1| must be below 1");
    }
    if (units_.physical_length == 0.0) units_.physical_length = grid().length();
}

bool FluidState::is_normalized() const { return std::abs(nu() - 1.0) <= 1e-12; }

SpectralField FluidState::density() const {
    return pointwise_map(rho_dev_, [](double x) { return 1.0 + x; });
}

}  // namespace cns::state
