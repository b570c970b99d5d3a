#include "cns/harmonic/riesz.hpp"

#include <cmath>
#include <stdexcept>

#include "cns/spectral/operators.hpp"

namespace cns::harmonic {

SpectralField modified_riesz(const SpectralField& f, int axis, double eta) {
    if (!(eta > 0.0)) throw std::invalid_argument("modified_riesz: eta must be positive");
    if (axis < 0 || axis >= f.grid().dim()) throw std::invalid_argument("modified_riesz: bad axis");
    auto tables = spectral::spectral_tables(f.grid());
    const auto& kd = tables->kd[axis];
    const auto& k2 = tables->k2;
    return spectral::apply_multiplier(
        f, [&](std::size_t i) { return spectral::Complex(0.0, kd[i] / std::sqrt(eta + k2[i])); });
}

}  // namespace cns::harmonic
