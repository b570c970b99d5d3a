#pragma once

#include "cns/spectral/field.hpp"
#include "cns/spectral/operators.hpp"

namespace cns::state {

using spectral::LameParameters;
using spectral::SpectralField;
using spectral::TorusGrid;
using spectral::VectorField;

/// Units of a state relative to the physical problem. A state produced by
/// normalize_nu carries scale = nu of the physical problem and the physical
/// box length; physical states have scale = 1.
struct Units {
    double scale = 1.0;
    double physical_length = 0.0;
};

/// Density deviation rho - 1 and modified velocity w at one time.
class FluidState {
public:
    /// @throws std::invalid_argument if the fields live on different grids,
    ///         w has the wrong number of components, or sup |rho - 1| >= 1.
    FluidState(double time, SpectralField rho_dev, VectorField w, LameParameters lame, Units units = {});

    double time() const { return time_; }
    const SpectralField& rho_dev() const { return rho_dev_; }
    const VectorField& w() const { return w_; }
    const LameParameters& lame() const { return lame_; }
    const Units& units() const { return units_; }
    const TorusGrid& grid() const { return rho_dev_.grid(); }
    double mu() const { return lame_.mu(); }
    double lambda() const { return lame_.lambda(); }
    double nu() const { return lame_.nu(); }
    /// nu = 1 up to 1e-12.
    bool is_normalized() const;

    SpectralField density() const;

private:
    double time_;
    SpectralField rho_dev_;
    VectorField w_;
    LameParameters lame_;
    Units units_;
};

}  // namespace cns::state
