#include "cns/solver/run_config.hpp"

#include <cmath>
#include <stdexcept>

#include "cns/spectral/operators.hpp"
#include "cns/state/initial_data.hpp"

namespace cns::solver {

double Exponents::r0(int dim) const { return 1.0 / (1.0 / r - 1.0 + dim / (2.0 * p)); }

double Exponents::r1() const { return 1.0 / (1.0 / r - 0.5); }

double Exponents::default_weight_exponent(int dim) const {
    return std::max({r0(dim) / 2.0, r1() / 2.0, 2.0}) + 0.5;
}

void Exponents::validate(int dim) const {
    if (!(p > dim && std::isfinite(p))) throw std::invalid_argument("exponents: need d < p < infinity");
    const double upper = 2.0 * p / (2.0 * p - dim);
    if (!(r > 1.0 && r < upper)) {
        throw std::invalid_argument("exponents: need 1 < r < 2p/(2p-d) = " + std::to_string(upper));
    }
}

void RunConfig::validate() const {
    make_grid();
    make_law();
    make_lame();
    exponents.validate(dim);
    if (!(dt >= 0.0)) throw std::invalid_argument("time.dt must be nonnegative");
    if (!(cfl > 0.0)) throw std::invalid_argument("time.cfl must be positive");
    if (!(horizon >= 0.0)) throw std::invalid_argument("time.horizon must be nonnegative");
    if (output_every < 1) throw std::invalid_argument("time.output_every must be at least 1");
    if (!(budget_constant >= 0.0)) throw std::invalid_argument("budget constant must be nonnegative");
    const auto& k = initial.kind;
    if (k != "zero" && k != "smooth" && k != "patch" && k != "rotation") {
        throw std::invalid_argument("initial.kind must be zero, smooth, patch or rotation");
    }
    if ((k == "patch" || k == "rotation") && !(initial.radius > 0.0 && initial.radius < 0.5)) {
        throw std::invalid_argument("initial.radius must lie in (0, 1/2)");
    }
    if (k == "rotation" && dim != 2) throw std::invalid_argument("rotation initial data needs d = 2");
    if (k == "smooth" && !(std::abs(initial.rho_amplitude) < 4.0 * epsilon)) {
        throw std::invalid_argument("initial.rho_amplitude must be below 4 eps");
    }
}

TorusGrid RunConfig::make_grid() const { return TorusGrid(dim, n, length); }

PressureLaw RunConfig::make_law() const {
    if (law == "linear") return PressureLaw::linear(a, epsilon);
    if (law == "gamma") return PressureLaw::gamma_law(a, gamma, epsilon);
    throw std::invalid_argument("pressure.law must be \"linear\" or \"gamma\"");
}

spectral::LameParameters RunConfig::make_lame() const { return spectral::LameParameters(mu, lambda); }

double RunConfig::smallness_constant() const {
    return budget_constant > 0.0 ? budget_constant : make_law().derivative_sup();
}

FluidState build_initial_state(const RunConfig& config) {
    const TorusGrid grid = config.make_grid();
    const auto& init = config.initial;
    const double half = 0.5 * grid.length();
    Point center{init.center_x < 0 ? half : init.center_x, init.center_y < 0 ? half : init.center_y,
                 init.center_z < 0 ? half : init.center_z};
    spectral::SpectralField rho(grid);
    spectral::VectorField w(grid);
    if (init.kind == "smooth") {
        rho = state::smooth_density(grid, init.rho_amplitude);
        w = state::smooth_velocity(grid, init.w_amplitude);
    } else if (init.kind == "patch" || init.kind == "rotation") {
        rho = state::patch_density(grid, center, init.radius * grid.length(), config.epsilon,
                                   init.width_cells * grid.dx());
        if (init.kind == "rotation") {
            w = state::rotation_velocity(grid, init.omega, init.inner_radius * grid.length(),
                                         init.outer_radius * grid.length());
        }
    }
    w = spectral::dealias(w);
    return FluidState(0.0, std::move(rho), std::move(w), config.make_lame());
}

}  // namespace cns::solver
