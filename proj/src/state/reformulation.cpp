#include "cns/state/reformulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "cns/spectral/norms.hpp"

namespace cns::state {

using spectral::dealias;
using spectral::divergence;
using spectral::gradient;
using spectral::helmholtz_inverse;

namespace {

void require_normalized(const FluidState& state) {
    if (!state.is_normalized()) {
        throw std::invalid_argument("state is not normalized (mu + lambda must equal 1); call normalize_nu first");
    }
}

SpectralField product(const SpectralField& a, const SpectralField& b) { return pointwise_product(a, b); }

}  // namespace

SpectralField pressure_field(const SpectralField& rho_dev, const PressureLaw& law) {
    auto [lo, hi] = law.validity_interval();
    const auto& values = rho_dev.physical();
    std::vector<double> p(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double rho = 1.0 + values[i];
        if (rho < lo || rho > hi) {
            std::ostringstream msg;
            msg << "density " << rho << " leaves the validity interval of the pressure law: "
                << (rho < lo ? "lower bound 1 - 4 eps = " : "upper bound 1 + 4 eps = ") << (rho < lo ? lo : hi);
            throw std::domain_error(msg.str());
        }
        p[i] = law.pressure(rho);
    }
    return dealias(SpectralField::from_physical(rho_dev.grid(), std::move(p)));
}

VectorField compute_v(const SpectralField& rho_dev, const PressureLaw& law, double nu) {
    VectorField v = gradient(helmholtz_inverse(pressure_field(rho_dev, law), 1.0, nu));
    v *= -1.0;
    return v;
}

VectorField compose_u(const FluidState& state, const PressureLaw& law) {
    return state.w() + compute_v(state.rho_dev(), law, state.nu());
}

Kinematics kinematics(const FluidState& state, const PressureLaw& law) {
    require_normalized(state);
    SpectralField pressure = pressure_field(state.rho_dev(), law);
    SpectralField resolvent = helmholtz_inverse(pressure, 1.0, 1.0);
    VectorField v = gradient(resolvent);
    v *= -1.0;
    VectorField u = state.w() + v;
    return Kinematics{std::move(pressure), std::move(resolvent), std::move(v), std::move(u), state.density()};
}

SpectralField rhs_density(const FluidState& state, const PressureLaw& law) {
    return rhs_density(state, kinematics(state, law));
}

SpectralField rhs_density(const FluidState& state, const Kinematics& kin) {
    require_normalized(state);
    const auto& grid = state.grid();
    const int d = grid.dim();
    VectorField grad_rho = gradient(state.rho_dev());
    const SpectralField div_w_field = divergence(state.w());
    const auto& div_w = div_w_field.physical();
    // Lap (Id - Lap)^{-1} P = (Id - Lap)^{-1} P - P.
    const auto& res = kin.resolvent.physical();
    const auto& pres = kin.pressure.physical();
    const auto& rho = kin.density.physical();
    std::vector<double> out(grid.size(), 0.0);
    for (int a = 0; a < d; ++a) {
        const auto& ua = kin.u[a].physical();
        const auto& ga = grad_rho[a].physical();
        for (std::size_t i = 0; i < out.size(); ++i) out[i] -= ua[i] * ga[i];
    }
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += rho[i] * (res[i] - pres[i] - div_w[i]);
    return dealias(SpectralField::from_physical(grid, std::move(out)));
}

ForcingTerms forcing_terms(const FluidState& state, const PressureLaw& law) {
    return forcing_terms(state, law, kinematics(state, law));
}

ForcingTerms forcing_terms(const FluidState& state, const PressureLaw& law, const Kinematics& kin) {
    require_normalized(state);
    const auto& grid = state.grid();
    const int d = grid.dim();
    const auto& rho = kin.density.physical();
    const double rho_min = *std::min_element(rho.begin(), rho.end());
    if (rho_min <= 0.1) throw std::domain_error("assemble_F: min rho <= 0.1");

    // (Id - Lap)^{-1} grad P = grad of the resolvent.
    VectorField pressure_gradient = gradient(kin.resolvent);
    for (int a = 0; a < d; ++a) {
        auto& values = pressure_gradient[a].physical_mut();
        for (std::size_t i = 0; i < values.size(); ++i) values[i] /= rho[i];
    }

    spectral::TensorField grad_u = gradient(kin.u);
    VectorField transport(grid);
    for (int i = 0; i < d; ++i) {
        std::vector<double> acc(grid.size(), 0.0);
        for (int j = 0; j < d; ++j) {
            const auto& uj = kin.u[j].physical();
            const auto& dij = grad_u(i, j).physical();
            for (std::size_t n = 0; n < acc.size(); ++n) acc[n] += uj[n] * dij[n];
        }
        transport[i] = SpectralField::from_physical(grid, std::move(acc));
    }

    // g(rho) div u - div(P u), with d_t P = g div u - div(P u).
    SpectralField div_u = divergence(kin.u);
    VectorField pu(grid);
    for (int a = 0; a < d; ++a) pu[a] = dealias(product(kin.pressure, kin.u[a]));
    SpectralField div_pu = divergence(pu);
    const auto& du = div_u.physical();
    std::vector<double> source(grid.size());
    for (std::size_t n = 0; n < source.size(); ++n) source[n] = law.g(rho[n]) * du[n];
    SpectralField h = dealias(SpectralField::from_physical(grid, std::move(source))) - div_pu;
    VectorField compressive = gradient(helmholtz_inverse(h, 1.0, 1.0));
    compressive *= -1.0;

    return ForcingTerms{std::move(pressure_gradient), std::move(transport), std::move(compressive)};
}

VectorField assemble_F(const FluidState& state, const PressureLaw& law) {
    return assemble_F(state, law, kinematics(state, law));
}

VectorField assemble_F(const FluidState& state, const PressureLaw& law, const Kinematics& kin) {
    ForcingTerms terms = forcing_terms(state, law, kin);
    VectorField sum = terms.pressure_gradient + terms.transport;
    sum += terms.compressive;
    return dealias(sum);
}

namespace {

FluidState rescale(const FluidState& state, const PressureLaw& law, double factor, double new_length,
                   double new_scale) {
    // u is invariant under the rescaling; w is rebuilt for the target splitting.
    VectorField u = compose_u(state, law);
    TorusGrid grid(state.grid().dim(), state.grid().n(), new_length);
    SpectralField rho = SpectralField::from_physical(grid, state.rho_dev().physical());
    std::vector<SpectralField> comps;
    for (int a = 0; a < u.size(); ++a) comps.push_back(SpectralField::from_physical(grid, u[a].physical()));
    VectorField u_new(std::move(comps));
    LameParameters lame(state.mu() / factor, state.lambda() / factor);
    VectorField w_new = u_new - compute_v(rho, law, lame.nu());
    return FluidState(state.time() / factor, std::move(rho), std::move(w_new), lame,
                      Units{new_scale, state.units().physical_length});
}

}  // namespace

FluidState normalize_nu(const FluidState& state, const PressureLaw& law) {
    const double nu = state.nu();
    if (state.is_normalized()) return state;
    return rescale(state, law, nu, state.grid().length() / nu, state.units().scale * nu);
}

FluidState denormalize(const FluidState& state, const PressureLaw& law) {
    const double scale = state.units().scale;
    if (scale == 1.0) return state;
    return rescale(state, law, 1.0 / scale, state.units().physical_length, 1.0);
}

EnergyTriple energy_functional(const FluidState& state, const PressureLaw& law) {
    VectorField u = compose_u(state, law);
    SpectralField rho = state.density();
    const auto& rv = rho.physical();
    const double cell = state.grid().cell_volume();
    double kinetic = 0.0;
    for (int a = 0; a < u.size(); ++a) {
        const auto& ua = u[a].physical();
        for (std::size_t i = 0; i < rv.size(); ++i) kinetic += rv[i] * ua[i] * ua[i];
    }
    kinetic *= 0.5 * cell;
    const bool available = law.derivative_positive();
    double potential = std::numeric_limits<double>::quiet_NaN();
    if (available) {
        potential = 0.0;
        for (double r : rv) potential += law.potential(r);
        potential *= cell;
    }
    spectral::TensorField grad_u = gradient(u);
    double grad2 = 0.0;
    for (int i = 0; i < u.size(); ++i) {
        for (int j = 0; j < u.size(); ++j) {
            for (double x : grad_u(i, j).physical()) grad2 += x * x;
        }
    }
    double div2 = 0.0;
    for (double x : divergence(u).physical()) div2 += x * x;
    const double dissipation = (state.mu() * grad2 + state.lambda() * div2) * cell;
    return EnergyTriple{kinetic, potential, dissipation, available};
}

}  // namespace cns::state
