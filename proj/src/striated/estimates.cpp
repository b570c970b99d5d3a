#include "cns/striated/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cns/spectral/norms.hpp"
#include "cns/spectral/operators.hpp"
#include "cns/state/reformulation.hpp"

namespace cns::striated {

namespace {

struct FamilyScalars {
    double sup;
    double grad;
    double inv_i;
};

FamilyScalars family_scalars(const VectorFieldFamily& family) {
    const double i = nondegeneracy(family);
    if (i <= 1e-8) throw std::domain_error("striated estimate: degenerate family (I(X) <= 1e-8)");
    return {family.sup_norm(), family.gradient_norm(), 1.0 / i};
}

TensorField shifted_hessian(const SpectralField& g, double eta) {
    if (!(eta > 0.0)) throw std::invalid_argument("striated estimate: eta must be positive");
    return spectral::hessian(spectral::helmholtz_inverse(g, eta));
}

}  // namespace

double family_directional_norm(const SpectralField& g, const VectorFieldFamily& family) {
    double m = 0.0;
    for (int l = 0; l < family.size(); ++l) {
        m = std::max(m, spectral::lp_norm(directional_div(g, family[l]), family.p()));
    }
    return m;
}

EstimatePair tang_estimate_check(const SpectralField& g, const VectorFieldFamily& family, double eta) {
    const auto s = family_scalars(family);
    const int d = family.dim();
    const TensorField h = shifted_hessian(g, eta);
    EstimatePair out;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) out.lhs = std::max(out.lhs, spectral::sup_norm(h(i, j)));
    }
    const double weight = std::pow(s.sup, 4 * d - 5) * std::pow(s.inv_i, 4 * d - 4);
    out.rhs = (1.0 + weight * s.grad) * spectral::sup_norm(g) + weight * family_directional_norm(g, family);
    return out;
}

EstimatePair tang_dx_estimate_check(const SpectralField& g, const VectorFieldFamily& family, double eta) {
    const auto s = family_scalars(family);
    const int d = family.dim();
    const TensorField h = shifted_hessian(g, eta);
    EstimatePair out;
    for (int l = 0; l < family.size(); ++l) {
        TensorField dh(family.grid());
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) dh(i, j) = directional_div(h(i, j), family[l]);
        }
        out.lhs = std::max(out.lhs, spectral::lp_norm(dh, family.p()));
    }
    const double q = std::pow(s.sup, 4 * d - 5) * s.grad * std::pow(s.inv_i, 4 * d - 4);
    const double g_sup = spectral::sup_norm(g);
    out.rhs = s.grad * (1.0 + q) * g_sup + (1.0 + q) * family_directional_norm(g, family) +
              std::pow(s.sup * s.inv_i, 4 * d - 4) * s.grad * g_sup;
    return out;
}

VelocityGradient gradient_u_assembly(const state::FluidState& state, const state::PressureLaw& law) {
    if (!state.is_normalized()) throw std::invalid_argument("gradient_u_assembly: state must have nu = 1");
    const SpectralField pressure = state::pressure_field(state.rho_dev(), law);
    const TensorField hp = spectral::hessian(spectral::helmholtz_inverse(pressure, 1.0));
    TensorField grad_u = spectral::gradient(state.w());
    const int d = state.grid().dim();
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) grad_u(i, j) = grad_u(i, j) - hp(i, j);
    }
    const double sup = spectral::sup_norm(grad_u.frobenius());
    return {std::move(grad_u), sup};
}

}  // namespace cns::striated
