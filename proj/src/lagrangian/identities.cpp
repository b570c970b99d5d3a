#include "cns/lagrangian/identities.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cns/spectral/norms.hpp"
#include "cns/spectral/operators.hpp"

namespace cns::lagrangian {

namespace {

double relative(const SpectralField& lhs, const SpectralField& rhs) {
    const double scale = spectral::sup_norm(lhs);
    const double diff = spectral::sup_norm(lhs - rhs);
    return scale > 0.0 ? diff / scale : diff;
}

SpectralField divide(const SpectralField& f, const SpectralField& j) {
    std::vector<double> v(f.physical().begin(), f.physical().end());
    const auto& jv = j.physical();
    for (std::size_t k = 0; k < v.size(); ++k) v[k] /= jv[k];
    return SpectralField::from_physical(f.grid(), std::move(v));
}

double max_component_relative(const std::vector<SpectralField>& lhs, const std::vector<SpectralField>& rhs) {
    double scale = 0.0, diff = 0.0;
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        scale = std::max(scale, spectral::sup_norm(lhs[i]));
        diff = std::max(diff, spectral::sup_norm(lhs[i] - rhs[i]));
    }
    return scale > 0.0 ? diff / scale : diff;
}

}  // namespace

double IdentityReport::max() const { return std::max({gradient, divergence, chain_rule, adjugate}); }

IdentityReport lagrangian_identities_check(const FlowMap& flow, const SpectralField& k, const VectorField& h,
                                           const SpectralField& f, const InterpolationOptions& options) {
    const auto& grid = flow.grid();
    const int d = grid.dim();
    IdentityReport r;

    const SpectralField kbar = compose(k, flow, options);
    const VectorField grad_k = compose(spectral::gradient(k), flow, options);
    std::vector<SpectralField> lhs, rhs;
    for (int i = 0; i < d; ++i) {
        VectorField column(grid);
        for (int j = 0; j < d; ++j) column[j] = spectral::pointwise_product(flow.adjugate(j, i), kbar);
        lhs.push_back(grad_k[i]);
        rhs.push_back(divide(spectral::divergence(column), flow.det));
    }
    r.gradient = max_component_relative(lhs, rhs);

    const VectorField hbar = compose(h, flow, options);
    const SpectralField div_h = compose(spectral::divergence(h), flow, options);
    VectorField adj_h(grid);
    for (int j = 0; j < d; ++j) {
        SpectralField acc = SpectralField::constant(grid, 0.0);
        for (int m = 0; m < d; ++m) acc += spectral::pointwise_product(flow.adjugate(j, m), hbar[m]);
        adj_h[j] = acc;
    }
    r.divergence = relative(div_h, divide(spectral::divergence(adj_h), flow.det));

    const SpectralField fbar = compose(f, flow, options);
    const VectorField grad_f = compose(spectral::gradient(f), flow, options);
    const VectorField grad_fbar = spectral::gradient(fbar);
    lhs.clear();
    rhs.clear();
    for (int i = 0; i < d; ++i) {
        SpectralField acc = SpectralField::constant(grid, 0.0);
        for (int j = 0; j < d; ++j) acc += spectral::pointwise_product(grad_fbar[j], flow.inverse(j, i));
        lhs.push_back(grad_f[i]);
        rhs.push_back(acc);
    }
    r.chain_rule = max_component_relative(lhs, rhs);

    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            SpectralField acc = SpectralField::constant(grid, 0.0);
            for (int m = 0; m < d; ++m) acc += spectral::pointwise_product(flow.adjugate(i, m), flow.jacobian(m, j));
            if (i == j) acc -= flow.det;
            r.adjugate = std::max(r.adjugate, spectral::sup_norm(acc));
        }
    }
    return r;
}

std::vector<MassResidual> mass_identity_check(const solver::Trajectory& trajectory, const FlowPath& path,
                                              const InterpolationOptions& options) {
    if (trajectory.snapshots.empty()) throw std::invalid_argument("mass_identity_check: empty trajectory");
    const auto& first = trajectory.snapshots.front();
    if (first.grid() != path.final().grid()) throw std::invalid_argument("mass_identity_check: grid mismatch");
    const SpectralField one = SpectralField::constant(first.grid(), 1.0);
    const SpectralField rho0 = first.rho_dev() + one;
    const double scale = spectral::sup_norm(rho0);
    std::vector<MassResidual> out;
    for (const auto& map : path.maps) {
        const state::FluidState* match = nullptr;
        for (const auto& s : trajectory.snapshots) {
            if (std::abs(s.time() - map.time) <= 1e-9 * std::max(1.0, std::abs(map.time))) match = &s;
        }
        if (match == nullptr) throw std::invalid_argument("mass_identity_check: no snapshot at a flow time");
        const SpectralField rho_bar = compose(match->rho_dev() + one, map, options);
        const SpectralField lhs = spectral::pointwise_product(map.det, rho_bar);
        out.push_back({map.time, spectral::sup_norm(lhs - rho0) / scale});
    }
    return out;
}

FlowBounds flow_bounds_check(const FlowMap& flow, double gradient_integral) {
    if (!(gradient_integral < 1.0)) throw std::invalid_argument("flow_bounds_check: need int |grad u|_inf < 1");
    const auto& grid = flow.grid();
    const int d = grid.dim();
    FlowBounds b;
    b.gradient_integral = gradient_integral;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        double adj2 = 0.0, inv2 = 0.0;
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                const double id = i == j ? 1.0 : 0.0;
                adj2 += std::pow(id - flow.adjugate(i, j).physical()[k], 2);
                inv2 += std::pow(id - flow.inverse(i, j).physical()[k], 2);
            }
        }
        const double jv = flow.det.physical()[k];
        b.id_minus_adjugate = std::max(b.id_minus_adjugate, std::sqrt(adj2));
        b.id_minus_inverse = std::max(b.id_minus_inverse, std::sqrt(inv2));
        b.det_deviation = std::max({b.det_deviation, std::abs(jv - 1.0), std::abs(1.0 / jv - 1.0)});
    }
    return b;
}

FlowDeltas flow_delta_check(const FlowMap& a, const FlowMap& b, double delta_integral, double p) {
    if (a.grid() != b.grid()) throw std::invalid_argument("flow_delta_check: grid mismatch");
    const auto& grid = a.grid();
    const int d = grid.dim();
    FlowDeltas out;
    out.delta_integral = delta_integral;
    TensorField dadj(grid), dinv(grid);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            dadj(i, j) = a.adjugate(i, j) - b.adjugate(i, j);
            dinv(i, j) = a.inverse(i, j) - b.inverse(i, j);
        }
    }
    out.adjugate = spectral::lp_norm(dadj, p);
    out.inverse = spectral::lp_norm(dinv, p);
    std::vector<double> inv_diff(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        inv_diff[k] = 1.0 / a.det.physical()[k] - 1.0 / b.det.physical()[k];
    }
    const double det_direct = spectral::lp_norm(a.det - b.det, p);
    const double det_inverse = spectral::lp_norm(SpectralField::from_physical(grid, std::move(inv_diff)), p);
    out.det = std::max(det_direct, det_inverse);
    return out;
}

std::vector<double> lagrangian_delta_integral(const FlowPath& path, const std::vector<VectorField>& ubar1,
                                              const std::vector<VectorField>& ubar2, double p) {
    if (ubar1.size() != path.maps.size() || ubar2.size() != path.maps.size()) {
        throw std::invalid_argument("lagrangian_delta_integral: sizes differ from the path");
    }
    std::vector<double> out(path.maps.size(), 0.0);
    double prev = 0.0;
    for (std::size_t k = 0; k < path.maps.size(); ++k) {
        const double now = spectral::lp_norm(spectral::gradient(ubar1[k] - ubar2[k]), p);
        if (k > 0) out[k] = out[k - 1] + 0.5 * (prev + now) * (path.maps[k].time - path.maps[k - 1].time);
        prev = now;
    }
    return out;
}

LinearFit fit_linear_bound(const std::vector<double>& x, const std::vector<double>& q) {
    if (x.size() != q.size() || x.empty()) throw std::invalid_argument("fit_linear_bound: bad sizes");
    double sxx = 0.0, sxq = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += x[i] * x[i];
        sxq += x[i] * q[i];
    }
    LinearFit fit;
    if (sxx <= 0.0) return fit;
    fit.constant = sxq / sxx;
    fit.worst_excess = -1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] <= 0.0) continue;
        const double excess = fit.constant > 0.0 ? (q[i] / x[i]) / fit.constant - 1.0 : (q[i] > 0.0 ? 1e300 : -1.0);
        fit.worst_excess = std::max(fit.worst_excess, excess);
    }
    return fit;
}

double lagrangian_kinetic(const SpectralField& rho0, const VectorField& ubar) {
    double total = 0.0;
    for (int a = 0; a < ubar.size(); ++a) {
        total += spectral::integral(spectral::pointwise_product(rho0, spectral::pointwise_product(ubar[a], ubar[a])));
    }
    return total;
}

}  // namespace cns::lagrangian
