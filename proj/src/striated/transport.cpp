#include "cns/striated/transport.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cns/spectral/interpolation.hpp"
#include "cns/spectral/norms.hpp"
#include "cns/spectral/operators.hpp"

namespace cns::striated {

using spectral::FourierInterpolator;
using spectral::Point;

namespace {

std::vector<double> interpolate(const SpectralField& f, const std::vector<Point>& points) {
    return FourierInterpolator(f).evaluate(points);
}

}  // namespace

VectorFieldFamily transport_family(const VectorFieldFamily& family, const VectorField& u, double dt) {
    return transport_family(family, u, u, dt);
}

VectorFieldFamily transport_family(const VectorFieldFamily& family, const VectorField& u_start,
                                   const VectorField& u_end, double dt) {
    const auto& grid = family.grid();
    const int d = grid.dim();
    if (u_start.grid() != grid || u_end.grid() != grid) {
        throw std::invalid_argument("transport_family: velocity on a different grid");
    }
    const double speed = std::max(spectral::sup_norm(u_start), spectral::sup_norm(u_end));
    const double courant = speed * dt / grid.dx();
    if (courant > 1.0) {
        std::ostringstream msg;
        msg << "transport_family: CFL violation, |u|_inf dt / dx = " << courant;
        throw TransportCflError(msg.str(), courant);
    }
    if (dt == 0.0) return family;

    const std::size_t n = grid.size();
    const VectorField u_mid = 0.5 * (u_start + u_end);
    std::vector<Point> x(n);
    for (std::size_t k = 0; k < n; ++k) x[k] = grid.coordinates(k);

    std::vector<Point> half = x;
    for (int a = 0; a < d; ++a) {
        const auto& ua = u_mid[a].physical();
        for (std::size_t k = 0; k < n; ++k) half[k][a] -= 0.5 * dt * ua[k];
    }
    std::vector<Point> departure = x;
    for (int a = 0; a < d; ++a) {
        const auto ua = interpolate(u_mid[a], half);
        for (std::size_t k = 0; k < n; ++k) departure[k][a] -= dt * ua[k];
    }

    const TensorField grad_start = spectral::gradient(u_start);
    const TensorField grad_end = spectral::gradient(u_end);
    std::vector<std::vector<double>> grad_dep(static_cast<std::size_t>(d * d));
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) grad_dep[i * d + j] = interpolate(grad_start(i, j), departure);
    }

    std::vector<VectorField> out;
    for (int l = 0; l < family.size(); ++l) {
        std::vector<std::vector<double>> y0(static_cast<std::size_t>(d));
        for (int a = 0; a < d; ++a) y0[a] = interpolate(family[l][a], departure);
        std::vector<std::vector<double>> next(static_cast<std::size_t>(d), std::vector<double>(n));
        for (std::size_t k = 0; k < n; ++k) {
            double g0[3] = {0.0, 0.0, 0.0};
            double y1[3] = {0.0, 0.0, 0.0};
            for (int i = 0; i < d; ++i) {
                for (int j = 0; j < d; ++j) g0[i] += grad_dep[i * d + j][k] * y0[j][k];
            }
            for (int i = 0; i < d; ++i) y1[i] = y0[i][k] + dt * g0[i];
            for (int i = 0; i < d; ++i) {
                double g1 = 0.0;
                for (int j = 0; j < d; ++j) g1 += grad_end(i, j).physical()[k] * y1[j];
                next[i][k] = y0[i][k] + 0.5 * dt * (g0[i] + g1);
            }
        }
        VectorField field(grid);
        for (int a = 0; a < d; ++a) field[a] = SpectralField::from_physical(grid, std::move(next[a]));
        out.push_back(std::move(field));
    }
    return VectorFieldFamily(std::move(out), family.p());
}

FamilySample sample_family(double t, double grad_u_cum, const VectorFieldFamily& family,
                           const SpectralField& rho_dev) {
    FamilySample s;
    s.t = t;
    s.grad_u_cum = grad_u_cum;
    s.sup_norm = family.sup_norm();
    s.nondegeneracy = nondegeneracy(family);
    const SpectralField rho = rho_dev + SpectralField::constant(rho_dev.grid(), 1.0);
    for (int l = 0; l < family.size(); ++l) {
        VectorField rx(family.grid());
        for (int a = 0; a < family.dim(); ++a) rx[a] = spectral::pointwise_product(rho, family[l][a]);
        s.div_rho_x = std::max(s.div_rho_x, spectral::lp_norm(spectral::divergence(rx), family.p()));
    }
    return s;
}

BoundsReport transported_bounds_check(const std::vector<FamilySample>& history, int dim, double p, double tol) {
    BoundsReport report;
    report.density_constant = std::sqrt(static_cast<double>(dim)) * (1.0 - 1.0 / p);
    if (history.empty()) return report;
    const FamilySample& first = history.front();
    auto add = [&](const char* name, double t, double value, double bound, bool upper) {
        BoundRow row;
        row.quantity = name;
        row.t = t;
        row.value = value;
        row.bound = bound;
        if (upper) {
            const double widened = bound * (1.0 + tol);
            row.slack = widened > 0.0 ? (widened - value) / widened : (value <= 0.0 ? 0.0 : -1.0);
            row.pass = value <= widened;
        } else {
            const double widened = bound * (1.0 - tol);
            row.slack = widened > 0.0 ? (value - widened) / widened : 0.0;
            row.pass = value >= widened;
        }
        if (!row.pass) ++report.violations;
        report.rows.push_back(row);
    };
    for (const auto& s : history) {
        const double u = s.grad_u_cum - first.grad_u_cum;
        add("sup_X", s.t, s.sup_norm, first.sup_norm * std::exp(u), true);
        add("nondegeneracy", s.t, s.nondegeneracy, first.nondegeneracy * std::exp(-u), false);
        add("div_rho_X", s.t, s.div_rho_x, first.div_rho_x * std::exp(report.density_constant * u), true);
    }
    return report;
}

}  // namespace cns::striated
