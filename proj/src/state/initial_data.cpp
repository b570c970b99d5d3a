#include "cns/state/initial_data.hpp"

#include <cmath>
#include <stdexcept>

#include "cns/harmonic/littlewood_paley.hpp"
#include "cns/spectral/norms.hpp"
#include "cns/spectral/operators.hpp"

namespace cns::state {

namespace {

double periodic_offset(double x, double c, double length) {
    double d = x - c;
    d -= length * std::round(d / length);
    return d;
}

}  // namespace

double disc_signed_distance(const TorusGrid& grid, const Point& center, double radius, const Point& x) {
    double r2 = 0.0;
    for (int a = 0; a < grid.dim(); ++a) {
        const double d = periodic_offset(x[a], center[a], grid.length());
        r2 += d * d;
    }
    return radius - std::sqrt(r2);
}

SpectralField mollified_disc(const TorusGrid& grid, const Point& center, double radius, double width) {
    if (!(radius > 0.0 && width > 0.0)) throw std::invalid_argument("mollified_disc: radius and width must be positive");
    return SpectralField::from_function(grid, [&](const Point& x) {
        const double d = disc_signed_distance(grid, center, radius, x);
        return harmonic::smooth_step((0.5 * width - d) / width);
    });
}

SpectralField patch_density(const TorusGrid& grid, const Point& center, double radius, double epsilon,
                            double width) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("patch_density: eps must lie in (0, 1)");
    if (width <= 0.0) width = 2.0 * grid.dx();
    SpectralField rho = spectral::dealias(mollified_disc(grid, center, radius, width));
    rho *= epsilon / spectral::sup_norm(rho);
    return rho;
}

SpectralField smooth_density(const TorusGrid& grid, double amplitude) {
    const double k = grid.wavenumber_unit();
    const int d = grid.dim();
    SpectralField f = SpectralField::from_function(grid, [&](const Point& x) {
        double value = std::sin(k * x[0]);
        for (int a = 1; a < d; ++a) value *= std::cos(k * x[a]);
        double phase = 0.0;
        for (int a = 0; a < d; ++a) phase += (a + 1) * k * x[a];
        return value + 0.5 * std::cos(phase + 0.3);
    });
    const double sup = spectral::sup_norm(f);
    f *= amplitude / sup;
    return f;
}

VectorField smooth_velocity(const TorusGrid& grid, double amplitude) {
    const double k = grid.wavenumber_unit();
    const int d = grid.dim();
    VectorField v(grid);
    for (int a = 0; a < d; ++a) {
        const int next = (a + 1) % d;
        v[a] = SpectralField::from_function(grid, [&](const Point& x) {
            // Shear in the next coordinate plus a compressive wave along this axis.
            const double shear = d > 1 ? std::sin(k * x[next] + 0.2 * a) : 0.0;
            return shear + 0.5 * std::cos(k * x[a] + 0.7);
        });
    }
    const double sup = spectral::sup_norm(v);
    v *= amplitude / sup;
    return v;
}

double radial_cutoff(double r, double inner, double outer) {
    return harmonic::smooth_step((r - inner) / (outer - inner));
}

VectorField rotation_velocity(const TorusGrid& grid, double omega, double inner_radius, double outer_radius) {
    if (grid.dim() != 2) throw std::invalid_argument("rotation_velocity: only d = 2 is supported");
    if (!(inner_radius > 0.0 && inner_radius < outer_radius && outer_radius <= 0.5 * grid.length())) {
        throw std::invalid_argument("rotation_velocity: need 0 < inner < outer <= L/2");
    }
    const double c = 0.5 * grid.length();
    VectorField v(grid);
    for (int a = 0; a < 2; ++a) {
        v[a] = SpectralField::from_function(grid, [&](const Point& x) {
            const double dx = x[0] - c;
            const double dy = x[1] - c;
            const double beta = radial_cutoff(std::hypot(dx, dy), inner_radius, outer_radius);
            return omega * beta * (a == 0 ? -dy : dx);
        });
    }
    return v;
}

}  // namespace cns::state
