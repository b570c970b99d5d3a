#include "cns/striated/patch_family.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cns/harmonic/littlewood_paley.hpp"
#include "cns/spectral/norms.hpp"
#include "cns/state/initial_data.hpp"
#include "cns/state/reformulation.hpp"

namespace cns::striated {

namespace {

double periodic_offset(double a, double b, double length) {
    double d = a - b;
    d -= length * std::round(d / length);
    return d;
}

double ramp_up(double s) { return harmonic::smooth_step(1.0 - s); }

}  // namespace

VectorFieldFamily patch_family(const TorusGrid& grid, const spectral::Point& center, double radius, double p) {
    if (grid.dim() != 2) throw std::invalid_argument("patch_family: d = 2 only");
    const double length = grid.length();
    if (!(radius > 0.0) || 1.95 * radius >= 0.5 * length) {
        throw std::invalid_argument("patch_family: need 0 < 1.95 radius < L / 2");
    }
    VectorField x1(grid, 2);
    VectorField x2(grid, 2);
    std::vector<double> a(grid.size()), b(grid.size()), c(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const auto x = grid.coordinates(k);
        const double dx = periodic_offset(x[0], center[0], length);
        const double dy = periodic_offset(x[1], center[1], length);
        const double r = std::hypot(dx, dy);
        const double beta = state::radial_cutoff(r, 1.3 * radius, 1.95 * radius);
        a[k] = -beta * dy / radius;
        b[k] = beta * dx / radius;
        c[k] = ramp_up((std::abs(r - radius) - 0.25 * radius) / (0.3 * radius));
    }
    x1[0] = SpectralField::from_physical(grid, std::move(a));
    x1[1] = SpectralField::from_physical(grid, std::move(b));
    x2[0] = SpectralField::from_physical(grid, std::move(c));
    x2[1] = SpectralField::constant(grid, 0.0);
    return VectorFieldFamily({x1, x2}, p);
}

SpectralField checkerboard(const TorusGrid& grid, int cells, double amplitude) {
    if (cells < 1) throw std::invalid_argument("checkerboard: need at least one cell");
    std::vector<double> v(grid.size());
    const double side = grid.length() / cells;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const auto x = grid.coordinates(k);
        long parity = 0;
        for (int a = 0; a < grid.dim(); ++a) parity += static_cast<long>(std::floor(x[a] / side + 1e-9));
        v[k] = parity % 2 == 0 ? amplitude : -amplitude;
    }
    return SpectralField::from_physical(grid, std::move(v));
}

std::vector<SweepCell> disc_sweep(const std::vector<int>& ns, const std::vector<double>& widths, double length,
                                  double radius_fraction, double eta, double p) {
    std::vector<SweepCell> out;
    for (int n : ns) {
        const TorusGrid grid(2, n, length);
        const spectral::Point center{0.5 * length, 0.5 * length, 0.0};
        const double radius = radius_fraction * length;
        const auto family = patch_family(grid, center, radius, p);
        for (double w : widths) {
            const SpectralField g = state::mollified_disc(grid, center, radius, w * grid.dx());
            SweepCell cell;
            cell.n = n;
            cell.width_cells = w;
            cell.tang = tang_estimate_check(g, family, eta);
            cell.tang_dx = tang_dx_estimate_check(g, family, eta);
            out.push_back(cell);
        }
    }
    return out;
}

namespace {

void require_patch_config(const solver::RunConfig& config) {
    config.validate();
    if (config.dim != 2 || (config.initial.kind != "patch" && config.initial.kind != "rotation")) {
        throw std::invalid_argument("striated run: needs a d = 2 patch or rotation configuration");
    }
}

VectorFieldFamily configured_family(const solver::RunConfig& config, const state::FluidState& normalized) {
    const double scale = normalized.units().scale;
    const double half = 0.5 * config.length;
    const spectral::Point center{(config.initial.center_x < 0 ? half : config.initial.center_x) / scale,
                                 (config.initial.center_y < 0 ? half : config.initial.center_y) / scale, 0.0};
    return patch_family(normalized.grid(), center, config.initial.radius * normalized.grid().length(),
                        config.exponents.p);
}

double window_end_of(const std::vector<solver::StepDiagnostics>& diags) {
    double end = diags.front().t;
    for (const auto& d : diags) {
        if (!d.budget_admissible || d.grad_u_cum > std::log(2.0)) break;
        end = d.t;
    }
    return end;
}

double grad_u_cum_at(const std::vector<solver::StepDiagnostics>& diags, double t) {
    for (const auto& d : diags) {
        if (std::abs(d.t - t) <= 1e-9 * std::max(1.0, std::abs(t))) return d.grad_u_cum;
    }
    throw std::invalid_argument("replay_with_family: no diagnostics at a snapshot time");
}

}  // namespace

StriatedRun run_with_family(const solver::RunConfig& config) {
    require_patch_config(config);
    const auto law = config.make_law();
    const auto initial = solver::build_initial_state(config);
    const auto normalized = state::normalize_nu(initial, law);

    VectorFieldFamily family = configured_family(config, normalized);
    VectorField u_prev = state::compose_u(normalized, law);
    StriatedRun out;
    out.history.push_back(sample_family(normalized.time(), 0.0, family, normalized.rho_dev()));
    double t_prev = normalized.time();

    auto observer = [&](const state::FluidState& s, const solver::StepDiagnostics& d) {
        VectorField u = state::compose_u(s, law);
        family = transport_family(family, u_prev, u, s.time() - t_prev);
        u_prev = std::move(u);
        t_prev = s.time();
        out.history.push_back(sample_family(s.time(), d.grad_u_cum, family, s.rho_dev()));
    };
    out.trajectory = solver::run(config, initial, observer);
    out.window_end = window_end_of(out.trajectory.diagnostics);
    return out;
}

StriatedRun replay_with_family(const solver::RunConfig& config, const solver::Trajectory& trajectory) {
    require_patch_config(config);
    if (trajectory.snapshots.empty() || trajectory.diagnostics.empty()) {
        throw std::invalid_argument("replay_with_family: empty trajectory");
    }
    const auto law = config.make_law();
    const auto& snaps = trajectory.snapshots;
    const auto& diags = trajectory.diagnostics;

    VectorFieldFamily family = configured_family(config, snaps.front());
    StriatedRun out;
    out.history.push_back(sample_family(snaps.front().time(), grad_u_cum_at(diags, snaps.front().time()), family,
                                        snaps.front().rho_dev()));
    VectorField u_prev = state::compose_u(snaps.front(), law);
    const double dx = snaps.front().grid().dx();
    for (std::size_t k = 1; k < snaps.size(); ++k) {
        VectorField u_next = state::compose_u(snaps[k], law);
        const double span = snaps[k].time() - snaps[k - 1].time();
        const double speed = std::max(spectral::sup_norm(u_prev), spectral::sup_norm(u_next));
        const int substeps = std::max(1, static_cast<int>(std::ceil(2.0 * speed * span / dx)));
        const double h = span / substeps;
        for (int m = 0; m < substeps; ++m) {
            const double a0 = static_cast<double>(m) / substeps;
            const double a1 = static_cast<double>(m + 1) / substeps;
            VectorField u0 = u_prev;
            u0 *= 1.0 - a0;
            VectorField part = u_next;
            part *= a0;
            u0 += part;
            VectorField u1 = u_prev;
            u1 *= 1.0 - a1;
            part = u_next;
            part *= a1;
            u1 += part;
            family = transport_family(family, u0, u1, h);
        }
        out.history.push_back(
            sample_family(snaps[k].time(), grad_u_cum_at(diags, snaps[k].time()), family, snaps[k].rho_dev()));
        u_prev = std::move(u_next);
    }
    out.trajectory = trajectory;
    out.window_end = window_end_of(diags);
    return out;
}

std::vector<FamilySample> window(const StriatedRun& run) {
    std::vector<FamilySample> out;
    for (const auto& s : run.history) {
        if (s.t <= run.window_end + 1e-12) out.push_back(s);
    }
    return out;
}

}  // namespace cns::striated
