#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"

#include "cns/lagrangian/flow_io.hpp"
#include "cns/lagrangian/identities.hpp"
#include "cns/lagrangian/stability.hpp"
#include "cns/spectral/norms.hpp"
#include "cns/spectral/operators.hpp"
#include "cns/state/initial_data.hpp"
#include "cns/state/reformulation.hpp"
#include "test_support.hpp"

using namespace cns::spectral;
using namespace cns::lagrangian;
using cns::test::max_abs;
using cns::test::max_abs_diff;

namespace {

VectorField constant_velocity(const TorusGrid& grid, double a, double b) {
    return VectorField(std::vector<SpectralField>{SpectralField::constant(grid, a), SpectralField::constant(grid, b)});
}

/// Steady history sampled every `spacing` up to `horizon`.
VelocityHistory steady(const VectorField& u, double horizon, double spacing) {
    std::vector<double> times;
    std::vector<VectorField> fields;
    const int n = static_cast<int>(std::lround(horizon / spacing));
    for (int k = 0; k <= n; ++k) {
        times.push_back(k * spacing);
        fields.push_back(u);
    }
    return VelocityHistory(times, fields);
}

VectorField cellular(const TorusGrid& grid, double a) {
    return VectorField(std::vector<SpectralField>{
        SpectralField::from_function(grid, [&](const Point& x) { return a * std::sin(x[1]) + 0.5 * a * std::cos(x[0]); }),
        SpectralField::from_function(grid, [&](const Point& x) { return a * std::sin(x[0] + 0.4); })});
}

InterpolationOptions exact() {
    InterpolationOptions o;
    o.method = FourierInterpolator::Method::Exact;
    return o;
}

}  // namespace

TEST_CASE("small matrices: adjugate times matrix is det times identity") {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> normal;
    for (int d = 1; d <= 3; ++d) {
        for (int t = 0; t < 50; ++t) {
            double m[9], adj[9];
            for (int e = 0; e < d * d; ++e) m[e] = normal(rng);
            small_adjugate(m, d, adj);
            const double det = small_det(m, d);
            for (int i = 0; i < d; ++i) {
                for (int j = 0; j < d; ++j) {
                    double acc = 0.0;
                    for (int k = 0; k < d; ++k) acc += adj[i * d + k] * m[k * d + j];
                    CHECK(std::abs(acc - (i == j ? det : 0.0)) <= 1e-12);
                }
            }
        }
    }
}

TEST_CASE("integrate_flow: zero and constant velocity") {
    const TorusGrid grid(2, 32);
    const auto still = integrate_flow(steady(constant_velocity(grid, 0.0, 0.0), 0.4, 0.1), 0.4);
    CHECK(still.maps.size() == 3);
    CHECK(max_abs(still.final().displacement[0]) == 0.0);
    CHECK(max_abs(still.final().det - SpectralField::constant(grid, 1.0)) == 0.0);

    const double cx = 0.3, cy = -0.7;
    const auto moved = integrate_flow(steady(constant_velocity(grid, cx, cy), 0.4, 0.1), 0.4);
    CHECK(max_abs_diff(moved.final().displacement[0], SpectralField::constant(grid, cx * 0.4)) <= 1e-12);
    CHECK(max_abs_diff(moved.final().displacement[1], SpectralField::constant(grid, cy * 0.4)) <= 1e-12);
    CHECK(max_abs_diff(moved.final().det, SpectralField::constant(grid, 1.0)) <= 1e-12);
    CHECK(moved.final().time == doctest::Approx(0.4));
    CHECK_THROWS_AS(integrate_flow(steady(constant_velocity(grid, 0.0, 0.0), 0.4, 0.1), 0.5), std::invalid_argument);
}

TEST_CASE("integrate_flow: rigid rotation matches the rotation matrix, fourth order in the step") {
    const TorusGrid grid(2, 128);
    const double L = grid.length();
    const double omega = 1.0, horizon = 0.8;
    const VectorField u = cns::state::rotation_velocity(grid, omega, 0.25 * L, 0.5 * L);
    std::vector<FlowMap> finals;
    for (double spacing : {0.2, 0.1, 0.05}) finals.push_back(integrate_flow(steady(u, horizon, spacing), horizon).final());
    const double c = std::cos(omega * horizon), s = std::sin(omega * horizon);
    double err = 0.0, jerr = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const auto y = grid.coordinates(k);
        if (std::hypot(y[0] - L / 2, y[1] - L / 2) > 0.15 * L) continue;
        const auto& f = finals.back();
        err = std::max({err, std::abs(f.jacobian(0, 0).physical()[k] - c), std::abs(f.jacobian(0, 1).physical()[k] + s),
                        std::abs(f.jacobian(1, 0).physical()[k] - s), std::abs(f.jacobian(1, 1).physical()[k] - c)});
        jerr = std::max(jerr, std::abs(f.det.physical()[k] - 1.0));
    }
    CHECK(err <= 1e-4);
    CHECK(jerr <= 1e-4);
    const double coarse = max_abs_diff(finals[0].displacement, finals[1].displacement);
    const double fine = max_abs_diff(finals[1].displacement, finals[2].displacement);
    MESSAGE("rotation step differences " << coarse << " " << fine);
    CHECK(coarse / fine >= 12.0);
}

TEST_CASE("integrate_flow: stability error and k0 flag") {
    const TorusGrid grid(2, 32);
    const VectorField squeeze(std::vector<SpectralField>{
        SpectralField::from_function(grid, [](const Point& x) { return -3.0 * std::sin(x[0]); }),
        SpectralField::from_function(grid, [](const Point& x) { return -3.0 * std::sin(x[1]); })});
    CHECK_THROWS_AS(integrate_flow(steady(squeeze, 0.6, 0.05), 0.6), FlowStabilityError);
    const auto path = integrate_flow(steady(cellular(grid, 1.0), 0.6, 0.1), 0.6, {}, 0.5);
    CHECK(path.maps.front().within_k0);
    CHECK_FALSE(path.final().within_k0);
}

TEST_CASE("Lagrangian identities: identity, translation, smooth flow") {
    const TorusGrid grid(2, 32);
    std::mt19937_64 rng(4);
    const auto k = cns::test::random_smooth_field(grid, rng, 4);
    const auto h = cns::test::random_vector_field(grid, rng, 4);
    const auto f = cns::test::random_smooth_field(grid, rng, 4);

    const auto id = lagrangian_identities_check(FlowMap::identity(grid), k, h, f, exact());
    CHECK(id.max() <= 1e-12);

    const auto shift = integrate_flow(steady(constant_velocity(grid, 0.37, -0.21), 0.4, 0.1), 0.4).final();
    const auto tr = lagrangian_identities_check(shift, k, h, f, exact());
    CHECK(tr.max() <= 1e-10);

    std::vector<double> residuals;
    for (int n : {32, 64}) {
        const TorusGrid g(2, n);
        const auto flow = integrate_flow(steady(cellular(g, 0.5), 0.4, 0.05), 0.4).final();
        std::mt19937_64 r2(9);
        const auto rep = lagrangian_identities_check(flow, cns::test::random_smooth_field(g, r2, 4),
                                                     cns::test::random_vector_field(g, r2, 4),
                                                     cns::test::random_smooth_field(g, r2, 4), exact());
        CHECK(rep.adjugate <= 1e-12);
        residuals.push_back(rep.max());
    }
    MESSAGE("smooth flow identity residuals " << residuals[0] << " " << residuals[1]);
    CHECK(residuals[1] <= 1e-6);
}

TEST_CASE("inverse flow: psi(psi^{-1}(x)) = x") {
    const TorusGrid grid(2, 32);
    const auto flow = integrate_flow(steady(cellular(grid, 0.5), 0.4, 0.1), 0.4).final();
    const auto inv = inverse_flow(flow, 20, 1e-10, exact());
    CHECK(inv.last_change <= 1e-10);
    CHECK(inv.iterations <= 20);
    // psi(x + e(x)) = x + e(x) + d(x + e(x)) should equal x.
    std::vector<Point> y(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        y[k] = grid.coordinates(k);
        for (int a = 0; a < 2; ++a) y[k][a] += inv.displacement[a].physical()[k];
    }
    double err = 0.0;
    for (int a = 0; a < 2; ++a) {
        const auto dy = FourierInterpolator(flow.displacement[a], FourierInterpolator::Method::Exact).evaluate(y);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            err = std::max(err, std::abs(inv.displacement[a].physical()[k] + dy[k]));
        }
    }
    CHECK(err <= 1e-9);
}

TEST_CASE("mass identity: zero run, manufactured translation, patch run") {
    cns::solver::RunConfig cfg;
    cfg.n = 32;
    cfg.horizon = 0.2;
    cfg.dt = 0.01;
    cfg.output_every = 5;
    cfg.initial.kind = "zero";
    const auto law = cfg.make_law();
    const auto zero = cns::solver::run(cfg);
    const auto zpath = integrate_flow(VelocityHistory::from_trajectory(zero, law), 0.2);
    for (const auto& r : mass_identity_check(zero, zpath)) CHECK(r.residual <= 1e-14);

    // rho(t, x) = rho_0(x - c t) carried by the constant velocity c.
    const TorusGrid grid(2, 32);
    const double cx = 0.4, cy = 0.25;
    cns::solver::Trajectory manufactured;
    for (int k = 0; k <= 4; ++k) {
        const double t = 0.1 * k;
        const SpectralField rho = SpectralField::from_function(grid, [&](const Point& x) {
            return 0.01 * std::sin(x[0] - cx * t) * std::cos(2 * (x[1] - cy * t));
        });
        manufactured.snapshots.emplace_back(t, rho, VectorField(grid), LameParameters(0.5, 0.5));
    }
    const auto mpath = integrate_flow(steady(constant_velocity(grid, cx, cy), 0.4, 0.1), 0.4);
    for (const auto& r : mass_identity_check(manufactured, mpath, exact())) CHECK(r.residual <= 1e-12);
    for (const auto& r : mass_identity_check(manufactured, mpath)) CHECK(r.residual <= 1e-6);

    cns::solver::RunConfig patch;
    patch.n = 64;
    patch.horizon = 0.2;
    patch.dt = 0.005;
    patch.output_every = 10;
    patch.initial.kind = "patch";
    const auto run = cns::solver::run(patch);
    const auto ppath = integrate_flow(VelocityHistory::from_trajectory(run, patch.make_law()), 0.2);
    for (const auto& r : mass_identity_check(run, ppath)) CHECK(r.residual <= 1e-2);
}

TEST_CASE("flow bounds: identical flows, U >= 1 rejected, nearby rotations, amplitude fit") {
    const TorusGrid grid(2, 64);
    const double L = grid.length();
    const auto flow = integrate_flow(steady(cellular(grid, 0.2), 0.4, 0.1), 0.4).final();
    const auto same = flow_delta_check(flow, flow, 0.0, 4.0);
    CHECK(same.adjugate == 0.0);
    CHECK(same.inverse == 0.0);
    CHECK(same.det == 0.0);
    CHECK_THROWS_AS(flow_bounds_check(flow, 1.0), std::invalid_argument);

    // Rotations at rates 1 and 1 + eta: deltas scale linearly in eta.
    const VectorField base = cns::state::rotation_velocity(grid, 1.0, 0.25 * L, 0.5 * L);
    const auto ref = integrate_flow(steady(base, 0.4, 0.1), 0.4).final();
    std::vector<double> deltas;
    for (double eta : {0.01, 0.02, 0.04}) {
        const auto other = integrate_flow(steady((1.0 + eta) * base, 0.4, 0.1), 0.4).final();
        deltas.push_back(flow_delta_check(ref, other, 0.0, 4.0).inverse);
    }
    CHECK(deltas[1] / deltas[0] == doctest::Approx(2.0).epsilon(0.05));
    CHECK(deltas[2] / deltas[1] == doctest::Approx(2.0).epsilon(0.05));

    std::vector<double> u, q;
    for (double a : {0.05, 0.1, 0.15, 0.2, 0.25}) {
        const auto path = integrate_flow(steady(cellular(grid, a), 0.4, 0.1), 0.4);
        const auto b = flow_bounds_check(path.final(), path.final().gradient_integral);
        u.push_back(b.gradient_integral);
        q.push_back(b.id_minus_inverse);
    }
    const auto fit = fit_linear_bound(u, q);
    CHECK(fit.constant > 0.0);
    CHECK(fit.within(0.1));
}

TEST_CASE("FLOW1 round trip") {
    const TorusGrid grid(2, 16);
    const auto flow = integrate_flow(steady(cellular(grid, 0.3), 0.2, 0.1), 0.2).final();
    std::stringstream buffer;
    write_flow(buffer, flow);
    const auto back = read_flow(buffer);
    CHECK(back.time == flow.time);
    CHECK(max_abs_diff(back.displacement, flow.displacement) == 0.0);
    CHECK(max_abs_diff(back.det, flow.det) == 0.0);
    std::stringstream bad("FLOW2xxxx");
    CHECK_THROWS(read_flow(bad));
}

TEST_CASE("stability energy: identical runs, mismatched data, energy equivalence") {
    cns::solver::RunConfig cfg;
    cfg.n = 32;
    cfg.horizon = 0.2;
    cfg.dt = 0.01;
    cfg.output_every = 5;
    cfg.initial.kind = "smooth";
    cfg.initial.rho_amplitude = 0.005;
    cfg.initial.w_amplitude = 0.05;
    cfg.stop_at_budget_exit = false;
    const auto law = cfg.make_law();
    const auto run = cns::solver::run(cfg);
    const auto same = stability_energy(run, run, law);
    for (double e : same.energy) CHECK(e == 0.0);
    for (std::size_t k = 1; k < same.dissipation_cum.size(); ++k) {
        CHECK(same.dissipation_cum[k] >= same.dissipation_cum[k - 1]);
    }

    auto other_cfg = cfg;
    other_cfg.initial.rho_amplitude = 0.004;
    const auto other = cns::solver::run(other_cfg);
    CHECK_THROWS_AS(stability_energy(run, other, law), std::invalid_argument);

    // Perturbed w: the dissipation part is nondecreasing and E stays finite.
    const auto init = cns::solver::build_initial_state(cfg);
    std::mt19937_64 rng(2);
    const cns::state::FluidState perturbed(0.0, init.rho_dev(),
                                           init.w() + 1e-6 * cns::test::random_vector_field(init.grid(), rng, 2),
                                           init.lame());
    const auto prun = cns::solver::run(cfg, perturbed);
    const auto rep = stability_energy(run, prun, law);
    CHECK(rep.energy.front() > 0.0);
    for (std::size_t k = 1; k < rep.dissipation_cum.size(); ++k) {
        CHECK(rep.dissipation_cum[k] >= rep.dissipation_cum[k - 1]);
    }
    const double c = fit_gronwall_constant(rep, 0.2);
    StabilityReport fitted = rep;
    fitted.gronwall_constant = c;
    CHECK(fitted.violations() == 0);

    // int rho_0 |ubar|^2 dy = int rho |u|^2 dx.
    const auto history = VelocityHistory::from_trajectory(run, law);
    const auto path = integrate_flow(history, history.end());
    const auto ubar = lagrangian_velocity(history, path);
    const SpectralField rho0 = run.snapshots.front().rho_dev() + SpectralField::constant(init.grid(), 1.0);
    const auto& last = run.snapshots.back();
    const VectorField u = cns::state::compose_u(last, law);
    const SpectralField rho = last.rho_dev() + SpectralField::constant(init.grid(), 1.0);
    double eulerian = 0.0;
    for (int a = 0; a < 2; ++a) eulerian += integral(pointwise_product(rho, pointwise_product(u[a], u[a])));
    CHECK(lagrangian_kinetic(rho0, ubar.back()) == doctest::Approx(eulerian).epsilon(1e-5));
}

TEST_CASE("weighted gradient integral: frozen state closed form") {
    const TorusGrid grid(2, 16);
    const VectorField w = cellular(grid, 0.1);
    const double g = sup_norm(gradient(w).frobenius());
    cns::solver::Trajectory traj;
    for (int k = 0; k <= 4; ++k) {
        traj.snapshots.emplace_back(0.1 * k, SpectralField::constant(grid, 0.0), w, LameParameters(0.5, 0.5));
    }
    CHECK(weighted_gradient_integral(traj) == doctest::Approx(g * g * 0.4 * 0.4 / 2).epsilon(1e-12));
}
