#include <cmath>
#include <random>

#include "doctest.h"

#include "cns/spectral/norms.hpp"
#include "cns/spectral/operators.hpp"
#include "cns/state/initial_data.hpp"
#include "cns/state/reformulation.hpp"
#include "cns/striated/patch_family.hpp"
#include "test_support.hpp"

using namespace cns::spectral;
using namespace cns::striated;
using cns::test::max_abs;
using cns::test::max_abs_diff;

namespace {

VectorField constant_field(const TorusGrid& grid, double a, double b) {
    return VectorField(std::vector<SpectralField>{SpectralField::constant(grid, a), SpectralField::constant(grid, b)});
}

double periodic(double a, double length) { return a - length * std::round(a / length); }

/// Gaussian bump times a fixed vector, centred at the box centre.
VectorField bump_field(const TorusGrid& grid, double sigma, double a, double b, double angle = 0.0) {
    const double h = 0.5 * grid.length();
    const double c = std::cos(angle), s = std::sin(angle);
    auto profile = [&](const Point& x) {
        const double dx = periodic(x[0] - h, grid.length());
        const double dy = periodic(x[1] - h, grid.length());
        // Rotate the argument back by angle.
        const double rx = c * dx + s * dy;
        const double ry = -s * dx + c * dy;
        return std::exp(-(rx * rx + ry * ry) / (2 * sigma * sigma));
    };
    const double va = c * a - s * b;
    const double vb = s * a + c * b;
    return VectorField(std::vector<SpectralField>{
        SpectralField::from_function(grid, [&](const Point& x) { return va * profile(x); }),
        SpectralField::from_function(grid, [&](const Point& x) { return vb * profile(x); })});
}

}  // namespace

TEST_CASE("wedge: rotation in 2d, cross product in 3d, determinant identity") {
    const auto w2 = wedge(std::vector<Vec>{{1.0, 0.0, 0.0}}, 2);
    CHECK(w2[0] == 0.0);
    CHECK(w2[1] == 1.0);
    const auto w3 = wedge(std::vector<Vec>{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}}, 3);
    CHECK(w3[0] == 0.0);
    CHECK(w3[1] == 0.0);
    CHECK(w3[2] == 1.0);

    std::mt19937_64 rng(11);
    std::normal_distribution<double> normal;
    for (int t = 0; t < 100; ++t) {
        const Vec x{normal(rng), normal(rng), 0.0};
        const Vec y{normal(rng), normal(rng), 0.0};
        const auto w = wedge(std::vector<Vec>{x}, 2);
        CHECK(std::abs(w[0] * y[0] + w[1] * y[1] - (x[0] * y[1] - x[1] * y[0])) <= 1e-14);
        CHECK(std::hypot(w[0], w[1]) == doctest::Approx(std::hypot(x[0], x[1])).epsilon(1e-14));
        const auto ws = wedge(std::vector<Vec>{{2.5 * x[0] - y[0], 2.5 * x[1] - y[1], 0.0}}, 2);
        const auto wy = wedge(std::vector<Vec>{y}, 2);
        CHECK(std::abs(ws[0] - (2.5 * w[0] - wy[0])) <= 1e-14);
        CHECK(std::abs(ws[1] - (2.5 * w[1] - wy[1])) <= 1e-14);
    }
    const TorusGrid g1(1, 16);
    CHECK_THROWS_AS(wedge(std::vector<Vec>{}, 1), std::invalid_argument);
    const TorusGrid g3(3, 8);
    const VectorField e1(std::vector<SpectralField>{SpectralField::constant(g3, 1.0), SpectralField::constant(g3, 0.0),
                                                    SpectralField::constant(g3, 0.0)});
    const VectorFieldFamily fam3({e1, e1}, 4.0);
    CHECK_THROWS_AS(wedge(fam3, {0, 0}, 0), std::invalid_argument);
}

TEST_CASE("nondegeneracy: unit field, sup rescue, scaling, enlargement, brute force") {
    const TorusGrid grid(2, 32);
    const VectorFieldFamily unit({constant_field(grid, 1.0, 0.0)}, 4.0);
    CHECK(nondegeneracy(unit) == doctest::Approx(1.0).epsilon(1e-14));

    // X_1 vanishes at the origin grid point; X_2 is a unit field there.
    VectorField vanishing = VectorField(std::vector<SpectralField>{
        SpectralField::from_function(grid, [](const Point& x) { return std::sin(0.5 * x[0]) + 0.0 * x[1]; }),
        SpectralField::constant(grid, 0.0)});
    const VectorFieldFamily lone({vanishing}, 4.0);
    CHECK(nondegeneracy(lone) <= 1e-14);
    const auto rescued = lone.with_field(constant_field(grid, 0.0, 1.0));
    CHECK(nondegeneracy(rescued) == doctest::Approx(1.0).epsilon(1e-14));

    std::mt19937_64 rng(3);
    const VectorFieldFamily random({cns::test::random_vector_field(grid, rng, 3)}, 4.0);
    for (double alpha : {0.5, 2.0, 7.0}) {
        CHECK(nondegeneracy(random.scaled(alpha)) == doctest::Approx(alpha * nondegeneracy(random)).epsilon(1e-13));
    }
    const auto larger = random.with_field(cns::test::random_vector_field(grid, rng, 3));
    CHECK(nondegeneracy(larger) >= nondegeneracy(random));

    // Exhaustive evaluation of min_x max(|X_1|, |X_2|) for the patch family.
    const TorusGrid g64(2, 64);
    const Point c{kTwoPi / 2, kTwoPi / 2, 0.0};
    const auto fam = patch_family(g64, c, 0.25 * kTwoPi, 4.0);
    double brute = 1e300;
    for (std::size_t k = 0; k < g64.size(); ++k) {
        double best = 0.0;
        for (int l = 0; l < 2; ++l) best = std::max(best, std::hypot(fam[l][0].physical()[k], fam[l][1].physical()[k]));
        brute = std::min(brute, best);
    }
    CHECK(nondegeneracy(fam) == doctest::Approx(brute).epsilon(1e-14));
    CHECK(nondegeneracy(fam) > 0.3);
}

TEST_CASE("patch family: tangent field is divergence free and tangent to circles") {
    const TorusGrid grid(2, 64);
    const double L = grid.length();
    const Point c{L / 2, L / 2, 0.0};
    const double radius = 0.25 * L;
    const auto fam = patch_family(grid, c, radius, 4.0);
    CHECK(max_abs(divergence(fam[0])) <= 1e-2 * sup_norm(fam[0]));
    double radial = 0.0;
    double x2_band = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const auto x = grid.coordinates(k);
        const double dx = x[0] - c[0], dy = x[1] - c[1];
        radial = std::max(radial, std::abs(fam[0][0].physical()[k] * dx + fam[0][1].physical()[k] * dy));
        if (std::abs(std::hypot(dx, dy) - radius) <= 0.25 * radius) {
            x2_band = std::max(x2_band, std::abs(fam[1][0].physical()[k]));
        }
    }
    CHECK(radial <= 1e-13);
    CHECK(x2_band == 0.0);
    CHECK_THROWS_AS(patch_family(grid, c, 0.3 * L, 4.0), std::invalid_argument);
}

TEST_CASE("directional_div: constants, smooth identity, width sweep") {
    const TorusGrid grid(2, 64);
    std::mt19937_64 rng(5);
    const VectorField y = cns::test::random_vector_field(grid, rng, 4);
    CHECK(max_abs(directional_div(SpectralField::constant(grid, 2.5), y)) <= 1e-12);

    const SpectralField f = cns::test::random_smooth_field(grid, rng, 5);
    const VectorField gf = gradient(f);
    const SpectralField expected = pointwise_product(y[0], gf[0]) + pointwise_product(y[1], gf[1]);
    CHECK(max_abs_diff(directional_div(f, y), expected) <= 1e-10);

    // Tangent derivative of a disc stays bounded; the normal one grows like width^{-1 + 1/p}.
    const double p = 4.0;
    const TorusGrid g(2, 256);
    const Point c{kTwoPi / 2, kTwoPi / 2, 0.0};
    const double radius = 0.25 * kTwoPi;
    const auto fam = patch_family(g, c, radius, p);
    const VectorField normal(std::vector<SpectralField>{
        SpectralField::from_function(g, [&](const Point& x) { return (x[0] - c[0]) / radius; }),
        SpectralField::from_function(g, [&](const Point& x) { return (x[1] - c[1]) / radius; })});
    std::vector<double> tangent, across;
    for (double w : {8.0, 4.0, 2.0}) {
        const SpectralField disc = cns::state::mollified_disc(g, c, radius, w * g.dx());
        tangent.push_back(lp_norm(directional_div(disc, fam[0]), p));
        const VectorField gd = gradient(disc);
        across.push_back(lp_norm(pointwise_product(normal[0], gd[0]) + pointwise_product(normal[1], gd[1]), p));
    }
    const double expected_growth = std::pow(2.0, 1.0 - 1.0 / p);
    for (std::size_t i = 1; i < across.size(); ++i) {
        CHECK(across[i] / across[i - 1] == doctest::Approx(expected_growth).epsilon(0.1));
        CHECK(tangent[i] <= 0.05 * across[i]);
    }
}

TEST_CASE("striated_norm: zero, constant field, recomposition, degeneracy, resolution") {
    const TorusGrid grid(2, 32);
    const VectorFieldFamily fam({constant_field(grid, 1.0, 0.0), constant_field(grid, 0.0, 1.0)}, 4.0);
    const auto zero = striated_norm(SpectralField::constant(grid, 0.0), fam);
    CHECK(zero.norm == 0.0);
    const auto one = striated_norm(SpectralField::constant(grid, 1.0), fam);
    CHECK(one.norm == doctest::Approx(fam.linf_p_norm() / nondegeneracy(fam)).epsilon(1e-12));
    CHECK(one.norm == doctest::Approx(1.0).epsilon(1e-12));

    std::mt19937_64 rng(8);
    const auto f = cns::test::random_smooth_field(grid, rng, 4);
    const VectorFieldFamily rf({cns::test::random_vector_field(grid, rng, 3), constant_field(grid, 1.0, 0.0)}, 4.0);
    const auto rep = striated_norm(f, rf);
    CHECK(std::abs(rep.norm - rep.recompose()) <= 1e-12 * rep.norm);
    CHECK_THROWS_AS(striated_norm(f, rf.scaled(0.0)), std::domain_error);

    std::vector<double> norms;
    for (int n : {64, 128}) {
        const TorusGrid g(2, n);
        const Point c{kTwoPi / 2, kTwoPi / 2, 0.0};
        const auto pf = patch_family(g, c, 0.25 * kTwoPi, 4.0);
        const SpectralField disc = cns::state::mollified_disc(g, c, 0.25 * kTwoPi, 2.0 * g.dx());
        norms.push_back(striated_norm(disc, pf).norm);
    }
    CHECK(norms[1] == doctest::Approx(norms[0]).epsilon(0.1));
}

TEST_CASE("transport_family: zero and constant velocity, CFL") {
    const TorusGrid grid(2, 64);
    const auto fam = VectorFieldFamily({bump_field(grid, 0.5, 1.0, 0.5)}, 4.0);
    const VectorField zero = constant_field(grid, 0.0, 0.0);
    const auto same = transport_family(fam, zero, 0.1);
    CHECK(max_abs_diff(same[0], fam[0]) <= 1e-14);

    const double cx = 0.7, cy = -0.4, dt = 0.05;
    auto moved = fam;
    for (int k = 0; k < 10; ++k) moved = transport_family(moved, constant_field(grid, cx, cy), dt);
    const double t = 10 * dt;
    const double h = 0.5 * grid.length();
    const SpectralField exact0 = SpectralField::from_function(grid, [&](const Point& x) {
        const double dx = periodic(x[0] - cx * t - h, grid.length());
        const double dy = periodic(x[1] - cy * t - h, grid.length());
        return std::exp(-(dx * dx + dy * dy) / (2 * 0.25));
    });
    CHECK(max_abs_diff(moved[0][0], exact0) <= 1e-5);
    CHECK(max_abs_diff(moved[0][1], 0.5 * exact0) <= 1e-5);
    CHECK(max_abs_diff(moved.gradient(0)(0, 0), partial_derivative(moved[0][0], 0)) <= 1e-12);

    CHECK_THROWS_AS(transport_family(fam, constant_field(grid, 10.0, 0.0), 0.05), TransportCflError);
}

TEST_CASE("transport_family: rigid rotation converges at second order") {
    const TorusGrid grid(2, 128);
    const double L = grid.length();
    const double omega = 1.0, horizon = 0.5;
    const VectorField u = cns::state::rotation_velocity(grid, omega, 0.25 * L, 0.5 * L);
    const double sigma = 0.35;
    const auto fam = VectorFieldFamily({bump_field(grid, sigma, 1.0, 0.0)}, 4.0);
    const VectorField exact = bump_field(grid, sigma, 1.0, 0.0, omega * horizon);
    std::vector<VectorField> finals;
    for (int steps : {25, 50, 100}) {
        auto x = fam;
        for (int k = 0; k < steps; ++k) x = transport_family(x, u, horizon / steps);
        finals.push_back(x[0]);
    }
    // Differences between successive refinements cancel the spatial error floor.
    const double coarse = max_abs_diff(finals[0], finals[1]);
    const double fine = max_abs_diff(finals[1], finals[2]);
    const double error = max_abs_diff(finals[2], exact);
    MESSAGE("rotation refinement differences " << coarse << " " << fine << ", error " << error);
    CHECK(coarse / fine >= 3.5);
    CHECK(error <= 1e-4);
}

TEST_CASE("transport consistency: div(rho X) is conserved along the flow") {
    // rho solves d_t rho + div(rho u) = 0 (RK4, small steps); X is transported;
    // D = div(rho X) must satisfy d_t D + div(D u) = 0.
    const TorusGrid grid(2, 64);
    std::mt19937_64 rng(21);
    const VectorField u = cns::test::random_vector_field(grid, rng, 2, 0.3);
    const SpectralField rho0 = SpectralField::constant(grid, 1.0) + cns::test::random_smooth_field(grid, rng, 3, 0.05);
    const auto fam0 = VectorFieldFamily({cns::test::random_vector_field(grid, rng, 2)}, 4.0);
    auto continuity = [&](const SpectralField& r) {
        VectorField flux(grid);
        for (int a = 0; a < 2; ++a) flux[a] = pointwise_product(r, u[a]);
        return -1.0 * divergence(flux);
    };
    auto rk4 = [&](SpectralField r, double dt, int steps) {
        for (int k = 0; k < steps; ++k) {
            const auto k1 = continuity(r);
            const auto k2 = continuity(r + (0.5 * dt) * k1);
            const auto k3 = continuity(r + (0.5 * dt) * k2);
            const auto k4 = continuity(r + dt * k3);
            r = r + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        return r;
    };
    auto div_rho_x = [&](const SpectralField& r, const VectorField& x) {
        VectorField rx(grid);
        for (int a = 0; a < 2; ++a) rx[a] = pointwise_product(r, x[a]);
        return divergence(rx);
    };
    std::vector<double> residuals;
    for (double dt : {0.04, 0.02}) {
        const auto fam1 = transport_family(fam0, u, dt);
        const auto fam2 = transport_family(fam1, u, dt);
        const SpectralField r1 = rk4(rho0, dt / 8, 8);
        const SpectralField r2 = rk4(r1, dt / 8, 8);
        const SpectralField d0 = div_rho_x(rho0, fam0[0]);
        const SpectralField d1 = div_rho_x(r1, fam1[0]);
        const SpectralField d2 = div_rho_x(r2, fam2[0]);
        VectorField du(grid);
        for (int a = 0; a < 2; ++a) du[a] = pointwise_product(d1, u[a]);
        const SpectralField residual = (1.0 / (2 * dt)) * (d2 - d0) + divergence(du);
        residuals.push_back(max_abs(residual) / max_abs(divergence(du)));
    }
    MESSAGE("consistency residuals " << residuals[0] << " " << residuals[1]);
    CHECK(residuals[0] / residuals[1] >= 3.0);
    CHECK(residuals[1] <= 1e-2);
}

TEST_CASE("transported_bounds_check: zero velocity equality and violations") {
    std::vector<FamilySample> history;
    for (int k = 0; k < 5; ++k) history.push_back({0.1 * k, 0.0, 2.0, 0.5, 3.0});
    const auto ok = transported_bounds_check(history, 2, 4.0);
    CHECK(ok.pass());
    CHECK(ok.rows.size() == 15);
    for (const auto& row : ok.rows) CHECK(row.value == row.bound);
    CHECK(ok.density_constant == doctest::Approx(std::sqrt(2.0) * 0.75));

    history.push_back({0.5, 0.01, 2.2, 0.5, 3.0});
    const auto bad = transported_bounds_check(history, 2, 4.0);
    CHECK(bad.violations == 1);
    CHECK(bad.rows[15].quantity == "sup_X");
    CHECK_FALSE(bad.rows[15].pass);
}

TEST_CASE("stationary estimates: trivial inputs and degeneracy") {
    const TorusGrid grid(2, 64);
    const Point c{kTwoPi / 2, kTwoPi / 2, 0.0};
    const auto fam = patch_family(grid, c, 0.25 * kTwoPi, 4.0);
    const auto z = tang_estimate_check(SpectralField::constant(grid, 0.0), fam, 1.0);
    CHECK(z.lhs == 0.0);
    CHECK(z.rhs == 0.0);
    const auto one = tang_estimate_check(SpectralField::constant(grid, 1.0), fam, 1.0);
    CHECK(one.lhs <= 1e-14);
    CHECK(one.rhs > 0.0);
    const auto zd = tang_dx_estimate_check(SpectralField::constant(grid, 0.0), fam, 1.0);
    CHECK(zd.lhs == 0.0);
    CHECK(zd.rhs == 0.0);
    const auto od = tang_dx_estimate_check(SpectralField::constant(grid, 1.0), fam, 1.0);
    CHECK(od.lhs <= 1e-13);
    CHECK(od.rhs > 0.0);
    CHECK_THROWS_AS(tang_estimate_check(SpectralField::constant(grid, 1.0), fam.scaled(0.0), 1.0), std::domain_error);
    CHECK_THROWS_AS(tang_dx_estimate_check(SpectralField::constant(grid, 1.0), fam.scaled(0.0), 1.0),
                    std::domain_error);
    CHECK_THROWS_AS(tang_estimate_check(SpectralField::constant(grid, 1.0), fam, 0.0), std::invalid_argument);
}

TEST_CASE("stationary estimates: disc sweep ratios are uniform, checkerboard lhs grows") {
    const auto cells = disc_sweep({64, 128}, {8, 4, 2, 1}, kTwoPi, 0.25, 1.0, 4.0);
    REQUIRE(cells.size() == 8);
    double lo = 1e300, hi = 0.0, lo_dx = 1e300, hi_dx = 0.0;
    for (const auto& cell : cells) {
        lo = std::min(lo, cell.tang.ratio());
        hi = std::max(hi, cell.tang.ratio());
        lo_dx = std::min(lo_dx, cell.tang_dx.ratio());
        hi_dx = std::max(hi_dx, cell.tang_dx.ratio());
    }
    CHECK(hi / lo <= 1.5);
    CHECK(hi_dx / lo_dx <= 4.0);
    const TorusGrid g64(2, 64), g128(2, 128);
    const auto f64 = patch_family(g64, {kTwoPi / 2, kTwoPi / 2, 0.0}, 0.25 * kTwoPi, 4.0);
    const auto f128 = patch_family(g128, {kTwoPi / 2, kTwoPi / 2, 0.0}, 0.25 * kTwoPi, 4.0);
    const double cb64 = tang_estimate_check(checkerboard(g64, 32), f64, 1.0).lhs;
    const double cb128 = tang_estimate_check(checkerboard(g128, 32), f128, 1.0).lhs;
    CHECK(cb128 / cb64 >= 1.5);
}

TEST_CASE("gradient_u_assembly: zero density, eigenmode, agreement with grad of u") {
    const TorusGrid grid(2, 32);
    std::mt19937_64 rng(13);
    const auto law = cns::state::PressureLaw::linear(1.3, 0.05);
    const VectorField w = cns::test::random_vector_field(grid, rng, 3, 0.1);
    const cns::state::LameParameters lame(0.5, 0.5);
    const cns::state::FluidState flat(0.0, SpectralField::constant(grid, 0.0), w, lame);
    const auto g0 = gradient_u_assembly(flat, law);
    const TensorField gw = gradient(w);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) CHECK(max_abs_diff(g0.grad_u(i, j), gw(i, j)) <= 1e-14);
    }

    const double amp = 0.02;
    const int m0 = 2, m1 = 1;
    const SpectralField rho = SpectralField::from_function(
        grid, [&](const Point& x) { return amp * std::cos(m0 * x[0] + m1 * x[1]); });
    const VectorField zero(grid);
    const cns::state::FluidState st(0.0, rho, zero, lame);
    const auto g1 = gradient_u_assembly(st, law);
    const double k2 = m0 * m0 + m1 * m1;
    const int m[2] = {m0, m1};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const double coef = m[i] * m[j] / (1.0 + k2) * law.a() * amp;
            const SpectralField exact = SpectralField::from_function(
                grid, [&](const Point& x) { return coef * std::cos(m0 * x[0] + m1 * x[1]); });
            CHECK(max_abs_diff(g1.grad_u(i, j), exact) <= 1e-13);
        }
    }

    const cns::state::FluidState mixed(0.0, cns::test::random_smooth_field(grid, rng, 3, 0.01), w, lame);
    const auto g2 = gradient_u_assembly(mixed, law);
    const TensorField gu = gradient(cns::state::compose_u(mixed, law));
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) CHECK(max_abs_diff(g2.grad_u(i, j), gu(i, j)) <= 1e-13);
    }
    CHECK(g2.sup == doctest::Approx(sup_norm(gu.frobenius())).epsilon(1e-12));
}

TEST_CASE("patch run: transported bounds hold over the admissible window") {
    cns::solver::RunConfig cfg;
    cfg.n = 64;
    cfg.horizon = 0.2;
    cfg.dt = 0.01;
    cfg.epsilon = 0.01;
    cfg.initial.kind = "patch";
    cfg.initial.w_amplitude = 0.0;
    const auto result = run_with_family(cfg);
    CHECK(result.history.size() == result.trajectory.diagnostics.size());
    CHECK(result.window_end > 0.0);
    const auto report = transported_bounds_check(window(result), 2, cfg.exponents.p);
    CHECK(report.pass());
    CHECK(result.history.back().grad_u_cum <= std::log(2.0));
}
