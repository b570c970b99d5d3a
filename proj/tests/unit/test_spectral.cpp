#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"

#include "cns/spectral/interpolation.hpp"
#include "cns/spectral/norms.hpp"
#include "cns/spectral/operators.hpp"
#include "cns/spectral/snapshot_io.hpp"
#include "test_support.hpp"

using namespace cns::spectral;
using cns::test::max_abs_diff;

namespace {

SpectralField mode_field(const TorusGrid& g, std::function<double(const Point&)> f) {
    return SpectralField::from_function(g, f);
}

}  // namespace

TEST_CASE("grid validation") {
    CHECK_THROWS_AS(TorusGrid(2, 12), std::invalid_argument);
    CHECK_THROWS_AS(TorusGrid(2, 4), std::invalid_argument);
    CHECK_THROWS_AS(TorusGrid(4, 16), std::invalid_argument);
    CHECK_THROWS_AS(TorusGrid(2, 16, 0.0), std::invalid_argument);
    TorusGrid g(2, 16, 4.0);
    CHECK(g.size() == 256);
    CHECK(g.dx() == doctest::Approx(0.25));
    CHECK(g.mode(8) == -8);
    CHECK(g.mode(7) == 7);
    CHECK(g.is_nyquist(8));
}

TEST_CASE("physical-spectral round trip") {
    std::mt19937_64 rng(1);
    for (int d = 1; d <= 3; ++d) {
        TorusGrid g(d, 16);
        for (int trial = 0; trial < 20; ++trial) {
            auto f = cns::test::random_rough_field(g, rng);
            auto back = SpectralField::from_spectral(g, f.spectral());
            CHECK(max_abs_diff(back, f) < 1e-12);
        }
    }
}

TEST_CASE("single mode coefficients match the analytic expansion") {
    TorusGrid g(2, 16);
    auto f = mode_field(g, [](const Point& x) { return std::cos(3 * x[0]) + 2 * std::sin(x[1]); });
    const auto& c = f.spectral();
    CHECK(std::abs(c[g.flatten({3, 0, 0})] - Complex(0.5, 0.0)) < 1e-14);
    CHECK(std::abs(c[g.flatten({-3, 0, 0})] - Complex(0.5, 0.0)) < 1e-14);
    CHECK(std::abs(c[g.flatten({0, 1, 0})] - Complex(0.0, -1.0)) < 1e-14);
    CHECK(std::abs(f.mean()) < 1e-15);
}

TEST_CASE("wavenumbers scale with the box length") {
    const double L = 3.0;
    TorusGrid g(1, 32, L);
    const double k = kTwoPi / L * 2;
    auto f = mode_field(g, [&](const Point& x) { return std::sin(k * x[0]); });
    auto df = partial_derivative(f, 0);
    auto exact = mode_field(g, [&](const Point& x) { return k * std::cos(k * x[0]); });
    CHECK(max_abs_diff(df, exact) < 1e-12);
}

TEST_CASE("gradient agrees with sixth-order finite differences on smooth data") {
    TorusGrid g(2, 128);
    auto f = mode_field(g, [](const Point& x) { return std::exp(std::sin(x[0]) * std::cos(2 * x[1])); });
    auto grad = gradient(f);
    const auto& v = f.physical();
    const double h = g.dx();
    double err = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        auto idx = g.unflatten(i);
        for (int a = 0; a < 2; ++a) {
            auto at = [&](int s) {
                auto j = idx;
                j[a] += s;
                return v[g.flatten(j)];
            };
            const double fd =
                (45.0 * (at(1) - at(-1)) - 9.0 * (at(2) - at(-2)) + (at(3) - at(-3))) / (60.0 * h);
            err = std::max(err, std::abs(fd - grad[a].physical()[i]));
        }
    }
    CHECK(err < 1e-5);
}

TEST_CASE("odd derivatives drop the Nyquist mode") {
    TorusGrid g(1, 16);
    std::vector<double> alt(16);
    for (int i = 0; i < 16; ++i) alt[i] = (i % 2 == 0) ? 1.0 : -1.0;
    auto f = SpectralField::from_physical(g, alt);
    CHECK(cns::test::max_abs(partial_derivative(f, 0)) < 1e-14);
    // Second derivative via the Laplacian keeps it.
    auto lap = laplacian(f);
    CHECK(std::abs(lap.physical()[0] + 64.0) < 1e-10);
}

TEST_CASE("divergence rejects mixed grids") {
    TorusGrid a(2, 16), b(2, 32);
    std::vector<SpectralField> comps{SpectralField(a), SpectralField(b)};
    CHECK_THROWS_AS(VectorField(std::move(comps)), std::invalid_argument);
    CHECK_THROWS_AS(SpectralField(a) + SpectralField(b), std::invalid_argument);
}

TEST_CASE("gradient and divergence are adjoint") {
    std::mt19937_64 rng(2);
    for (int d = 1; d <= 3; ++d) {
        TorusGrid g(d, 16);
        for (int trial = 0; trial < 10; ++trial) {
            auto f = cns::test::random_rough_field(g, rng);
            auto v = cns::test::random_rough_vector(g, rng);
            const double lhs = inner_product(gradient(f), v);
            const double rhs = -inner_product(f, divergence(v));
            CHECK(std::abs(lhs - rhs) < 1e-10 * (1.0 + std::abs(lhs)));
        }
    }
}

TEST_CASE("helmholtz inverse on a single mode and as an inverse") {
    TorusGrid g(2, 32);
    auto f = mode_field(g, [](const Point& x) { return std::cos(2 * x[0] + 3 * x[1]); });
    auto h = helmholtz_inverse(f, 2.0, 0.5);
    auto expected = (1.0 / (2.0 + 0.5 * 13.0)) * f;
    CHECK(max_abs_diff(h, expected) < 1e-14);
    CHECK_THROWS_AS(helmholtz_inverse(f, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(helmholtz_inverse(f, -1.0), std::invalid_argument);

    std::mt19937_64 rng(3);
    auto r = cns::test::random_rough_field(g, rng);
    auto u = helmholtz_inverse(r, 1.5, 2.0);
    auto back = 1.5 * u - 2.0 * laplacian(u);
    CHECK(max_abs_diff(back, r) < 1e-11);
}

TEST_CASE("bounded composite equals Laplacian of the resolvent") {
    std::mt19937_64 rng(4);
    TorusGrid g(2, 32);
    auto f = cns::test::random_rough_field(g, rng);
    auto lhs = bounded_composite(f);
    auto rhs = laplacian(helmholtz_inverse(f, 1.0));
    CHECK(max_abs_diff(lhs, rhs) < 1e-12);
}

TEST_CASE("leray split") {
    std::mt19937_64 rng(5);
    TorusGrid g(2, 32);
    auto v = cns::test::random_rough_vector(g, rng);
    auto split = leray_split(v);

    SUBCASE("parts sum to the input") { CHECK(max_abs_diff(split.solenoidal + split.gradient, v) < 1e-12); }
    SUBCASE("solenoidal part is divergence free") {
        CHECK(cns::test::max_abs(divergence(split.solenoidal)) < 1e-10);
    }
    SUBCASE("gradient part is curl free") {
        auto curl = partial_derivative(split.gradient[1], 0) - partial_derivative(split.gradient[0], 1);
        CHECK(cns::test::max_abs(curl) < 1e-10);
    }
    SUBCASE("zero mode stays in the solenoidal part") {
        for (int a = 0; a < 2; ++a) {
            CHECK(std::abs(split.gradient[a].spectral()[0]) < 1e-16);
            CHECK(std::abs(split.solenoidal[a].spectral()[0] - v[a].spectral()[0]) < 1e-16);
        }
    }
    SUBCASE("projections are idempotent") {
        auto again = leray_split(split.solenoidal);
        CHECK(max_abs_diff(again.solenoidal, split.solenoidal) < 1e-12);
        CHECK(cns::test::max_abs(again.gradient.magnitude()) < 1e-12);
        auto again_g = leray_split(split.gradient);
        CHECK(max_abs_diff(again_g.gradient, split.gradient) < 1e-12);
    }
    SUBCASE("gradients are pure gradient part") {
        auto f = cns::test::random_rough_field(g, rng);
        auto s = leray_split(gradient(f));
        CHECK(cns::test::max_abs(s.solenoidal.magnitude()) < 1e-11);
    }
}

TEST_CASE("lame semigroup") {
    TorusGrid g(2, 32);
    LameParameters lame(0.7, 0.5);
    CHECK_THROWS_AS(LameParameters(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(LameParameters(1.0, -1.0), std::invalid_argument);

    SUBCASE("single modes decay at the shear and bulk rates") {
        // Divergence-free: (sin(2y), 0); gradient: grad cos(x + y).
        VectorField sol(g);
        sol[0] = mode_field(g, [](const Point& x) { return std::sin(2 * x[1]); });
        VectorField grad = gradient(mode_field(g, [](const Point& x) { return std::cos(x[0] + x[1]); }));
        const double t = 0.3;
        auto s = lame_semigroup(sol, t, lame);
        auto q = lame_semigroup(grad, t, lame);
        CHECK(max_abs_diff(s, std::exp(-0.7 * 4 * t) * sol) < 1e-14);
        CHECK(max_abs_diff(q, std::exp(-1.2 * 2 * t) * grad) < 1e-14);
    }
    SUBCASE("semigroup property") {
        std::mt19937_64 rng(6);
        auto v = cns::test::random_rough_vector(g, rng);
        auto a = lame_semigroup(lame_semigroup(v, 0.01, lame), 0.02, lame);
        auto b = lame_semigroup(v, 0.03, lame);
        CHECK(max_abs_diff(a, b) < 1e-12);
        CHECK(max_abs_diff(lame_semigroup(v, 0.0, lame), v) < 1e-12);
    }
    SUBCASE("generator matches -mu Lap - lambda grad div") {
        std::mt19937_64 rng(7);
        auto v = cns::test::random_vector_field(g, rng, 4);
        VectorField direct(g);
        auto gd = gradient(divergence(v));
        for (int a = 0; a < 2; ++a) direct[a] = -0.7 * laplacian(v[a]) - 0.5 * gd[a];
        CHECK(max_abs_diff(lame_apply(v, lame), direct) < 1e-10);
        // One-sided fourth-order difference of t -> S(t) v at t = 0.
        const double h = 1e-3;
        auto s = [&](double t) { return lame_semigroup(v, t, lame); };
        VectorField fd = (-25.0 / 12.0) * v;
        fd += (4.0) * s(h);
        fd -= (3.0) * s(2 * h);
        fd += (4.0 / 3.0) * s(3 * h);
        fd -= (0.25) * s(4 * h);
        fd *= 1.0 / h;
        CHECK(max_abs_diff(fd, -1.0 * direct) < 1e-4 * (1.0 + cns::test::max_abs(direct.magnitude())));
    }
    SUBCASE("negative time is rejected") {
        VectorField v(g);
        CHECK_THROWS_AS(lame_semigroup(v, -1.0, lame), std::invalid_argument);
    }
}

TEST_CASE("two-thirds dealiasing") {
    TorusGrid g(1, 16);
    auto keep = mode_field(g, [](const Point& x) { return std::cos(5 * x[0]); });
    auto drop = mode_field(g, [](const Point& x) { return std::cos(6 * x[0]); });
    CHECK(max_abs_diff(dealias(keep), keep) < 1e-14);
    CHECK(cns::test::max_abs(dealias(drop)) < 1e-14);
}

TEST_CASE("snapshot files round trip bit for bit") {
    std::mt19937_64 rng(8);
    TorusGrid g(2, 16, 3.5);
    auto f = cns::test::random_rough_field(g, rng);
    std::stringstream buf;
    write_field(buf, f);
    const std::string bytes = buf.str();
    CHECK(bytes.size() == 5 + 4 + 4 + 8 + 8 * 256);
    CHECK(bytes.substr(0, 5) == "SFLD1");
    CHECK(static_cast<unsigned char>(bytes[5]) == 2);
    CHECK(static_cast<unsigned char>(bytes[9]) == 16);
    auto back = read_field(buf);
    CHECK(back.grid() == g);
    CHECK(back.physical() == f.physical());

    std::stringstream bad("SFLD2xxxx");
    CHECK_THROWS(read_field(bad));
}

TEST_CASE("fourier interpolation") {
    TorusGrid g(2, 32);
    auto fn = [](const Point& x) { return std::sin(3 * x[0] - x[1]) + 0.5 * std::cos(7 * x[1]); };
    auto f = mode_field(g, fn);
    FourierInterpolator exact(f, FourierInterpolator::Method::Exact);
    FourierInterpolator fast(f, FourierInterpolator::Method::Oversampled);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    double err_exact = 0.0, err_fast = 0.0;
    for (int i = 0; i < 200; ++i) {
        Point p{u(rng), u(rng), 0.0};
        err_exact = std::max(err_exact, std::abs(exact(p) - fn(p)));
        err_fast = std::max(err_fast, std::abs(fast(p) - fn(p)));
    }
    CHECK(err_exact < 1e-12);
    CHECK(err_fast < 1e-6);
    // Grid values are reproduced, including Nyquist content.
    auto r = cns::test::random_rough_field(g, rng);
    FourierInterpolator er(r, FourierInterpolator::Method::Exact);
    FourierInterpolator fr(r, FourierInterpolator::Method::Oversampled);
    double grid_err = 0.0, grid_err_fast = 0.0;
    for (std::size_t i = 0; i < g.size(); i += 37) {
        grid_err = std::max(grid_err, std::abs(er(g.coordinates(i)) - r.physical()[i]));
        grid_err_fast = std::max(grid_err_fast, std::abs(fr(g.coordinates(i)) - r.physical()[i]));
    }
    CHECK(grid_err < 1e-11);
    CHECK(grid_err_fast < 1e-11);
}
