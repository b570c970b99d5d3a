#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"

#include "cns/harmonic/besov.hpp"
#include "cns/harmonic/bony.hpp"
#include "cns/harmonic/csv_export.hpp"
#include "cns/harmonic/duhamel.hpp"
#include "cns/harmonic/maximal.hpp"
#include "cns/harmonic/riesz.hpp"
#include "cns/spectral/norms.hpp"
#include "cns/spectral/operators.hpp"
#include "test_support.hpp"

using namespace cns::harmonic;
using cns::spectral::Complex;
using cns::spectral::Point;
using cns::test::max_abs;
using cns::test::max_abs_diff;

TEST_CASE("smooth step and partition of unity") {
    CHECK(smooth_step(-0.5) == 1.0);
    CHECK(smooth_step(1.5) == 0.0);
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> s(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double x = s(rng);
        CHECK(std::abs(smooth_step(x) + smooth_step(1.0 - x) - 1.0) < 1e-14);
        CHECK(smooth_step(x) >= smooth_step(x + 1e-3));
    }
    std::uniform_real_distribution<double> radius(0.0, 1000.0);
    for (int i = 0; i < 500; ++i) {
        const double r = radius(rng);
        double sum = low_pass_profile(2.0 * r);
        for (int j = 0; j <= 12; ++j) sum += annulus_profile(std::ldexp(r, -j));
        CHECK(std::abs(sum - 1.0) < 1e-10);
        const double a = annulus_profile(r / 400.0);
        if (r / 400.0 < 0.5 || r / 400.0 > 2.0) CHECK(a == 0.0);
    }
}

TEST_CASE("dyadic blocks resolve the identity") {
    std::mt19937_64 rng(11);
    cns::spectral::TorusGrid g(2, 64);
    auto f = cns::test::random_rough_field(g, rng);
    auto range = block_range(g, false);
    cns::spectral::SpectralField sum(g);
    for (int j = range.first; j <= range.last; ++j) sum += dyadic_block(f, j, false);
    CHECK(max_abs_diff(sum, f) < 1e-12);

    auto hrange = block_range(g, true);
    cns::spectral::SpectralField hsum(g);
    for (int j = hrange.first; j <= hrange.last; ++j) hsum += dyadic_block(f, j, true);
    auto centered = f - cns::spectral::SpectralField::constant(g, f.mean());
    CHECK(max_abs_diff(hsum, centered) < 1e-12);

    for (int j = -1; j <= 4; ++j) {
        cns::spectral::SpectralField below(g);
        for (int k = -1; k <= j - 1; ++k) below += dyadic_block(f, k, false);
        CHECK(max_abs_diff(low_frequency_cutoff(f, j), below) < 1e-12);
    }

    CHECK(max_abs(dyadic_block(f, -3, false)) == 0.0);
    CHECK(max_abs(dyadic_block(f, range.last + 3, false)) < 1e-15);
    CHECK(max_abs(dyadic_block(f, hrange.first - 3, true)) < 1e-15);
}

TEST_CASE("single mode in the middle of an annulus") {
    cns::spectral::TorusGrid g(2, 64);
    auto f = cns::spectral::SpectralField::from_function(g, [](const Point& x) { return std::cos(8 * x[0]); });
    // Analytic L^2 norm of cos(8x) on [0, 2pi]^2.
    const double l2 = std::sqrt(2.0 * M_PI * M_PI);
    auto blocks = block_norms(f, 2.0, false);
    for (const auto& b : blocks) {
        if (b.j == 3) {
            CHECK(b.lp_norm == doctest::Approx(l2).epsilon(1e-12));
        } else {
            CHECK(b.lp_norm < 1e-12);
        }
    }
    for (double s : {-1.0, 0.5, 2.0}) {
        CHECK(besov_norm(f, BesovSpec{s, 2.0, 2.0, false}) == doctest::Approx(std::pow(8.0, s) * l2).epsilon(1e-12));
        CHECK(besov_norm(f, BesovSpec{s, 2.0, cns::spectral::kInfinity, true}) ==
              doctest::Approx(std::pow(8.0, s) * l2).epsilon(1e-12));
    }
}

TEST_CASE("besov exponents outside [1, inf] are rejected") {
    cns::spectral::TorusGrid g(1, 16);
    cns::spectral::SpectralField f(g);
    CHECK_THROWS_AS(besov_norm(f, BesovSpec{1.0, 0.5, 2.0, false}), std::invalid_argument);
    CHECK_THROWS_AS(besov_norm(f, BesovSpec{1.0, 2.0, 0.0, false}), std::invalid_argument);
    CHECK_THROWS_AS(besov_norm_heat(f, 0.0, 2.0, 2.0), std::invalid_argument);
}

TEST_CASE("nonhomogeneous embedding constant 2^{s2 - s1}") {
    std::mt19937_64 rng(12);
    cns::spectral::TorusGrid g(2, 32);
    for (int trial = 0; trial < 50; ++trial) {
        auto f = cns::test::random_rough_field(g, rng);
        for (double p : {1.0, 2.0, 4.0}) {
            const double low = besov_norm(f, BesovSpec{0.5, p, 2.0, false});
            const double high = besov_norm(f, BesovSpec{1.25, p, 2.0, false});
            CHECK(low <= std::pow(2.0, 0.75) * high * (1 + 1e-12));
        }
    }
}

TEST_CASE("heat characterization of a single mode") {
    cns::spectral::TorusGrid g(2, 64);
    for (int kappa : {1, 2}) {
        auto f = cns::spectral::SpectralField::from_function(
            g, [&](const Point& x) { return std::sin(kappa * x[1]); });
        const double fp = cns::spectral::lp_norm(f, 2.0);
        for (double s : {1.0, 1.5}) {
            const double r = 2.0;
            const double exact = fp * std::pow(std::tgamma(r * s / 2) * std::pow(r * kappa * kappa, -r * s / 2), 1.0 / r);
            CHECK(besov_norm_heat(f, s, 2.0, r) == doctest::Approx(exact).epsilon(0.01));
        }
        // r = infinity: sup_t t^{s/2} exp(-kappa^2 t).
        const double s = 1.0;
        const double sup = std::pow(s / (2.0 * kappa * kappa), s / 2) * std::exp(-s / 2);
        CHECK(besov_norm_heat(f, s, 2.0, cns::spectral::kInfinity) == doctest::Approx(fp * sup).epsilon(0.01));
        // General-p path agrees with the Parseval path.
        CHECK(besov_norm_heat(f, 1.0, 2.0 + 1e-12, 2.0) == doctest::Approx(besov_norm_heat(f, 1.0, 2.0, 2.0)).epsilon(1e-6));
    }
}

TEST_CASE("heat quadrature matches a fine integral over the same window") {
    cns::spectral::TorusGrid g(1, 32);
    const int kappa = 5;
    auto f = cns::spectral::SpectralField::from_function(g, [&](const Point& x) { return std::cos(kappa * x[0]); });
    const double s = 0.5, r = 2.0;
    const double t0 = std::pow(g.dx() / 2, 2), t1 = g.length() * g.length();
    // Midpoint rule in log t with many nodes.
    const int n = 200000;
    double sum = 0.0;
    const double h = (std::log(t1) - std::log(t0)) / n;
    for (int i = 0; i < n; ++i) {
        const double t = std::exp(std::log(t0) + (i + 0.5) * h);
        sum += h * std::pow(std::pow(t, s / 2) * std::exp(-kappa * kappa * t), r);
    }
    const double expected = cns::spectral::lp_norm(f, 2.0) * std::sqrt(sum);
    CHECK(besov_norm_heat(f, s, 2.0, r) == doctest::Approx(expected).epsilon(1e-4));
}

TEST_CASE("bony decomposition") {
    std::mt19937_64 rng(13);
    cns::spectral::TorusGrid g(2, 32);
    for (int trial = 0; trial < 10; ++trial) {
        auto u = cns::test::random_rough_field(g, rng);
        auto v = cns::test::random_rough_field(g, rng);
        auto parts = bony_decompose(u, v);
        auto sum = parts.paraproduct_uv + parts.paraproduct_vu + parts.remainder;
        auto uv = cns::spectral::dealias(pointwise_product(u, v));
        CHECK(max_abs_diff(sum, uv) < 1e-10);
    }
    SUBCASE("paraproduct terms live in the ball of radius 2^{j+2}") {
        cns::spectral::TorusGrid big(2, 128);
        auto u = cns::test::random_smooth_field(big, rng, 12);
        auto v = cns::test::random_smooth_field(big, rng, 12);
        auto tables = cns::spectral::spectral_tables(big);
        for (int j = 0; j <= 4; ++j) {
            auto term = paraproduct_term(u, v, j);
            const auto& c = term.spectral();
            double outside = 0.0;
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (std::sqrt(tables->k2[i]) > std::ldexp(1.0, j + 2)) outside = std::max(outside, std::abs(c[i]));
            }
            CHECK(outside < 1e-13);
        }
    }
}

TEST_CASE("modified riesz transforms") {
    std::mt19937_64 rng(14);
    cns::spectral::TorusGrid g(2, 32);
    auto f = cns::test::random_rough_field(g, rng);
    const double eta = 0.7;
    auto hess = cns::spectral::hessian(cns::spectral::helmholtz_inverse(f, eta));
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            auto rr = modified_riesz(modified_riesz(f, j, eta), i, eta);
            CHECK(max_abs_diff(rr, hess(i, j)) < 1e-12);
        }
        CHECK(cns::spectral::lp_norm(modified_riesz(f, i, eta), 2.0) <= cns::spectral::lp_norm(f, 2.0));
    }
    CHECK_THROWS_AS(modified_riesz(f, 0, 0.0), std::invalid_argument);
}

TEST_CASE("maximal function") {
    cns::spectral::TorusGrid g(2, 32);
    const double c = M_PI, rad = 1.0;
    auto disc = cns::spectral::SpectralField::from_function(g, [&](const Point& x) {
        return std::hypot(x[0] - c, x[1] - c) <= rad ? 1.0 : 0.0;
    });
    auto m = maximal_function(disc);
    // Brute force over every radius and every grid point of the ball.
    const auto radii = maximal_radii(g);
    const auto& vals = disc.physical();
    double err = 0.0;
    for (std::size_t p = 0; p < g.size(); p += 7) {
        auto ip = g.unflatten(p);
        double best = std::abs(vals[p]);
        for (double r : radii) {
            double sum = 0.0;
            int count = 0;
            for (std::size_t q = 0; q < g.size(); ++q) {
                auto iq = g.unflatten(q);
                double d2 = 0.0;
                for (int a = 0; a < 2; ++a) {
                    int dm = ((iq[a] - ip[a]) % 32 + 32) % 32;
                    if (dm > 16) dm -= 32;
                    d2 += std::pow(dm * g.dx(), 2);
                }
                if (d2 <= r * r * (1 + 1e-12)) {
                    sum += std::abs(vals[q]);
                    ++count;
                }
            }
            best = std::max(best, sum / count);
        }
        err = std::max(err, std::abs(best - m.physical()[p]));
    }
    CHECK(err < 1e-12);

    std::mt19937_64 rng(15);
    auto f = cns::test::random_rough_field(g, rng);
    auto h = cns::test::random_rough_field(g, rng);
    auto mf = maximal_function(f), mh = maximal_function(h), mfh = maximal_function(f + h);
    for (std::size_t i = 0; i < g.size(); ++i) {
        CHECK(mf.physical()[i] >= std::abs(f.physical()[i]) - 1e-14);
        CHECK(mfh.physical()[i] <= mf.physical()[i] + mh.physical()[i] + 1e-12);
    }
    auto one = maximal_function(cns::spectral::SpectralField::constant(g, -2.0));
    CHECK(max_abs_diff(one, cns::spectral::SpectralField::constant(g, 2.0)) < 1e-12);
}

TEST_CASE("duhamel operator") {
    cns::spectral::TorusGrid g(2, 32);
    CHECK_THROWS_AS(duhamel_operator({}, 0.1, 0), std::invalid_argument);

    SUBCASE("matches the direct double sum") {
        std::mt19937_64 rng(16);
        std::vector<cns::spectral::SpectralField> series;
        for (int n = 0; n < 6; ++n) series.push_back(cns::test::random_smooth_field(g, rng, 5));
        const double dt = 0.05, visc = 0.8;
        for (int order = 0; order <= 2; ++order) {
            auto fast = duhamel_operator(series, dt, order, visc);
            for (std::size_t n = 0; n < series.size(); ++n) {
                cns::spectral::SpectralField direct(g);
                for (std::size_t k = 0; k < n; ++k) {
                    direct += dt * cns::spectral::heat_semigroup(series[k], (n - k) * dt, visc);
                }
                if (order == 0) CHECK(max_abs_diff(fast[n][0], direct) < 1e-12);
                if (order == 1) CHECK(max_abs_diff(fast[n], cns::spectral::gradient(direct)) < 1e-11);
                if (order == 2) CHECK(max_abs_diff(fast[n][1], cns::spectral::hessian(direct)(0, 1)) < 1e-10);
            }
        }
    }
    SUBCASE("constant single mode converges at first order") {
        const int kappa = 2;
        auto f = cns::spectral::SpectralField::from_function(g, [&](const Point& x) { return std::cos(kappa * x[0]); });
        const double T = 0.5;
        double errs[2];
        for (int level = 0; level < 2; ++level) {
            const int steps = 50 << level;
            std::vector<cns::spectral::SpectralField> series(static_cast<std::size_t>(steps + 1), f);
            auto out = duhamel_operator(series, T / steps, 0);
            const double k2 = kappa * kappa;
            auto exact = ((1.0 - std::exp(-k2 * T)) / k2) * f;
            errs[level] = max_abs_diff(out.back()[0], exact);
        }
        CHECK(errs[0] < 0.05);
        CHECK(errs[0] / errs[1] == doctest::Approx(2.0).epsilon(0.05));
    }
}

TEST_CASE("csv export") {
    std::ostringstream a, b;
    write_block_norms_csv(a, {{-1, 0.5}, {0, 2.0}});
    CHECK(a.str() == "j,block_lp_norm\n-1,0.5\n0,2\n");
    write_named_values_csv(b, {{"C", 1.5}});
    CHECK(b.str() == "name,value\nC,1.5\n");
}
