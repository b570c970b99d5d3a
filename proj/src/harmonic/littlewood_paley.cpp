#include "cns/harmonic/littlewood_paley.hpp"

#include <cmath>

#include "cns/spectral/operators.hpp"

namespace cns::harmonic {

using spectral::Complex;

double smooth_step(double s) {
    if (s <= 0.0) return 1.0;
    if (s >= 1.0) return 0.0;
    const double a = std::exp(-1.0 / (1.0 - s));
    const double b = std::exp(-1.0 / s);
    return a / (a + b);
}

double low_pass_profile(double radius) { return smooth_step(radius - 1.0); }

double annulus_profile(double radius) { return low_pass_profile(radius) - low_pass_profile(2.0 * radius); }

BlockRange block_range(const TorusGrid& grid, bool homogeneous) {
    const double kmax = grid.wavenumber_unit() * std::sqrt(static_cast<double>(grid.dim())) * grid.n() / 2.0;
    const int last = static_cast<int>(std::ceil(std::log2(kmax)));
    if (!homogeneous) return BlockRange{-1, last};
    const int first = static_cast<int>(std::floor(std::log2(grid.wavenumber_unit()))) - 1;
    return BlockRange{first, last};
}

namespace {

double symbol_at_radius(int j, bool homogeneous, double r) {
    if (!homogeneous) {
        if (j <= -2) return 0.0;
        if (j == -1) return low_pass_profile(2.0 * r);
    }
    return annulus_profile(std::ldexp(r, -j));
}

}  // namespace

double block_symbol(const TorusGrid& grid, int j, bool homogeneous, std::size_t flat) {
    auto tables = spectral::spectral_tables(grid);
    return symbol_at_radius(j, homogeneous, std::sqrt(tables->k2[flat]));
}

SpectralField dyadic_block(const SpectralField& f, int j, bool homogeneous) {
    if (!homogeneous && j <= -2) return SpectralField(f.grid());
    auto tables = spectral::spectral_tables(f.grid());
    return spectral::apply_multiplier(f, [&](std::size_t i) {
        return Complex(symbol_at_radius(j, homogeneous, std::sqrt(tables->k2[i])), 0.0);
    });
}

VectorField dyadic_block(const VectorField& v, int j, bool homogeneous) {
    std::vector<SpectralField> comps;
    for (int a = 0; a < v.size(); ++a) comps.push_back(dyadic_block(v[a], j, homogeneous));
    return VectorField(std::move(comps));
}

SpectralField low_frequency_cutoff(const SpectralField& f, int j) {
    if (j < 0) return SpectralField(f.grid());
    auto tables = spectral::spectral_tables(f.grid());
    return spectral::apply_multiplier(f, [&](std::size_t i) {
        return Complex(low_pass_profile(std::ldexp(std::sqrt(tables->k2[i]), 1 - j)), 0.0);
    });
}

}  // namespace cns::harmonic
