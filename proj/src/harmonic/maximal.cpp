#include "cns/harmonic/maximal.hpp"

#include <algorithm>
#include <cmath>

#include "cns/spectral/fft.hpp"

namespace cns::harmonic {

std::vector<double> maximal_radii(const TorusGrid& grid) {
    std::vector<double> radii;
    const int count = grid.n() / 2;
    for (int i = 0; i <= count; ++i) radii.push_back(i * grid.dx());
    return radii;
}

namespace {

// Squared periodic distance from the origin to a grid offset.
double offset_distance2(const TorusGrid& grid, std::size_t flat) {
    auto idx = grid.unflatten(flat);
    double d2 = 0.0;
    for (int a = 0; a < grid.dim(); ++a) {
        int m = idx[a];
        if (m > grid.n() / 2) m -= grid.n();
        const double x = m * grid.dx();
        d2 += x * x;
    }
    return d2;
}

}  // namespace

SpectralField maximal_function(const SpectralField& f) {
    const auto& grid = f.grid();
    const std::size_t size = grid.size();
    const auto& values = f.physical();

    std::vector<spectral::Complex> abs_hat(size);
    for (std::size_t i = 0; i < size; ++i) abs_hat[i] = std::abs(values[i]);
    spectral::fft_inplace(abs_hat, grid.dim(), grid.n(), -1);

    std::vector<double> dist2(size);
    for (std::size_t i = 0; i < size; ++i) dist2[i] = offset_distance2(grid, i);

    std::vector<double> result(size);
    for (std::size_t i = 0; i < size; ++i) result[i] = std::abs(values[i]);

    const auto radii = maximal_radii(grid);
    for (std::size_t r = 1; r < radii.size(); ++r) {
        const double limit = radii[r] * radii[r] * (1.0 + 1e-12);
        std::vector<spectral::Complex> kernel(size, 0.0);
        double count = 0.0;
        for (std::size_t i = 0; i < size; ++i) {
            if (dist2[i] <= limit) {
                kernel[i] = 1.0;
                count += 1.0;
            }
        }
        spectral::fft_inplace(kernel, grid.dim(), grid.n(), -1);
        for (std::size_t i = 0; i < size; ++i) kernel[i] *= abs_hat[i];
        spectral::fft_inplace(kernel, grid.dim(), grid.n(), +1);
        const double scale = 1.0 / (count * static_cast<double>(size));
        for (std::size_t i = 0; i < size; ++i) result[i] = std::max(result[i], kernel[i].real() * scale);
    }
    return SpectralField::from_physical(grid, std::move(result));
}

}  // namespace cns::harmonic
