#include "cns/harmonic/duhamel.hpp"

#include <stdexcept>

#include "cns/spectral/operators.hpp"

namespace cns::harmonic {

namespace {

VectorField apply_order(const SpectralField& g, int order) {
    if (order == 0) return VectorField(std::vector<SpectralField>{g});
    if (order == 1) return spectral::gradient(g);
    const int d = g.grid().dim();
    auto h = spectral::hessian(g);
    std::vector<SpectralField> entries;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) entries.push_back(h(i, j));
    }
    return VectorField(std::move(entries));
}

}  // namespace

std::vector<VectorField> duhamel_operator(const std::vector<SpectralField>& series, double dt, int order,
                                          double viscosity) {
    if (series.empty()) throw std::invalid_argument("duhamel_operator: empty time series");
    if (order < 0 || order > 2) throw std::invalid_argument("duhamel_operator: order must be 0, 1 or 2");
    if (!(dt > 0.0)) throw std::invalid_argument("duhamel_operator: dt must be positive");
    if (!(viscosity > 0.0)) throw std::invalid_argument("duhamel_operator: viscosity must be positive");
    const auto& grid = series.front().grid();
    for (const auto& f : series) {
        if (f.grid() != grid) throw std::invalid_argument("duhamel_operator: series on mixed grids");
    }
    // G_n = exp(viscosity dt Lap) (G_{n-1} + dt f_{n-1}), G_0 = 0.
    std::vector<VectorField> out;
    out.reserve(series.size());
    SpectralField accumulated(grid);
    out.push_back(apply_order(accumulated, order));
    for (std::size_t n = 1; n < series.size(); ++n) {
        accumulated += dt * series[n - 1];
        accumulated = spectral::heat_semigroup(accumulated, dt, viscosity);
        out.push_back(apply_order(accumulated, order));
    }
    return out;
}

}  // namespace cns::harmonic
