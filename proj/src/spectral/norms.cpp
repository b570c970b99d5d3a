#include "cns/spectral/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cns::spectral {

double lp_norm_values(const std::vector<double>& values, double cell_volume, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be at least 1");
    if (std::isinf(p)) {
        double m = 0.0;
        for (double x : values) m = std::max(m, std::abs(x));
        return m;
    }
    double sum = 0.0;
    if (p == 2.0) {
        for (double x : values) sum += x * x;
        return std::sqrt(sum * cell_volume);
    }
    if (p == 1.0) {
        for (double x : values) sum += std::abs(x);
        return sum * cell_volume;
    }
    for (double x : values) sum += std::pow(std::abs(x), p);
    return std::pow(sum * cell_volume, 1.0 / p);
}

double lp_norm(const SpectralField& f, double p) {
    return lp_norm_values(f.physical(), f.grid().cell_volume(), p);
}

double lp_norm(const VectorField& v, double p) {
    if (v.size() == 1) return lp_norm(v[0], p);
    return lp_norm(v.magnitude(), p);
}

double lp_norm(const TensorField& t, double p) { return lp_norm(t.frobenius(), p); }

double sup_norm(const SpectralField& f) { return lp_norm(f, kInfinity); }
double sup_norm(const VectorField& v) { return lp_norm(v, kInfinity); }
double sup_norm(const TensorField& t) { return lp_norm(t, kInfinity); }

double inner_product(const SpectralField& f, const SpectralField& g) {
    if (f.grid() != g.grid()) throw std::invalid_argument("inner_product: grids differ");
    const auto& a = f.physical();
    const auto& b = g.physical();
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
    return sum * f.grid().cell_volume();
}

double inner_product(const VectorField& f, const VectorField& g) {
    if (f.size() != g.size()) throw std::invalid_argument("inner_product: component counts differ");
    double sum = 0.0;
    for (int i = 0; i < f.size(); ++i) sum += inner_product(f[i], g[i]);
    return sum;
}

double integral(const SpectralField& f) {
    const auto& a = f.physical();
    double sum = 0.0;
    for (double x : a) sum += x;
    return sum * f.grid().cell_volume();
}

}  // namespace cns::spectral
