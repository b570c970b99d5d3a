#include "cns/harmonic/besov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cns/spectral/norms.hpp"
#include "cns/spectral/operators.hpp"

namespace cns::harmonic {

namespace {

void check_exponent(double x, const char* name) {
    if (!(x >= 1.0)) throw std::invalid_argument(std::string("Besov exponent ") + name + " must lie in [1, inf]");
}

double sequence_norm(const std::vector<double>& terms, double r) {
    if (std::isinf(r)) {
        double m = 0.0;
        for (double t : terms) m = std::max(m, t);
        return m;
    }
    double sum = 0.0;
    for (double t : terms) sum += std::pow(t, r);
    return std::pow(sum, 1.0 / r);
}

}  // namespace

std::vector<BlockNorm> block_norms(const SpectralField& f, double p, bool homogeneous) {
    check_exponent(p, "p");
    BlockRange range = block_range(f.grid(), homogeneous);
    std::vector<BlockNorm> out;
    for (int j = range.first; j <= range.last; ++j) {
        out.push_back(BlockNorm{j, spectral::lp_norm(dyadic_block(f, j, homogeneous), p)});
    }
    return out;
}

std::vector<BlockNorm> block_norms(const VectorField& v, double p, bool homogeneous) {
    check_exponent(p, "p");
    BlockRange range = block_range(v.grid(), homogeneous);
    std::vector<BlockNorm> out;
    for (int j = range.first; j <= range.last; ++j) {
        out.push_back(BlockNorm{j, spectral::lp_norm(dyadic_block(v, j, homogeneous), p)});
    }
    return out;
}

double besov_norm_from_blocks(const std::vector<BlockNorm>& blocks, double s, double r) {
    check_exponent(r, "r");
    std::vector<double> terms;
    terms.reserve(blocks.size());
    for (const auto& b : blocks) terms.push_back(std::pow(2.0, b.j * s) * b.lp_norm);
    return sequence_norm(terms, r);
}

double besov_norm(const SpectralField& f, const BesovSpec& spec) {
    check_exponent(spec.r, "r");
    return besov_norm_from_blocks(block_norms(f, spec.p, spec.homogeneous), spec.s, spec.r);
}

double besov_norm(const VectorField& v, const BesovSpec& spec) {
    check_exponent(spec.r, "r");
    return besov_norm_from_blocks(block_norms(v, spec.p, spec.homogeneous), spec.s, spec.r);
}

HeatProfile heat_profile(const SpectralField& f, double p) {
    check_exponent(p, "p");
    const auto& grid = f.grid();
    const double t_min = std::pow(grid.dx() / 2.0, 2);
    const double t_max = grid.length() * grid.length();
    const int nodes = static_cast<int>(std::ceil(64.0 * std::log10(t_max / t_min))) + 1;

    auto tables = spectral::spectral_tables(grid);
    std::vector<spectral::Complex> coeffs = f.spectral();
    coeffs[0] = 0.0;

    HeatProfile profile;
    profile.times.resize(static_cast<std::size_t>(nodes));
    profile.norms.resize(static_cast<std::size_t>(nodes));
    const double log_min = std::log(t_min);
    const double step = (std::log(t_max) - log_min) / (nodes - 1);
    for (int n = 0; n < nodes; ++n) {
        const double t = std::exp(log_min + step * n);
        profile.times[static_cast<std::size_t>(n)] = t;
        double norm = 0.0;
        if (p == 2.0) {
            // Parseval: dx^d sum |f|^2 = L^d sum |c_k|^2.
            double sum = 0.0;
            for (std::size_t i = 0; i < coeffs.size(); ++i) sum += std::norm(coeffs[i]) * std::exp(-2.0 * tables->k2[i] * t);
            norm = std::sqrt(sum * std::pow(grid.length(), grid.dim()));
        } else {
            std::vector<spectral::Complex> damped(coeffs.size());
            for (std::size_t i = 0; i < coeffs.size(); ++i) damped[i] = coeffs[i] * std::exp(-tables->k2[i] * t);
            norm = spectral::lp_norm(SpectralField::from_spectral(grid, std::move(damped)), p);
        }
        profile.norms[static_cast<std::size_t>(n)] = norm;
    }
    return profile;
}

double heat_norm_from_profile(const HeatProfile& profile, double s, double r) {
    check_exponent(r, "r");
    if (!(s > 0.0)) throw std::invalid_argument("besov_norm_heat: s must be positive");
    const std::size_t n = profile.times.size();
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = std::pow(profile.times[i], s / 2.0) * profile.norms[i];
    if (std::isinf(r)) return *std::max_element(values.begin(), values.end());
    // Trapezoid rule in log t.
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double h = std::log(profile.times[i + 1]) - std::log(profile.times[i]);
        sum += 0.5 * h * (std::pow(values[i], r) + std::pow(values[i + 1], r));
    }
    return std::pow(sum, 1.0 / r);
}

double besov_norm_heat(const SpectralField& f, double s, double p, double r) {
    if (!(s > 0.0)) throw std::invalid_argument("besov_norm_heat: s must be positive");
    check_exponent(r, "r");
    return heat_norm_from_profile(heat_profile(f, p), s, r);
}

}  // namespace cns::harmonic
