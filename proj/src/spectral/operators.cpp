#include "cns/spectral/operators.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace cns::spectral {

namespace {

void require_same_grid(const VectorField& v) {
    for (int i = 1; i < v.size(); ++i) {
        if (v[i].grid() != v[0].grid()) throw std::invalid_argument("vector components on mixed grids");
    }
}

void require_dim(const VectorField& v) {
    if (v.size() != v.grid().dim()) {
        throw std::invalid_argument("vector field must have one component per axis");
    }
}

}  // namespace

LameParameters::LameParameters(double mu, double lambda) : mu_(mu), lambda_(lambda) {
    if (!(mu > 0.0)) throw std::invalid_argument("Lame parameters: mu must be positive");
    if (!(mu + lambda > 0.0)) throw std::invalid_argument("Lame parameters: mu + lambda must be positive");
}

SpectralField apply_multiplier(const SpectralField& f, const std::function<Complex(std::size_t)>& symbol) {
    const auto& c = f.spectral();
    std::vector<Complex> out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = symbol(i) * c[i];
    return SpectralField::from_spectral(f.grid(), std::move(out));
}

SpectralField partial_derivative(const SpectralField& f, int axis) {
    if (axis < 0 || axis >= f.grid().dim()) throw std::invalid_argument("partial_derivative: bad axis");
    auto tables = spectral_tables(f.grid());
    const auto& kd = tables->kd[axis];
    const auto& c = f.spectral();
    std::vector<Complex> out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = Complex(-kd[i] * c[i].imag(), kd[i] * c[i].real());
    return SpectralField::from_spectral(f.grid(), std::move(out));
}

VectorField gradient(const SpectralField& f) {
    std::vector<SpectralField> comps;
    for (int a = 0; a < f.grid().dim(); ++a) comps.push_back(partial_derivative(f, a));
    return VectorField(std::move(comps));
}

SpectralField divergence(const VectorField& v) {
    require_same_grid(v);
    require_dim(v);
    auto tables = spectral_tables(v.grid());
    std::vector<Complex> out(v.grid().size(), Complex(0.0, 0.0));
    for (int a = 0; a < v.size(); ++a) {
        const auto& c = v[a].spectral();
        const auto& kd = tables->kd[a];
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += Complex(-kd[i] * c[i].imag(), kd[i] * c[i].real());
    }
    return SpectralField::from_spectral(v.grid(), std::move(out));
}

SpectralField laplacian(const SpectralField& f) {
    auto tables = spectral_tables(f.grid());
    const auto& k2 = tables->k2;
    return apply_multiplier(f, [&](std::size_t i) { return Complex(-k2[i], 0.0); });
}

TensorField hessian(const SpectralField& f) {
    TensorField h(f.grid());
    const int d = f.grid().dim();
    for (int i = 0; i < d; ++i) {
        SpectralField di = partial_derivative(f, i);
        for (int j = i; j < d; ++j) {
            h(i, j) = partial_derivative(di, j);
            if (j != i) h(j, i) = h(i, j);
        }
    }
    return h;
}

TensorField gradient(const VectorField& v) {
    require_same_grid(v);
    require_dim(v);
    TensorField g(v.grid());
    const int d = v.grid().dim();
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) g(i, j) = partial_derivative(v[i], j);
    }
    return g;
}

SpectralField helmholtz_inverse(const SpectralField& f, double eta, double kappa) {
    if (!(eta > 0.0)) throw std::invalid_argument("helmholtz_inverse: eta must be positive");
    if (!(kappa >= 0.0)) throw std::invalid_argument("helmholtz_inverse: kappa must be nonnegative");
    auto tables = spectral_tables(f.grid());
    const auto& k2 = tables->k2;
    return apply_multiplier(f, [&](std::size_t i) { return Complex(1.0 / (eta + kappa * k2[i]), 0.0); });
}

VectorField helmholtz_inverse(const VectorField& v, double eta, double kappa) {
    std::vector<SpectralField> comps;
    for (int a = 0; a < v.size(); ++a) comps.push_back(helmholtz_inverse(v[a], eta, kappa));
    return VectorField(std::move(comps));
}

SpectralField bounded_composite(const SpectralField& f) {
    auto tables = spectral_tables(f.grid());
    const auto& k2 = tables->k2;
    return apply_multiplier(f, [&](std::size_t i) { return Complex(1.0 / (1.0 + k2[i]) - 1.0, 0.0); });
}

LeraySplit leray_split(const VectorField& v) {
    require_same_grid(v);
    require_dim(v);
    const auto& grid = v.grid();
    const int d = grid.dim();
    auto tables = spectral_tables(grid);
    const std::size_t size = grid.size();

    std::vector<const std::vector<Complex>*> in(static_cast<std::size_t>(d));
    for (int a = 0; a < d; ++a) in[static_cast<std::size_t>(a)] = &v[a].spectral();

    std::vector<std::vector<Complex>> sol(static_cast<std::size_t>(d), std::vector<Complex>(size));
    std::vector<std::vector<Complex>> grad(static_cast<std::size_t>(d), std::vector<Complex>(size));
    for (std::size_t i = 0; i < size; ++i) {
        const double kk = tables->kd2[i];
        if (kk == 0.0) {
            for (int a = 0; a < d; ++a) {
                sol[a][i] = (*in[a])[i];
                grad[a][i] = Complex(0.0, 0.0);
            }
            continue;
        }
        Complex kv(0.0, 0.0);
        for (int a = 0; a < d; ++a) kv += tables->kd[a][i] * (*in[a])[i];
        for (int a = 0; a < d; ++a) {
            Complex q = tables->kd[a][i] * kv / kk;
            grad[a][i] = q;
            sol[a][i] = (*in[a])[i] - q;
        }
    }
    std::vector<SpectralField> s, g;
    for (int a = 0; a < d; ++a) {
        s.push_back(SpectralField::from_spectral(grid, std::move(sol[a])));
        g.push_back(SpectralField::from_spectral(grid, std::move(grad[a])));
    }
    return LeraySplit{VectorField(std::move(s)), VectorField(std::move(g))};
}

namespace {

// Applies a(k) on the solenoidal part and b(k) on the gradient part.
VectorField apply_lame_symbol(const VectorField& v, const std::function<double(std::size_t)>& sol_symbol,
                              const std::function<double(std::size_t)>& grad_symbol) {
    LeraySplit split = leray_split(v);
    const int d = v.size();
    std::vector<SpectralField> comps;
    for (int a = 0; a < d; ++a) {
        const auto& s = split.solenoidal[a].spectral();
        const auto& g = split.gradient[a].spectral();
        std::vector<Complex> out(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) out[i] = sol_symbol(i) * s[i] + grad_symbol(i) * g[i];
        comps.push_back(SpectralField::from_spectral(v.grid(), std::move(out)));
    }
    return VectorField(std::move(comps));
}

}  // namespace

VectorField lame_semigroup(const VectorField& v, double t, const LameParameters& lame) {
    if (!(t >= 0.0)) throw std::invalid_argument("lame_semigroup: time must be nonnegative");
    require_dim(v);
    auto tables = spectral_tables(v.grid());
    const auto& k2 = tables->k2;
    const double mu = lame.mu();
    const double nu = lame.nu();
    return apply_lame_symbol(
        v, [&](std::size_t i) { return std::exp(-mu * k2[i] * t); },
        [&](std::size_t i) { return std::exp(-nu * k2[i] * t); });
}

VectorField lame_apply(const VectorField& v, const LameParameters& lame) {
    require_dim(v);
    auto tables = spectral_tables(v.grid());
    const auto& k2 = tables->k2;
    const double mu = lame.mu();
    const double nu = lame.nu();
    return apply_lame_symbol(
        v, [&](std::size_t i) { return mu * k2[i]; }, [&](std::size_t i) { return nu * k2[i]; });
}

int dealias_cutoff(const TorusGrid& grid) { return grid.n() / 3; }

SpectralField dealias(const SpectralField& f) {
    auto tables = spectral_tables(f.grid());
    const int d = f.grid().dim();
    const int cut = dealias_cutoff(f.grid());
    return apply_multiplier(f, [&](std::size_t i) {
        for (int a = 0; a < d; ++a) {
            if (std::abs(tables->modes[a][i]) > cut) return Complex(0.0, 0.0);
        }
        return Complex(1.0, 0.0);
    });
}

VectorField dealias(const VectorField& v) {
    std::vector<SpectralField> comps;
    for (int a = 0; a < v.size(); ++a) comps.push_back(dealias(v[a]));
    return VectorField(std::move(comps));
}

SpectralField heat_semigroup(const SpectralField& f, double t, double kappa) {
    if (!(t >= 0.0)) throw std::invalid_argument("heat_semigroup: time must be nonnegative");
    auto tables = spectral_tables(f.grid());
    const auto& k2 = tables->k2;
    return apply_multiplier(f, [&](std::size_t i) { return Complex(std::exp(-kappa * k2[i] * t), 0.0); });
}

}  // namespace cns::spectral
