#include "cns/striated/family.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "cns/spectral/norms.hpp"
#include "cns/spectral/operators.hpp"

namespace cns::striated {

VectorFieldFamily::VectorFieldFamily(std::vector<VectorField> fields, double p) : fields_(std::move(fields)), p_(p) {
    if (fields_.empty()) throw std::invalid_argument("VectorFieldFamily: empty family");
    const auto& g = fields_.front().grid();
    for (const auto& f : fields_) {
        if (f.grid() != g) throw std::invalid_argument("VectorFieldFamily: fields on different grids");
        if (f.size() != g.dim()) throw std::invalid_argument("VectorFieldFamily: fields need d components");
    }
    if (size() < g.dim() - 1) throw std::invalid_argument("VectorFieldFamily: need at least d - 1 fields");
    if (!(p > g.dim())) throw std::invalid_argument("VectorFieldFamily: need p > d");
    for (const auto& f : fields_) gradients_.push_back(spectral::gradient(f));
}

double VectorFieldFamily::sup_norm() const {
    double m = 0.0;
    for (const auto& f : fields_) m = std::max(m, spectral::sup_norm(f));
    return m;
}

double VectorFieldFamily::gradient_norm() const {
    double m = 0.0;
    for (const auto& g : gradients_) m = std::max(m, spectral::lp_norm(g, p_));
    return m;
}

double VectorFieldFamily::linf_p_norm(int i) const {
    return spectral::sup_norm((*this)[i]) + spectral::lp_norm(gradient(i), p_);
}

double VectorFieldFamily::linf_p_norm() const {
    double m = 0.0;
    for (int i = 0; i < size(); ++i) m = std::max(m, linf_p_norm(i));
    return m;
}

VectorFieldFamily VectorFieldFamily::scaled(double s) const {
    std::vector<VectorField> out;
    for (const auto& f : fields_) out.push_back(s * f);
    return VectorFieldFamily(std::move(out), p_);
}

VectorFieldFamily VectorFieldFamily::with_field(const VectorField& field) const {
    std::vector<VectorField> out = fields_;
    out.push_back(field);
    return VectorFieldFamily(std::move(out), p_);
}

std::vector<std::vector<int>> index_tuples(int m, int dim) {
    std::vector<std::vector<int>> out;
    const int k = dim - 1;
    if (k <= 0 || k > m) return out;
    std::vector<int> t(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) t[i] = i;
    while (true) {
        out.push_back(t);
        int i = k - 1;
        while (i >= 0 && t[i] == m - k + i) --i;
        if (i < 0) break;
        ++t[i];
        for (int j = i + 1; j < k; ++j) t[j] = t[j - 1] + 1;
    }
    return out;
}

Vec wedge(const std::vector<Vec>& vectors, int dim) {
    if (dim < 2 || dim > 3) throw std::invalid_argument("wedge: defined for d = 2 or 3");
    if (static_cast<int>(vectors.size()) != dim - 1) throw std::invalid_argument("wedge: need d - 1 vectors");
    if (dim == 2) return {-vectors[0][1], vectors[0][0], 0.0};
    const Vec& a = vectors[0];
    const Vec& b = vectors[1];
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec wedge(const VectorFieldFamily& family, const std::vector<int>& tuple, std::size_t flat) {
    const int d = family.dim();
    if (d < 2) throw std::invalid_argument("wedge: undefined for d = 1");
    if (std::set<int>(tuple.begin(), tuple.end()).size() != tuple.size()) {
        throw std::invalid_argument("wedge: repeated indices");
    }
    std::vector<Vec> vectors;
    for (int idx : tuple) {
        if (idx < 0 || idx >= family.size()) throw std::invalid_argument("wedge: index out of range");
        Vec v{0.0, 0.0, 0.0};
        for (int a = 0; a < d; ++a) v[a] = family[idx][a].physical()[flat];
        vectors.push_back(v);
    }
    return wedge(vectors, d);
}

SpectralField nondegeneracy_field(const VectorFieldFamily& family) {
    const int d = family.dim();
    if (d < 2) throw std::invalid_argument("nondegeneracy: undefined for d = 1");
    const auto tuples = index_tuples(family.size(), d);
    const auto& grid = family.grid();
    std::vector<double> out(grid.size(), 0.0);
    for (std::size_t n = 0; n < grid.size(); ++n) {
        double best = 0.0;
        for (const auto& t : tuples) {
            const Vec w = wedge(family, t, n);
            best = std::max(best, std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]));
        }
        out[n] = d == 2 ? best : std::sqrt(best);
    }
    return SpectralField::from_physical(grid, std::move(out));
}

double nondegeneracy(const VectorFieldFamily& family) {
    const auto field = nondegeneracy_field(family);
    const auto& v = field.physical();
    return *std::min_element(v.begin(), v.end());
}

SpectralField directional_div(const SpectralField& f, const VectorField& y) {
    VectorField fy(y.grid());
    for (int a = 0; a < y.size(); ++a) fy[a] = spectral::pointwise_product(f, y[a]);
    SpectralField out = spectral::divergence(fy) - spectral::pointwise_product(f, spectral::divergence(y));
    return spectral::dealias(out);
}

StriatedReport striated_norm(const SpectralField& f, const VectorFieldFamily& family) {
    StriatedReport r;
    r.nondegeneracy = nondegeneracy(family);
    if (r.nondegeneracy <= 1e-8) throw std::domain_error("striated_norm: degenerate family (I(X) <= 1e-8)");
    r.f_sup = spectral::sup_norm(f);
    for (int i = 0; i < family.size(); ++i) {
        r.field_linf_p.push_back(family.linf_p_norm(i));
        VectorField fx(family.grid());
        for (int a = 0; a < family.dim(); ++a) fx[a] = spectral::pointwise_product(f, family[i][a]);
        r.div_fx_lp.push_back(spectral::lp_norm(spectral::divergence(fx), family.p()));
    }
    r.family_linf_p = *std::max_element(r.field_linf_p.begin(), r.field_linf_p.end());
    r.family_div_fx = *std::max_element(r.div_fx_lp.begin(), r.div_fx_lp.end());
    r.norm = r.recompose();
    return r;
}

}  // namespace cns::striated
