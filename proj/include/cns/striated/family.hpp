#pragma once

#include <array>
#include <vector>

#include "cns/spectral/field.hpp"

namespace cns::striated {

using spectral::SpectralField;
using spectral::TensorField;
using spectral::TorusGrid;
using spectral::VectorField;
using Vec = std::array<double, 3>;

/// Family of m vector fields X_1..X_m on one grid, with their gradients cached.
class VectorFieldFamily {
public:
    /// @throws std::invalid_argument if the family is empty, the fields do not
    ///         share a grid or have d components, m < d - 1, or p <= d.
    VectorFieldFamily(std::vector<VectorField> fields, double p);

    const TorusGrid& grid() const { return fields_.front().grid(); }
    int dim() const { return grid().dim(); }
    int size() const { return static_cast<int>(fields_.size()); }
    double p() const { return p_; }

    const VectorField& operator[](int i) const { return fields_[static_cast<std::size_t>(i)]; }
    const TensorField& gradient(int i) const { return gradients_[static_cast<std::size_t>(i)]; }
    const std::vector<VectorField>& fields() const { return fields_; }

    /// sup over the family of |X|_inf.
    double sup_norm() const;
    /// sup over the family of |grad X|_p (Frobenius).
    double gradient_norm() const;
    /// sup over the family of |X|_inf + |grad X|_p.
    double linf_p_norm() const;
    double linf_p_norm(int i) const;

    /// Family with every field multiplied by s.
    VectorFieldFamily scaled(double s) const;
    /// Family with one more field.
    VectorFieldFamily with_field(const VectorField& field) const;

private:
    std::vector<VectorField> fields_;
    std::vector<TensorField> gradients_;
    double p_;
};

/// Index tuples lambda_1 < ... < lambda_{d-1} drawn from {0, ..., m-1}.
std::vector<std::vector<int>> index_tuples(int m, int dim);

/// The vector W with W . Y = det(X_1, ..., X_{d-1}, Y): the 90 degree rotation
/// (-X^2, X^1) for d = 2 and the cross product for d = 3.
/// @throws std::invalid_argument for d = 1 or a wrong number of vectors.
Vec wedge(const std::vector<Vec>& vectors, int dim);

/// Wedge of the family members in `tuple` at grid point `flat`.
/// @throws std::invalid_argument for d = 1 or repeated indices.
Vec wedge(const VectorFieldFamily& family, const std::vector<int>& tuple, std::size_t flat);

/// Pointwise sup over index tuples of |wedge|^{1/(d-1)}.
SpectralField nondegeneracy_field(const VectorFieldFamily& family);
/// I(X): grid infimum of nondegeneracy_field.
double nondegeneracy(const VectorFieldFamily& family);

/// d_Y f = div(f Y) - f div Y, dealiased.
SpectralField directional_div(const SpectralField& f, const VectorField& y);

struct StriatedReport {
    std::vector<double> field_linf_p;  ///< |X_l|_inf + |grad X_l|_p
    double family_linf_p = 0.0;
    double nondegeneracy = 0.0;        ///< I(X)
    std::vector<double> div_fx_lp;     ///< |div(f X_l)|_p
    double family_div_fx = 0.0;
    double f_sup = 0.0;
    double norm = 0.0;                 ///< (|f|_inf |X|_{inf,p} + |div(f X)|_p) / I(X)

    /// Recomputes the norm from the stored parts.
    double recompose() const { return (f_sup * family_linf_p + family_div_fx) / nondegeneracy; }
};

/// @throws std::domain_error if I(X) <= 1e-8.
StriatedReport striated_norm(const SpectralField& f, const VectorFieldFamily& family);

}  // namespace cns::striated
