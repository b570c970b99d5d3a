#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <mutex>
#include <vector>

#include "cns/spectral/fft.hpp"
#include "cns/spectral/grid.hpp"

namespace cns::spectral {

/// Real scalar field on a torus grid held in physical values and Fourier
/// coefficients. Whichever side is stale is recomputed on first access.
///
/// Coefficients are normalized so that f(x) = sum_k c_k exp(i k.x); the zero
/// mode is the mean.
class SpectralField {
public:
    explicit SpectralField(const TorusGrid& grid);

    static SpectralField from_physical(const TorusGrid& grid, std::vector<double> values);
    static SpectralField from_spectral(const TorusGrid& grid, std::vector<Complex> coeffs);
    static SpectralField from_function(const TorusGrid& grid,
                                       const std::function<double(const std::array<double, kMaxDim>&)>& f);
    static SpectralField constant(const TorusGrid& grid, double value);

    SpectralField(const SpectralField& other);
    SpectralField(SpectralField&& other) noexcept;
    SpectralField& operator=(const SpectralField& other);
    SpectralField& operator=(SpectralField&& other) noexcept;

    const TorusGrid& grid() const { return grid_; }
    std::size_t size() const { return grid_.size(); }

    const std::vector<double>& physical() const;
    const std::vector<Complex>& spectral() const;
    /// Mutable access; the other representation becomes stale.
    std::vector<double>& physical_mut();
    std::vector<Complex>& spectral_mut();

    double mean() const;

    SpectralField& operator+=(const SpectralField& other);
    SpectralField& operator-=(const SpectralField& other);
    SpectralField& operator*=(double s);

private:
    void require_same_grid(const SpectralField& other) const;

    TorusGrid grid_;
    mutable std::vector<double> physical_;
    mutable std::vector<Complex> spectral_;
    mutable bool physical_valid_ = true;
    mutable bool spectral_valid_ = true;
    mutable std::mutex mutex_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField a);
SpectralField operator*(SpectralField a, double s);

/// Pointwise product in physical space (no truncation).
SpectralField pointwise_product(const SpectralField& a, const SpectralField& b);
/// Pointwise map x -> f(x) of the physical values.
SpectralField pointwise_map(const SpectralField& a, const std::function<double(double)>& f);

/// Fixed-size list of scalar components on one grid.
class VectorField {
public:
    VectorField(const TorusGrid& grid, int components);
    explicit VectorField(const TorusGrid& grid) : VectorField(grid, grid.dim()) {}
    explicit VectorField(std::vector<SpectralField> components);

    const TorusGrid& grid() const { return components_.front().grid(); }
    int size() const { return static_cast<int>(components_.size()); }

    SpectralField& operator[](int i) { return components_[static_cast<std::size_t>(i)]; }
    const SpectralField& operator[](int i) const { return components_[static_cast<std::size_t>(i)]; }

    VectorField& operator+=(const VectorField& other);
    VectorField& operator-=(const VectorField& other);
    VectorField& operator*=(double s);

    /// Pointwise Euclidean magnitude.
    SpectralField magnitude() const;

private:
    std::vector<SpectralField> components_;
};

VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double s, VectorField a);

/// Row-major d x d matrix of scalar fields, entry (i, j) = d_j V_i for gradients.
class TensorField {
public:
    explicit TensorField(const TorusGrid& grid);

    const TorusGrid& grid() const { return entries_.front().grid(); }
    int dim() const { return dim_; }

    SpectralField& operator()(int i, int j) { return entries_[static_cast<std::size_t>(i * dim_ + j)]; }
    const SpectralField& operator()(int i, int j) const {
        return entries_[static_cast<std::size_t>(i * dim_ + j)];
    }

    /// Pointwise Frobenius norm.
    SpectralField frobenius() const;

private:
    int dim_;
    std::vector<SpectralField> entries_;
};

}  // namespace cns::spectral
