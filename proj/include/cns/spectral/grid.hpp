#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <vector>

namespace cns::spectral {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr int kMaxDim = 3;

using Point = std::array<double, kMaxDim>;

/// Uniform periodic grid on the torus [0, L)^d with N points per axis.
class TorusGrid {
public:
    /// @throws std::invalid_argument unless d in {1,2,3}, N a power of two >= 8, L > 0.
    TorusGrid(int dim, int n, double length = kTwoPi);

    int dim() const { return dim_; }
    int n() const { return n_; }
    double length() const { return length_; }
    double dx() const { return length_ / n_; }
    std::size_t size() const { return size_; }
    /// Cell volume dx^d used as the quadrature weight.
    double cell_volume() const;
    /// Spacing of the wavenumber lattice, 2*pi/L.
    double wavenumber_unit() const { return kTwoPi / length_; }

    /// Signed integer mode for an index along one axis; the Nyquist index maps to -N/2.
    int mode(int index) const { return index < n_ / 2 ? index : index - n_; }
    bool is_nyquist(int index) const { return index == n_ / 2; }

    /// Multi-index (row-major, last axis fastest) of a flat index.
    std::array<int, kMaxDim> unflatten(std::size_t flat) const;
    std::size_t flatten(const std::array<int, kMaxDim>& idx) const;

    std::array<double, kMaxDim> coordinates(std::size_t flat) const;

    bool operator==(const TorusGrid& other) const;
    bool operator!=(const TorusGrid& other) const { return !(*this == other); }

private:
    int dim_;
    int n_;
    double length_;
    std::size_t size_;
};

/// Wavenumber tables shared by every field on a grid.
struct SpectralTables {
    /// |k|^2 with physical wavenumbers, Nyquist included.
    std::vector<double> k2;
    /// Per-axis wavenumber used by first derivatives (Nyquist zeroed).
    std::array<std::vector<double>, kMaxDim> kd;
    /// Per-axis signed integer modes.
    std::array<std::vector<int>, kMaxDim> modes;
    /// |k'|^2 built from the derivative wavenumbers.
    std::vector<double> kd2;
};

/// Cached tables for a grid; safe to call from several threads.
std::shared_ptr<const SpectralTables> spectral_tables(const TorusGrid& grid);

}  // namespace cns::spectral
