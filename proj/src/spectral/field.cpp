#include "cns/spectral/field.hpp"

#include <cmath>
#include <stdexcept>

namespace cns::spectral {

SpectralField::SpectralField(const TorusGrid& grid)
    : grid_(grid), physical_(grid.size(), 0.0), spectral_(grid.size(), Complex(0.0, 0.0)) {}

SpectralField SpectralField::from_physical(const TorusGrid& grid, std::vector<double> values) {
    if (values.size() != grid.size()) {
        throw std::invalid_argument("SpectralField: physical array size does not match grid");
    }
    SpectralField f(grid);
    f.physical_ = std::move(values);
    f.physical_valid_ = true;
    f.spectral_valid_ = false;
    return f;
}

SpectralField SpectralField::from_spectral(const TorusGrid& grid, std::vector<Complex> coeffs) {
    if (coeffs.size() != grid.size()) {
        throw std::invalid_argument("SpectralField: spectral array size does not match grid");
    }
    SpectralField f(grid);
    f.spectral_ = std::move(coeffs);
    f.spectral_valid_ = true;
    f.physical_valid_ = false;
    return f;
}

SpectralField SpectralField::from_function(
    const TorusGrid& grid, const std::function<double(const std::array<double, kMaxDim>&)>& fn) {
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = fn(grid.coordinates(i));
    return from_physical(grid, std::move(values));
}

SpectralField SpectralField::constant(const TorusGrid& grid, double value) {
    return from_physical(grid, std::vector<double>(grid.size(), value));
}

SpectralField::SpectralField(const SpectralField& other) : grid_(other.grid_) {
    std::lock_guard<std::mutex> lock(other.mutex_);
    physical_ = other.physical_;
    spectral_ = other.spectral_;
    physical_valid_ = other.physical_valid_;
    spectral_valid_ = other.spectral_valid_;
}

SpectralField::SpectralField(SpectralField&& other) noexcept
    : grid_(other.grid_),
      physical_(std::move(other.physical_)),
      spectral_(std::move(other.spectral_)),
      physical_valid_(other.physical_valid_),
      spectral_valid_(other.spectral_valid_) {}

SpectralField& SpectralField::operator=(const SpectralField& other) {
    if (this == &other) return *this;
    std::scoped_lock lock(mutex_, other.mutex_);
    grid_ = other.grid_;
    physical_ = other.physical_;
    spectral_ = other.spectral_;
    physical_valid_ = other.physical_valid_;
    spectral_valid_ = other.spectral_valid_;
    return *this;
}

SpectralField& SpectralField::operator=(SpectralField&& other) noexcept {
    if (this == &other) return *this;
    grid_ = other.grid_;
    physical_ = std::move(other.physical_);
    spectral_ = std::move(other.spectral_);
    physical_valid_ = other.physical_valid_;
    spectral_valid_ = other.spectral_valid_;
    return *this;
}

const std::vector<double>& SpectralField::physical() const {
    std::lock_guard<std::mutex> lock(mutex_);
    if (!physical_valid_) {
        std::vector<Complex> work = spectral_;
        fft_inplace(work, grid_.dim(), grid_.n(), +1);
        physical_.resize(work.size());
        for (std::size_t i = 0; i < work.size(); ++i) physical_[i] = work[i].real();
        physical_valid_ = true;
    }
    return physical_;
}

const std::vector<Complex>& SpectralField::spectral() const {
    std::lock_guard<std::mutex> lock(mutex_);
    if (!spectral_valid_) {
        spectral_.resize(physical_.size());
        for (std::size_t i = 0; i < physical_.size(); ++i) spectral_[i] = Complex(physical_[i], 0.0);
        fft_inplace(spectral_, grid_.dim(), grid_.n(), -1);
        const double scale = 1.0 / static_cast<double>(grid_.size());
        for (auto& c : spectral_) c *= scale;
        spectral_valid_ = true;
    }
    return spectral_;
}

std::vector<double>& SpectralField::physical_mut() {
    physical();
    spectral_valid_ = false;
    return physical_;
}

std::vector<Complex>& SpectralField::spectral_mut() {
    spectral();
    physical_valid_ = false;
    return spectral_;
}

double SpectralField::mean() const {
    if (spectral_valid_) return spectral()[0].real();
    const auto& v = physical();
    double sum = 0.0;
    for (double x : v) sum += x;
    return sum / static_cast<double>(v.size());
}

void SpectralField::require_same_grid(const SpectralField& other) const {
    if (grid_ != other.grid_) throw std::invalid_argument("SpectralField: grids differ");
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
    require_same_grid(other);
    if (spectral_valid_ && !physical_valid_) {
        const auto& o = other.spectral();
        auto& s = spectral_mut();
        for (std::size_t i = 0; i < s.size(); ++i) s[i] += o[i];
    } else {
        const auto& o = other.physical();
        auto& p = physical_mut();
        for (std::size_t i = 0; i < p.size(); ++i) p[i] += o[i];
    }
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
    require_same_grid(other);
    if (spectral_valid_ && !physical_valid_) {
        const auto& o = other.spectral();
        auto& s = spectral_mut();
        for (std::size_t i = 0; i < s.size(); ++i) s[i] -= o[i];
    } else {
        const auto& o = other.physical();
        auto& p = physical_mut();
        for (std::size_t i = 0; i < p.size(); ++i) p[i] -= o[i];
    }
    return *this;
}

SpectralField& SpectralField::operator*=(double s) {
    if (physical_valid_) for (auto& x : physical_) x *= s;
    if (spectral_valid_) for (auto& c : spectral_) c *= s;
    return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField a) { return a *= s; }
SpectralField operator*(SpectralField a, double s) { return a *= s; }

SpectralField pointwise_product(const SpectralField& a, const SpectralField& b) {
    if (a.grid() != b.grid()) throw std::invalid_argument("pointwise_product: grids differ");
    const auto& x = a.physical();
    const auto& y = b.physical();
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * y[i];
    return SpectralField::from_physical(a.grid(), std::move(out));
}

SpectralField pointwise_map(const SpectralField& a, const std::function<double(double)>& f) {
    const auto& x = a.physical();
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = f(x[i]);
    return SpectralField::from_physical(a.grid(), std::move(out));
}

VectorField::VectorField(const TorusGrid& grid, int components) {
    if (components < 1) throw std::invalid_argument("VectorField: needs at least one component");
    components_.assign(static_cast<std::size_t>(components), SpectralField(grid));
}

VectorField::VectorField(std::vector<SpectralField> components) : components_(std::move(components)) {
    if (components_.empty()) throw std::invalid_argument("VectorField: needs at least one component");
    for (const auto& c : components_) {
        if (c.grid() != components_.front().grid()) {
            throw std::invalid_argument("VectorField: components live on different grids");
        }
    }
}

VectorField& VectorField::operator+=(const VectorField& other) {
    if (other.size() != size()) throw std::invalid_argument("VectorField: component counts differ");
    for (int i = 0; i < size(); ++i) (*this)[i] += other[i];
    return *this;
}

VectorField& VectorField::operator-=(const VectorField& other) {
    if (other.size() != size()) throw std::invalid_argument("VectorField: component counts differ");
    for (int i = 0; i < size(); ++i) (*this)[i] -= other[i];
    return *this;
}

VectorField& VectorField::operator*=(double s) {
    for (auto& c : components_) c *= s;
    return *this;
}

SpectralField VectorField::magnitude() const {
    std::vector<double> out(grid().size(), 0.0);
    for (const auto& c : components_) {
        const auto& v = c.physical();
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += v[i] * v[i];
    }
    for (auto& x : out) x = std::sqrt(x);
    return SpectralField::from_physical(grid(), std::move(out));
}

VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double s, VectorField a) { return a *= s; }

TensorField::TensorField(const TorusGrid& grid) : dim_(grid.dim()) {
    entries_.assign(static_cast<std::size_t>(dim_ * dim_), SpectralField(grid));
}

SpectralField TensorField::frobenius() const {
    std::vector<double> out(grid().size(), 0.0);
    for (const auto& c : entries_) {
        const auto& v = c.physical();
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += v[i] * v[i];
    }
    for (auto& x : out) x = std::sqrt(x);
    return SpectralField::from_physical(grid(), std::move(out));
}

}  // namespace cns::spectral
