#include "cns/spectral/grid.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace cns::spectral {

TorusGrid::TorusGrid(int dim, int n, double length) : dim_(dim), n_(n), length_(length) {
    if (dim < 1 || dim > kMaxDim) {
        throw std::invalid_argument("TorusGrid: dimension must be 1, 2 or 3");
    }
    if (n < 8 || (n & (n - 1)) != 0) {
        throw std::invalid_argument("TorusGrid: N must be a power of two with N >= 8");
    }
    if (!(length > 0.0)) {
        throw std::invalid_argument("TorusGrid: length must be positive");
    }
    size_ = 1;
    for (int a = 0; a < dim; ++a) size_ *= static_cast<std::size_t>(n);
}

double TorusGrid::cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < dim_; ++a) v *= dx();
    return v;
}

std::array<int, kMaxDim> TorusGrid::unflatten(std::size_t flat) const {
    std::array<int, kMaxDim> idx{0, 0, 0};
    for (int a = dim_ - 1; a >= 0; --a) {
        idx[a] = static_cast<int>(flat % static_cast<std::size_t>(n_));
        flat /= static_cast<std::size_t>(n_);
    }
    return idx;
}

std::size_t TorusGrid::flatten(const std::array<int, kMaxDim>& idx) const {
    std::size_t flat = 0;
    for (int a = 0; a < dim_; ++a) {
        int i = idx[a] % n_;
        if (i < 0) i += n_;
        flat = flat * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i);
    }
    return flat;
}

std::array<double, kMaxDim> TorusGrid::coordinates(std::size_t flat) const {
    auto idx = unflatten(flat);
    std::array<double, kMaxDim> x{0.0, 0.0, 0.0};
    for (int a = 0; a < dim_; ++a) x[a] = idx[a] * dx();
    return x;
}

bool TorusGrid::operator==(const TorusGrid& other) const {
    return dim_ == other.dim_ && n_ == other.n_ && length_ == other.length_;
}

std::shared_ptr<const SpectralTables> spectral_tables(const TorusGrid& grid) {
    using Key = std::tuple<int, int, double>;
    static std::mutex mutex;
    static std::map<Key, std::shared_ptr<const SpectralTables>> cache;

    Key key{grid.dim(), grid.n(), grid.length()};
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    auto tables = std::make_shared<SpectralTables>();
    const std::size_t size = grid.size();
    const double unit = grid.wavenumber_unit();
    tables->k2.assign(size, 0.0);
    tables->kd2.assign(size, 0.0);
    for (int a = 0; a < grid.dim(); ++a) {
        tables->kd[a].assign(size, 0.0);
        tables->modes[a].assign(size, 0);
    }
    for (std::size_t f = 0; f < size; ++f) {
        auto idx = grid.unflatten(f);
        for (int a = 0; a < grid.dim(); ++a) {
            int m = grid.mode(idx[a]);
            double k = unit * m;
            double kd = grid.is_nyquist(idx[a]) ? 0.0 : k;
            tables->modes[a][f] = m;
            tables->kd[a][f] = kd;
            tables->k2[f] += k * k;
            tables->kd2[f] += kd * kd;
        }
    }
    cache.emplace(key, tables);
    return tables;
}

}  // namespace cns::spectral
