#include "cns/harmonic/bony.hpp"

#include <stdexcept>

#include "cns/spectral/operators.hpp"

namespace cns::harmonic {

BonyParts bony_decompose(const SpectralField& u, const SpectralField& v) {
    if (u.grid() != v.grid()) throw std::invalid_argument("bony_decompose: grids differ");
    const auto& grid = u.grid();
    BlockRange range = block_range(grid, false);
    const int count = range.last - range.first + 1;

    std::vector<SpectralField> bu, bv;
    for (int j = range.first; j <= range.last; ++j) {
        bu.push_back(dyadic_block(u, j, false));
        bv.push_back(dyadic_block(v, j, false));
    }
    const std::size_t size = grid.size();
    std::vector<double> tuv(size, 0.0), tvu(size, 0.0), rem(size, 0.0);
    // Running low-frequency sums S_{j-1} = sum_{k <= j-2} Delta_k.
    std::vector<double> low_u(size, 0.0), low_v(size, 0.0);
    for (int a = 0; a < count; ++a) {
        if (a >= 2) {
            const auto& pu = bu[static_cast<std::size_t>(a - 2)].physical();
            const auto& pv = bv[static_cast<std::size_t>(a - 2)].physical();
            for (std::size_t i = 0; i < size; ++i) {
                low_u[i] += pu[i];
                low_v[i] += pv[i];
            }
        }
        const auto& du = bu[static_cast<std::size_t>(a)].physical();
        const auto& dv = bv[static_cast<std::size_t>(a)].physical();
        for (std::size_t i = 0; i < size; ++i) {
            tuv[i] += low_u[i] * dv[i];
            tvu[i] += low_v[i] * du[i];
        }
        for (int b = a - 1; b <= a + 1; ++b) {
            if (b < 0 || b >= count) continue;
            const auto& eu = bu[static_cast<std::size_t>(b)].physical();
            for (std::size_t i = 0; i < size; ++i) rem[i] += eu[i] * dv[i];
        }
    }
    return BonyParts{spectral::dealias(SpectralField::from_physical(grid, std::move(tuv))),
                     spectral::dealias(SpectralField::from_physical(grid, std::move(tvu))),
                     spectral::dealias(SpectralField::from_physical(grid, std::move(rem)))};
}

SpectralField paraproduct_term(const SpectralField& u, const SpectralField& v, int j) {
    return pointwise_product(low_frequency_cutoff(u, j - 1), dyadic_block(v, j, false));
}

}  // namespace cns::harmonic
