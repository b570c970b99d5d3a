#pragma once

#include "cns/harmonic/littlewood_paley.hpp"

namespace cns::harmonic {

struct BonyParts {
    SpectralField paraproduct_uv;  ///< T_u v = sum_j S_{j-1} u Delta_j v
    SpectralField paraproduct_vu;  ///< T_v u
    SpectralField remainder;       ///< sum over |j - k| <= 1 of Delta_k u Delta_j v
};

/// Nonhomogeneous paraproduct decomposition of u v; every product is
/// dealiased, so the three parts sum to the dealiased product.
BonyParts bony_decompose(const SpectralField& u, const SpectralField& v);

/// One paraproduct term S_{j-1} u Delta_j v, without truncation.
SpectralField paraproduct_term(const SpectralField& u, const SpectralField& v, int j);

}  // namespace cns::harmonic
