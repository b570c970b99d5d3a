#pragma once

#include <utility>
#include <vector>

#include "cns/harmonic/littlewood_paley.hpp"

namespace cns::harmonic {

struct BesovSpec {
    double s;
    double p;
    double r;
    bool homogeneous;
};

struct BlockNorm {
    int j;
    double lp_norm;
};

/// L^p norms of every dyadic block that can be nonzero on the grid.
/// Vector fields use the pointwise Euclidean magnitude.
std::vector<BlockNorm> block_norms(const SpectralField& f, double p, bool homogeneous);
std::vector<BlockNorm> block_norms(const VectorField& v, double p, bool homogeneous);

/// l^r norm of (2^{js} ||Delta_j f||_{L^p})_j. Homogeneous norms ignore the
/// mean, which no homogeneous block sees.
/// @throws std::invalid_argument unless p, r lie in [1, infinity].
double besov_norm(const SpectralField& f, const BesovSpec& spec);
double besov_norm(const VectorField& v, const BesovSpec& spec);
double besov_norm_from_blocks(const std::vector<BlockNorm>& blocks, double s, double r);

/// Heat-flow characterization of the homogeneous norm of regularity -s:
/// the L^r(dt/t) norm of t -> t^{s/2} ||exp(t Lap) f||_{L^p}, sampled at 64
/// log-spaced nodes per decade on [(dx/2)^2, L^2] with the mean removed.
/// @throws std::invalid_argument if s <= 0 or p, r outside [1, infinity].
double besov_norm_heat(const SpectralField& f, double s, double p, double r);

/// Heat-flow profile t -> ||exp(t Lap) (f - mean f)||_{L^p} on the quadrature
/// nodes; shared by several regularity indices.
struct HeatProfile {
    std::vector<double> times;
    std::vector<double> norms;
};

HeatProfile heat_profile(const SpectralField& f, double p);
double heat_norm_from_profile(const HeatProfile& profile, double s, double r);

}  // namespace cns::harmonic
