#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cns/striated/family.hpp"

namespace cns::striated {

/// Raised when |u|_inf dt / dx exceeds one.
class TransportCflError : public std::runtime_error {
public:
    TransportCflError(const std::string& what, double courant) : std::runtime_error(what), courant_(courant) {}
    double courant() const { return courant_; }

private:
    double courant_;
};

/// One step of d_t X + u.grad X = X.grad u with a frozen velocity.
VectorFieldFamily transport_family(const VectorFieldFamily& family, const VectorField& u, double dt);

/// One step from velocity u_start at t to u_end at t + dt. Characteristics are
/// traced back with the midpoint rule in the averaged velocity; the stretching
/// term is integrated with Heun's rule along the characteristic. Off-grid
/// values come from Fourier interpolation; the cached gradients are recomputed.
/// @throws TransportCflError if max(|u_start|_inf, |u_end|_inf) dt / dx > 1.
VectorFieldFamily transport_family(const VectorFieldFamily& family, const VectorField& u_start,
                                   const VectorField& u_end, double dt);

/// Family quantities along a run at one time.
struct FamilySample {
    double t = 0.0;
    double grad_u_cum = 0.0;    ///< U(t) = int |grad u|_inf
    double sup_norm = 0.0;      ///< sup_l |X_l|_inf
    double nondegeneracy = 0.0; ///< I(X)
    double div_rho_x = 0.0;     ///< sup_l |div(rho X_l)|_p
};

/// Samples a family against the density deviation.
FamilySample sample_family(double t, double grad_u_cum, const VectorFieldFamily& family,
                           const SpectralField& rho_dev);

struct BoundRow {
    std::string quantity;
    double t = 0.0;
    double value = 0.0;
    double bound = 0.0;
    double slack = 0.0;  ///< relative margin of the tolerance-widened bound, negative on violation
    bool pass = true;
};

struct BoundsReport {
    std::vector<BoundRow> rows;
    double density_constant = 0.0;  ///< C in e^{C U} for div(rho X)
    int violations = 0;
    bool pass() const { return violations == 0; }
};

/// Checks |X(t)|_inf <= |X_0|_inf e^U (1 + tol), I(X(t)) >= I(X_0) e^{-U} (1 - tol) and
/// |div(rho X)(t)|_p <= e^{C U} |div(rho_0 X_0)|_p (1 + tol) with C = sqrt(d) (1 - 1/p)
/// against the first sample.
BoundsReport transported_bounds_check(const std::vector<FamilySample>& history, int dim, double p,
                                      double tol = 0.05);

}  // namespace cns::striated
