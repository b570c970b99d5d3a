#pragma once

#include <functional>
#include <string>
#include <utility>

namespace cns::state {

/// Barotropic pressure law P(rho) with P(1) = 0 and its potential energy
/// density Pi, defined by Pi(1) = Pi'(1) = 0 and Pi'' = P'(z)/z.
class PressureLaw {
public:
    /// P = a (rho - 1); Pi = a (z ln z - z + 1).
    static PressureLaw linear(double a, double epsilon = 0.01);
    /// P = a (rho^gamma - 1); Pi = a (z^gamma - gamma z + gamma - 1) / (gamma - 1).
    static PressureLaw gamma_law(double a, double gamma, double epsilon = 0.01);
    /// User law; Pi is computed by adaptive quadrature of (z - s) P'(s) / s over [1, z].
    /// @throws std::invalid_argument if |P(1)| > 1e-12.
    static PressureLaw custom(std::string name, std::function<double(double)> pressure,
                              std::function<double(double)> derivative, double epsilon = 0.01);

    const std::string& kind() const { return kind_; }
    double a() const { return a_; }
    double gamma() const { return gamma_; }
    double epsilon() const { return epsilon_; }

    double pressure(double rho) const { return pressure_(rho); }
    double derivative(double rho) const { return derivative_(rho); }
    /// g(rho) = P(rho) - rho P'(rho).
    double g(double rho) const { return pressure_(rho) - rho * derivative_(rho); }
    double potential(double rho) const { return potential_(rho); }

    /// Densities [1 - 4 eps, 1 + 4 eps] on which the law is used.
    std::pair<double, double> validity_interval() const;
    bool in_validity(double rho) const;
    /// inf P' > 0 on the validity interval (sampled).
    bool derivative_positive() const { return derivative_positive_; }
    /// sup |P'| on the validity interval; the default Lipschitz constant C in |P(z)| <= C |z - 1|.
    double derivative_sup() const { return derivative_sup_; }

    /// Same law with a different smallness parameter.
    PressureLaw with_epsilon(double epsilon) const;

private:
    PressureLaw(std::string kind, double a, double gamma, double epsilon, std::function<double(double)> pressure,
                std::function<double(double)> derivative, std::function<double(double)> potential);
    void summarize();

    std::string kind_;
    double a_ = 0.0;
    double gamma_ = 1.0;
    double epsilon_;
    std::function<double(double)> pressure_;
    std::function<double(double)> derivative_;
    std::function<double(double)> potential_;
    bool derivative_positive_ = false;
    double derivative_sup_ = 0.0;
};

}  // namespace cns::state
