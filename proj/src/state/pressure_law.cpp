#include "cns/state/pressure_law.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cns::state {

namespace {

void check_epsilon(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 0.25)) throw std::invalid_argument("pressure law: eps must lie in (0, 1/4)");
}

double simpson(const std::function<double(double)>& f, double a, double b) {
    const double m = 0.5 * (a + b);
    return (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double whole, double tol,
                        int depth) {
    const double m = 0.5 * (a + b);
    const double left = simpson(f, a, m);
    const double right = simpson(f, m, b);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, right, 0.5 * tol, depth - 1);
}

}  // namespace

PressureLaw::PressureLaw(std::string kind, double a, double gamma, double epsilon,
                         std::function<double(double)> pressure, std::function<double(double)> derivative,
                         std::function<double(double)> potential)
    : kind_(std::move(kind)),
      a_(a),
      gamma_(gamma),
      epsilon_(epsilon),
      pressure_(std::move(pressure)),
      derivative_(std::move(derivative)),
      potential_(std::move(potential)) {
    check_epsilon(epsilon_);
    summarize();
}

PressureLaw PressureLaw::linear(double a, double epsilon) {
    if (!(a > 0.0)) throw std::invalid_argument("linear pressure law: a must be positive");
    return PressureLaw(
        "linear", a, 1.0, epsilon, [a](double z) { return a * (z - 1.0); }, [a](double) { return a; },
        [a](double z) { return a * (z * std::log(z) - z + 1.0); });
}

PressureLaw PressureLaw::gamma_law(double a, double gamma, double epsilon) {
    if (!(a > 0.0)) throw std::invalid_argument("gamma pressure law: a must be positive");
    if (!(gamma >= 1.0)) throw std::invalid_argument("gamma pressure law: gamma must be >= 1");
    if (gamma == 1.0) {
        PressureLaw law = linear(a, epsilon);
        law.kind_ = "gamma";
        return law;
    }
    return PressureLaw(
        "gamma", a, gamma, epsilon, [a, gamma](double z) { return a * (std::pow(z, gamma) - 1.0); },
        [a, gamma](double z) { return a * gamma * std::pow(z, gamma - 1.0); },
        [a, gamma](double z) { return a * (std::pow(z, gamma) - gamma * z + gamma - 1.0) / (gamma - 1.0); });
}

PressureLaw PressureLaw::custom(std::string name, std::function<double(double)> pressure,
                                std::function<double(double)> derivative, double epsilon) {
    if (!pressure || !derivative) throw std::invalid_argument("custom pressure law: P and P' are required");
    if (std::abs(pressure(1.0)) > 1e-12) throw std::invalid_argument("custom pressure law: P(1) must vanish");
    auto potential = [derivative](double z) {
        if (z == 1.0) return 0.0;
        // Pi(z) = int_1^z (z - s) P'(s) / s ds.
        std::function<double(double)> integrand = [&](double s) { return (z - s) * derivative(s) / s; };
        const double whole = simpson(integrand, 1.0, z);
        return adaptive_simpson(integrand, 1.0, z, whole, 1e-14, 40);
    };
    return PressureLaw(std::move(name), 0.0, 1.0, epsilon, std::move(pressure), std::move(derivative), potential);
}

std::pair<double, double> PressureLaw::validity_interval() const {
    return {1.0 - 4.0 * epsilon_, 1.0 + 4.0 * epsilon_};
}

bool PressureLaw::in_validity(double rho) const {
    auto [lo, hi] = validity_interval();
    return rho >= lo && rho <= hi;
}

void PressureLaw::summarize() {
    auto [lo, hi] = validity_interval();
    constexpr int kSamples = 1001;
    double inf = derivative_(lo);
    double sup = 0.0;
    for (int i = 0; i < kSamples; ++i) {
        const double z = lo + (hi - lo) * i / (kSamples - 1);
        const double d = derivative_(z);
        inf = std::min(inf, d);
        sup = std::max(sup, std::abs(d));
    }
    derivative_positive_ = inf > 0.0;
    derivative_sup_ = sup;
}

PressureLaw PressureLaw::with_epsilon(double epsilon) const {
    check_epsilon(epsilon);
    PressureLaw copy = *this;
    copy.epsilon_ = epsilon;
    copy.summarize();
    return copy;
}

}  // namespace cns::state
