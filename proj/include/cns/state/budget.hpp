#pragma once

namespace cns::state {

/// Running smallness bookkeeping for the admissible window: the time t is
/// admissible while C t + int_0^t |div w|_inf <= log 2 and int_0^t |div w|_inf <= eps.
class SmallnessBudget {
public:
    /// @throws std::invalid_argument unless eps > 0 and C >= 0.
    SmallnessBudget(double epsilon, double constant);

    /// Records a sample; the divergence integral uses the trapezoid rule between samples.
    /// @throws std::invalid_argument if time decreases.
    void record(double time, double rho_sup, double div_w_sup);

    double epsilon() const { return epsilon_; }
    double constant() const { return constant_; }
    double time() const { return time_; }
    double rho_sup() const { return rho_sup_; }
    double div_w_integral() const { return div_w_integral_; }
    /// C t + int |div w|_inf, with t measured from the first sample.
    double exponent() const { return constant_ * (time_ - start_) + div_w_integral_; }
    bool admissible() const;
    int samples() const { return samples_; }

private:
    double epsilon_;
    double constant_;
    double start_ = 0.0;
    double time_ = 0.0;
    double rho_sup_ = 0.0;
    double div_w_integral_ = 0.0;
    double last_div_ = 0.0;
    int samples_ = 0;
};

}  // namespace cns::state
