#include "cns/state/budget.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cns::state {

SmallnessBudget::SmallnessBudget(double epsilon, double constant) : epsilon_(epsilon), constant_(constant) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("SmallnessBudget: eps must be positive");
    if (!(constant >= 0.0)) throw std::invalid_argument("SmallnessBudget: C must be nonnegative");
}

void SmallnessBudget::record(double time, double rho_sup, double div_w_sup) {
    if (samples_ == 0) {
        start_ = time;
        time_ = time;
    } else {
        if (time < time_) throw std::invalid_argument("SmallnessBudget: samples must be in time order");
        div_w_integral_ += 0.5 * (time - time_) * (last_div_ + div_w_sup);
        time_ = time;
    }
    last_div_ = div_w_sup;
    rho_sup_ = std::max(rho_sup_, rho_sup);
    ++samples_;
}

bool SmallnessBudget::admissible() const {
    return exponent() <= std::log(2.0) && div_w_integral_ <= epsilon_;
}

}  // namespace cns::state
