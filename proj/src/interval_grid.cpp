#include "geomsched/interval_grid.hpp"

#include <cmath>
#include <string>

#include "geomsched/instance.hpp"

namespace geomsched {

IntervalGrid::IntervalGrid(double epsilon, int horizon)
    : epsilon_(epsilon), horizon_(horizon) {
    if (!(epsilon > 0.0)) throw ParamError("epsilon must be > 0");
    if (horizon < 1) throw ParamError("horizon must be >= 1");

    // Smallest T_I with (1+eps)^{T_I} >= T, i.e. ceil(log_{1+eps} T).
    tau_.push_back(1.0);
    int s = 0;
    while (tau_.back() < static_cast<double>(horizon)) {
        ++s;
        tau_.push_back(std::pow(1.0 + epsilon_, s));
    }
    t_i_ = s;
}

double IntervalGrid::tau(int s) const {
    if (s < 0) return 0.0;
    if (s < static_cast<int>(tau_.size())) return tau_[static_cast<size_t>(s)];
    return std::pow(1.0 + epsilon_, s);
}

int IntervalGrid::interval_of(double t) const {
    if (t < 1.0 || !(t > 0.0)) return 0;
    // Start from the floating-point log estimate, then settle by direct
    // comparison against the same pow() values used for tau. Naive ceil(log)
    // misclassifies exact powers.
    int s = static_cast<int>(std::ceil(std::log(t) / std::log(1.0 + epsilon_)));
    if (s < 0) s = 0;
    while (tau(s) < t) ++s;
    while (s >= 1 && tau(s - 1) >= t) --s;
    return s;
}

long long IntervalGrid::first_period_in(int s) const {
    if (s < 0) return 0;
    if (s == 0) return 1;
    long long first = static_cast<long long>(std::floor(tau(s - 1))) + 1;
    return first <= last_period_in(s) ? first : 0;
}

long long IntervalGrid::last_period_in(int s) const {
    if (s < 0) return 0;
    return static_cast<long long>(std::floor(tau(s)));
}

IntervalGrid build_grid(double epsilon, int horizon) {
    return IntervalGrid(epsilon, horizon);
}

double gamma_bound(double rate, int horizon, double epsilon) {
    if (rate < 0.0) throw ParamError("rate must be >= 0");
    if (horizon < 1) throw ParamError("horizon must be >= 1");
    if (!(epsilon > 0.0)) throw ParamError("epsilon must be > 0");
    return std::pow(1.0 + rate, -static_cast<double>(horizon) * 2.0 * epsilon / (1.0 + epsilon));
}

double convert_rate(double rate, double periods_per_target) {
    if (rate <= -1.0) throw ParamError("rate must be > -1");
    if (!(periods_per_target > 0.0)) throw ParamError("periods_per_target must be > 0");
    return std::pow(1.0 + rate, 1.0 / periods_per_target) - 1.0;
}

}  // namespace geomsched
