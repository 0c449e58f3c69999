// Geometric time aggregation: the interval grid tau_s = (1+eps)^s, the
// interval index function, the approximation factor, and rate conversion.
#ifndef GEOMSCHED_INTERVAL_GRID_HPP
#define GEOMSCHED_INTERVAL_GRID_HPP

#include <vector>

namespace geomsched {

// Partition of 1..T into intervals ]tau_{s-1}, tau_s] with tau_s = (1+eps)^s.
// Interval 0 is the singleton [1]. num_intervals() returns T_I = I(T), so the
// usable interval indices are 0..T_I.
class IntervalGrid {
public:
    IntervalGrid(double epsilon, int horizon);

    double epsilon() const { return epsilon_; }
    int horizon() const { return horizon_; }
    int num_intervals() const { return t_i_; }

    // tau(s) = (1+eps)^s for s >= 0. tau(-1) is defined as 0 so that interval
    // 0 behaves like ]0, 1] in start-candidate and length formulas.
    double tau(int s) const;

    // Interval index I(t) = ceil(log_{1+eps}(t)) for t >= 1, 0 for t < 1.
    // Exact at powers: interval_of(tau(s)) == s.
    int interval_of(double t) const;

    // Discount exponent for the start of interval s (period 1 for s <= 1).
    double interval_start_time(int s) const { return s <= 0 ? 1.0 : tau(s - 1); }
    // Discount exponent for the end of interval s.
    double interval_end_time(int s) const { return s <= 0 ? 1.0 : tau(s); }

    // First integer period inside ]tau_{s-1}, tau_s], or 0 when the interval
    // holds no integer period (possible for fractional epsilon).
    long long first_period_in(int s) const;
    // floor(tau_s): the last integer period not beyond the interval end.
    long long last_period_in(int s) const;

private:
    double epsilon_;
    int horizon_;
    int t_i_;
    std::vector<double> tau_;  // tau_[s] = (1+eps)^s, s = 0..T_I
};

IntervalGrid build_grid(double epsilon, int horizon);

// Worst-case approximation factor gamma = (1+r)^{-T * 2*eps/(1+eps)}.
double gamma_bound(double rate, int horizon, double epsilon);

// Re-expresses a per-period rate at a finer granularity:
// (1+r)^{1/periods_per_target} - 1.
double convert_rate(double rate, double periods_per_target);

}  // namespace geomsched

#endif
