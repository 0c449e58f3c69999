#include "geomsched/evaluate.hpp"

#include <algorithm>
#include <cmath>

namespace geomsched {

double npv(const AtSchedule& sched, const Instance& inst) {
    double total = 0.0;
    for (const auto& j : inst.jobs) {
        auto c = sched.completion_of(j.id);
        if (!c) continue;
        total += j.profit * std::pow(1.0 + inst.rate, -static_cast<double>(*c));
    }
    return total;
}

double npv_hat(const AggSchedule& agg, const Instance& inst, const IntervalGrid& grid) {
    double total = 0.0;
    for (const auto& j : inst.jobs) {
        auto s = agg.interval_of(j.id);
        if (!s || j.profit == 0.0) continue;
        double t = j.profit > 0.0 ? grid.interval_start_time(*s)
                                  : grid.interval_end_time(*s);
        total += j.profit * std::pow(1.0 + inst.rate, -t);
    }
    return total;
}

FeasibilityReport check_feasible_at(const AtSchedule& sched, const Instance& inst) {
    FeasibilityReport report;
    auto violate = [&report](FeasibilityViolation v) {
        report.violations.push_back(std::move(v));
    };

    int t_max = 0;
    for (const auto& j : inst.jobs) {
        auto c = sched.completion_of(j.id);
        if (!c) continue;
        t_max = std::max(t_max, *c);
        int min_c = std::max(j.processing_time, 1);
        if (*c < min_c)
            violate({"completion", j.id, -1, *c, static_cast<double>(*c - min_c),
                     "job " + std::to_string(j.id) + " finishes before period " +
                         std::to_string(min_c)});
        for (int k : j.preds) {
            auto ck = sched.completion_of(k);
            if (!ck) {
                violate({"precedence", j.id, -1, *c, -1.0,
                         "job " + std::to_string(j.id) + " scheduled but predecessor " +
                             std::to_string(k) + " is not"});
                continue;
            }
            if (*ck > *c - j.processing_time)
                violate({"precedence", j.id, -1, *c,
                         static_cast<double>(*c - j.processing_time - *ck),
                         "job " + std::to_string(j.id) + " at " + std::to_string(*c) +
                             " needs predecessor " + std::to_string(k) + " by " +
                             std::to_string(*c - j.processing_time)});
        }
    }

    for (int k = 0; k < inst.num_resources(); ++k) {
        const auto& res = inst.resources[static_cast<size_t>(k)];
        for (int t = 1; t <= t_max; ++t) {
            double used = 0.0;
            for (const auto& j : inst.jobs) {
                auto c = sched.completion_of(j.id);
                if (!c || j.processing_time == 0) continue;
                double q = j.demands[static_cast<size_t>(k)];
                if (q <= 0.0) continue;
                int start = *c - j.processing_time + 1;
                if (inst.semantics == Semantics::Cumulative) {
                    if (start <= t)
                        used += q * (j.processing_time - std::max(0, *c - t));
                } else {
                    if (start <= t && t <= *c) used += q;
                }
            }
            double avail = inst.semantics == Semantics::Cumulative
                               ? res.cumulative_available(t)
                               : res.available(t);
            if (used > avail + 1e-9)
                violate({"resource", -1, res.id(), t, avail - used,
                         "resource " + std::to_string(res.id()) + " over capacity at period " +
                             std::to_string(t)});
        }
    }

    return report;
}

FeasibilityReport check_feasible_agg(const AggSchedule& agg, const Instance& inst,
                                     const IntervalGrid& grid, const DeltaMatrix& delta) {
    FeasibilityReport report;
    auto violate = [&report](FeasibilityViolation v) {
        report.violations.push_back(std::move(v));
    };
    const int T_I = grid.num_intervals();

    for (const auto& j : inst.jobs) {
        auto s = agg.interval_of(j.id);
        if (!s) continue;
        if (*s < 0 || *s > T_I) {
            violate({"interval", j.id, -1, *s, 0.0,
                     "job " + std::to_string(j.id) + " assigned outside the grid"});
            continue;
        }
        // Earliest completion the job could have at all.
        long long lo = std::max<long long>(1, j.processing_time);
        for (const auto& [k, span] : delta.row(j.id))
            lo = std::max(lo, static_cast<long long>(span) + 1);
        long long first = grid.first_period_in(*s);
        if (first == 0) {
            violate({"interval", j.id, -1, *s, 0.0,
                     "interval " + std::to_string(*s) + " contains no integer period"});
            continue;
        }
        if (grid.last_period_in(*s) < lo)
            violate({"interval", j.id, -1, *s,
                     static_cast<double>(grid.last_period_in(*s) - lo),
                     "job " + std::to_string(j.id) + " cannot finish by interval " +
                         std::to_string(*s)});

        for (const auto& [k, span] : delta.row(j.id)) {
            auto sk = agg.interval_of(k);
            if (!sk) {
                violate({"precedence", j.id, -1, *s, -1.0,
                         "job " + std::to_string(j.id) + " scheduled but predecessor " +
                             std::to_string(k) + " is not"});
                continue;
            }
            int limit = grid.interval_of(grid.tau(*s) - static_cast<double>(span));
            if (*sk > limit)
                violate({"precedence", j.id, -1, *s, static_cast<double>(limit - *sk),
                         "job " + std::to_string(j.id) + " in interval " + std::to_string(*s) +
                             " needs predecessor " + std::to_string(k) + " by interval " +
                             std::to_string(limit)});
        }
    }

    for (int k = 0; k < inst.num_resources(); ++k) {
        const auto& res = inst.resources[static_cast<size_t>(k)];
        for (int t = 0; t <= T_I; ++t) {
            if (inst.semantics == Semantics::Cumulative) {
                // Everything consumed through tau_t, running jobs partially.
                double tau_t = grid.tau(t);
                double used = 0.0;
                for (const auto& j : inst.jobs) {
                    auto u = agg.interval_of(j.id);
                    if (!u || j.processing_time == 0) continue;
                    double q = j.demands[static_cast<size_t>(k)];
                    if (q <= 0.0) continue;
                    double amount = j.processing_time - std::max(0.0, grid.tau(*u) - tau_t);
                    if (amount > 0.0) used += q * amount;
                }
                double avail = res.cumulative_available(static_cast<int>(std::ceil(tau_t)));
                if (used > avail + 1e-9)
                    violate({"resource", -1, res.id(), t, avail - used,
                             "resource " + std::to_string(res.id()) +
                                 " over capacity through interval " + std::to_string(t)});
                continue;
            }

            // Renewable: prefix consumption over the integer periods ending at
            // the interval, plus the guaranteed overlap with the interval's
            // own periods.
            long long first = static_cast<long long>(std::floor(grid.tau(t - 1))) + 1;
            long long last = grid.last_period_in(t);
            if (last < first) continue;
            double prefix_used = 0.0, peak_used = 0.0;
            for (const auto& j : inst.jobs) {
                auto u = agg.interval_of(j.id);
                if (!u || j.processing_time == 0) continue;
                double q = j.demands[static_cast<size_t>(k)];
                if (q <= 0.0) continue;
                long long p = j.processing_time;
                long long last_u = grid.last_period_in(*u);
                long long by_end = p - std::max<long long>(0, last_u - last);
                if (by_end > 0) prefix_used += q * static_cast<double>(by_end);
                if (*u < t) continue;
                long long overlap =
                    *u == t ? 1 : last - std::max(last_u - p + 1, first) + 1;
                if (overlap > 0) peak_used += q * static_cast<double>(overlap);
            }
            double prefix_avail = res.cumulative_available(static_cast<int>(last));
            double peak_avail = prefix_avail -
                                res.cumulative_available(static_cast<int>(first) - 1);
            if (prefix_used > prefix_avail + 1e-9)
                violate({"resource", -1, res.id(), t, prefix_avail - prefix_used,
                         "resource " + std::to_string(res.id()) +
                             " over cumulative capacity by interval " + std::to_string(t)});
            if (peak_used > peak_avail + 1e-9)
                violate({"resource", -1, res.id(), t, peak_avail - peak_used,
                         "resource " + std::to_string(res.id()) +
                             " over capacity inside interval " + std::to_string(t)});
        }
    }

    return report;
}

AggSchedule lift_to_agg(const AtSchedule& sched, const IntervalGrid& grid) {
    AggSchedule agg;
    for (const auto& [job, c] : sched.completion)
        agg.interval[job] = grid.interval_of(static_cast<double>(c));
    return agg;
}

std::optional<double> gap(double npv_value, double npv_hat_ub) {
    if (npv_value <= 0.0) return std::nullopt;
    return 100.0 * (npv_hat_ub - npv_value) / npv_value;
}

}  // namespace geomsched
