// Exact objective evaluation and feasibility certification for both schedule
// spaces. Deliberately independent of the model builders: these simulate
// resource ledgers directly so they can catch model-construction bugs.
#ifndef GEOMSCHED_EVALUATE_HPP
#define GEOMSCHED_EVALUATE_HPP

#include <optional>
#include <string>
#include <vector>

#include "geomsched/instance.hpp"
#include "geomsched/interval_grid.hpp"
#include "geomsched/prec_graph.hpp"

namespace geomsched {

struct FeasibilityViolation {
    std::string kind;   // "completion", "precedence", "resource", "interval"
    int job = -1;       // offending job (or -1)
    int resource = -1;  // offending resource (or -1)
    int period = -1;    // period or interval index
    double slack = 0.0; // negative amount by which the constraint fails
    std::string detail;
};

struct FeasibilityReport {
    std::vector<FeasibilityViolation> violations;
    bool feasible() const { return violations.empty(); }
};

// Net present value sum f_j / (1+r)^{C_j} over scheduled jobs.
double npv(const AtSchedule& sched, const Instance& inst);

// Aggregated objective: positive profits discounted at interval starts,
// negative at interval ends.
double npv_hat(const AggSchedule& agg, const Instance& inst, const IntervalGrid& grid);

// Verifies completion lower bounds, predecessor gaps, and the per-period
// resource inequality under the instance's semantics. Periods beyond the
// instance horizon use the extended availability profile.
FeasibilityReport check_feasible_at(const AtSchedule& sched, const Instance& inst);

// Verifies interval assignments against the aggregated constraint set:
// earliest-interval bounds, closure precedence with longest-path spans, and
// the aggregated resource rows for the instance's semantics.
FeasibilityReport check_feasible_agg(const AggSchedule& agg, const Instance& inst,
                                     const IntervalGrid& grid, const DeltaMatrix& delta);

// Interval image of a period-level schedule: s = I(C_j).
AggSchedule lift_to_agg(const AtSchedule& sched, const IntervalGrid& grid);

// Optimality gap percentage 100 * (ub - value) / value, undefined for
// value <= 0.
std::optional<double> gap(double npv_value, double npv_hat_ub);

}  // namespace geomsched

#endif
