// Rebuilds a feasible period-level schedule from an interval-level one by
// prioritized topological assignment to earliest feasible periods.
#ifndef GEOMSCHED_RECONSTRUCT_HPP
#define GEOMSCHED_RECONSTRUCT_HPP

#include <vector>

#include "geomsched/instance.hpp"
#include "geomsched/interval_grid.hpp"

namespace geomsched {

// Under renewable semantics a job's demand can exceed every period's
// capacity, making it unplaceable. DropJob (default) unschedules it and its
// dependents; Fail throws.
enum class UnplaceablePolicy { DropJob, Fail };

struct DisaggregateResult {
    AtSchedule schedule;
    std::vector<int> dropped;     // jobs removed under the DropJob policy
    bool beyond_horizon = false;  // some completion exceeds the instance horizon
};

// Walks intervals in order; within them, jobs come off a min-heap keyed by
// (assigned interval, -profit, id) as their predecessors complete. Each job
// starts at max(floor(tau_{s-1}) + 1, C_k + p_j over direct predecessors) and
// advances one period at a time while the occupied window lacks resources.
// The input must pass the aggregated feasibility check.
DisaggregateResult disaggregate(const AggSchedule& agg, const Instance& inst,
                                const IntervalGrid& grid,
                                UnplaceablePolicy policy = UnplaceablePolicy::DropJob);

// Extended horizon used by disaggregation: completions may exceed T by up to
// the final interval's length, ceil(tau_{T_I} * (1+2eps)/(1+eps)).
int extended_horizon(const IntervalGrid& grid);

}  // namespace geomsched

#endif
