// Builders for the three time-indexed formulations, each under cumulative or
// renewable resource semantics (taken from the instance).
#ifndef GEOMSCHED_MIP_BUILDER_HPP
#define GEOMSCHED_MIP_BUILDER_HPP

#include <map>
#include <string>

#include "geomsched/instance.hpp"
#include "geomsched/interval_grid.hpp"
#include "geomsched/mip_model.hpp"
#include "geomsched/prec_graph.hpp"

namespace geomsched {

enum class Formulation { OrigAt, AggAt, AggBy };

std::string to_string(Formulation f);
Formulation formulation_from_string(const std::string& s);

// Period-level model: binaries x_{j,t} = 1 iff job j finishes at period t.
// Variables with t < p_j are omitted. Precedence rows use the transitive
// reduction of the instance's precedence arcs.
MipModel build_orig_at(const Instance& inst);

// Interval-level model over the geometric grid: X_{j,s} = 1 iff job j
// finishes during interval s (0..T_I). A variable exists only when its
// interval contains an integer period no smaller than the job's earliest
// possible completion (processing time, and 1 + the longest predecessor
// span). Precedence rows come from the per-interval modified transitive
// reduction. Positive profits are discounted at interval starts, negative
// ones at interval ends.
MipModel build_agg_at(const Instance& inst, const IntervalGrid& grid,
                      const DeltaMatrix& delta);

// Change of variables Y_{j,s} = "finished by end of interval s". Same
// feasible set and objective as build_agg_at through X = deltaY; precedence
// becomes single-variable dominance rows Y_jt <= Y_{k,limit}.
MipModel build_agg_by(const Instance& inst, const IntervalGrid& grid,
                      const DeltaMatrix& delta);

// Reads a 0/1 solution back into schedule form. values maps variable name
// to its binary value; missing names count as 0.
AtSchedule at_schedule_from_solution(const MipModel& model,
                                     const std::map<std::string, double>& values);
AggSchedule agg_schedule_from_solution(const MipModel& model,
                                       const std::map<std::string, double>& values,
                                       Formulation kind);

}  // namespace geomsched

#endif
