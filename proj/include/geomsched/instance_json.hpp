// JSON serialization for instances and schedules.
#ifndef GEOMSCHED_INSTANCE_JSON_HPP
#define GEOMSCHED_INSTANCE_JSON_HPP

#include <string>

#include "geomsched/instance.hpp"

namespace geomsched {

// Schema: {T, rate, semantics, resources: [{id, availability: number|[..]}],
// jobs: [{id, p, profit, demands: [..], preds: [..]}]}. Missing preds
// default to none. Errors carry a JSON-pointer-style path.
Instance parse_instance_json(const std::string& text);
std::string write_instance_json(const Instance& inst);

// Schedule files: {"completion": {"<job id>": period, ...}, "t_ext": n}.
AtSchedule parse_at_schedule_json(const std::string& text);
std::string write_at_schedule_json(const AtSchedule& sched);

// Interval assignments: {"interval": {"<job id>": s, ...}}.
AggSchedule parse_agg_schedule_json(const std::string& text);
std::string write_agg_schedule_json(const AggSchedule& agg);

}  // namespace geomsched

#endif
