// Solving MipModels: an external MIP solver through a file-exchange
// subprocess contract, and a built-in exhaustive search used as a
// desk-scale oracle.
#ifndef GEOMSCHED_SOLVER_HPP
#define GEOMSCHED_SOLVER_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "geomsched/instance.hpp"
#include "geomsched/interval_grid.hpp"
#include "geomsched/mip_builder.hpp"
#include "geomsched/mip_model.hpp"

namespace geomsched {

struct SolverConfig {
    // Shell command with {model} and {solution} placeholders; {time_limit}
    // and {mip_gap} are substituted when present.
    std::string command_template;
    double time_limit_s = 600.0;
    double mip_gap = 0.0;
};

struct MipSolution {
    SolverStatus status = SolverStatus::Error;
    std::map<std::string, double> values;  // var name -> 0/1
    double objective = 0.0;                // recomputed from the model
    std::string message;                   // solver output on errors
};

// Writes the LP file, runs the command, and parses the solution file (one
// "name value" pair per line). The objective is recomputed from the model.
// Exit codes: 0 optimal, 2 infeasible, 3 stopped at the time limit; anything
// else is an error and the temp directory is kept for postmortem.
MipSolution solve_external(const MipModel& model, const SolverConfig& cfg);

// Exhaustive search over all job -> period (or interval) assignments, pruned
// by precedence and partial resource usage. Refuses instances beyond
// N <= 8 and T <= 14 (period-level) or T_I <= 8 (interval-level). Ties are
// broken toward the lexicographically smallest assignment in job-id order.
MipSolution solve_bruteforce(const Instance& inst, Formulation kind,
                             const IntervalGrid* grid = nullptr);

// Enumeration hooks used by property tests: the callback receives every
// feasible schedule exactly once. Bounds as in solve_bruteforce.
void enumerate_feasible_at(const Instance& inst,
                           const std::function<void(const AtSchedule&)>& yield);
void enumerate_feasible_agg(const Instance& inst, const IntervalGrid& grid,
                            const std::function<void(const AggSchedule&)>& yield);

}  // namespace geomsched

#endif
