// End-to-end runs: preprocess, build, solve, reconstruct, evaluate; plus the
// batch benchmark harness.
#ifndef GEOMSCHED_PIPELINE_HPP
#define GEOMSCHED_PIPELINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "geomsched/instance.hpp"
#include "geomsched/mip_builder.hpp"
#include "geomsched/reconstruct.hpp"
#include "geomsched/solver.hpp"

namespace geomsched {

struct PreprocessConfig {
    std::optional<int> horizon_limit;        // drop jobs finishing after this
    std::optional<double> nested_pit_alpha;  // max-closure scaling in [0,1]
};

struct RunConfig {
    double epsilon = 1.0;
    std::optional<double> rate;            // overrides the instance rate
    std::optional<Semantics> semantics;    // overrides the instance semantics
    Formulation formulation = Formulation::AggAt;
    SolverConfig solver;  // empty command template selects the built-in search
    double profit_default = 1.0;  // profit assigned to non-dummy PSPLib jobs
    PreprocessConfig preprocess;
    UnplaceablePolicy unplaceable = UnplaceablePolicy::DropJob;
};

struct PipelineResult {
    SolveReport report;
    AtSchedule schedule;       // disaggregated (or direct) period schedule
    AggSchedule agg_schedule;  // interval assignment for aggregated runs
    std::vector<int> preprocessed_out;  // jobs removed before modeling
};

PipelineResult run_pipeline(const RunConfig& cfg, const Instance& inst);

struct BenchRow {
    std::string instance;
    double epsilon = 0.0;
    std::string semantics;
    std::string status;
    double solve_seconds = 0.0;
    double npv = 0.0;
    double npv_hat_ub = 0.0;
    std::optional<double> gap_pct;
    double gamma = 1.0;
};

struct BenchSummary {
    int rows = 0;
    int solved = 0;
    double avg_solve_seconds = 0.0;  // over solved rows
    double avg_gap_pct = 0.0;        // over rows with a defined gap
};

struct BenchResult {
    std::vector<BenchRow> rows;  // sorted by (instance, epsilon)
    BenchSummary summary;
};

// Runs every (instance file, epsilon) pair, up to `threads` concurrently.
// Per-instance failures become rows with status Error; the run continues.
BenchResult bench(const RunConfig& cfg, const std::vector<std::string>& instance_paths,
                  const std::vector<double>& epsilons, int threads = 1);

std::string bench_csv(const BenchResult& result);
BenchResult parse_bench_csv(const std::string& text);
std::string bench_json(const BenchResult& result);

// Reads an instance by extension: .sm via the PSPLib reader (with the given
// profit default and rate), anything else as JSON.
Instance load_instance(const std::string& path, double profit_default, double rate,
                       Semantics semantics);

}  // namespace geomsched

#endif
