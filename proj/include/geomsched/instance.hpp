// Core domain types: jobs, resources, instances, schedules, solve reports.
#ifndef GEOMSCHED_INSTANCE_HPP
#define GEOMSCHED_INSTANCE_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

namespace geomsched {

// Thrown on malformed parameters (epsilon <= 0, rate <= -1, ...).
struct ParamError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown on structurally broken inputs (cycles, dangling ids, bad files).
struct StructuralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Semantics { Cumulative, Renewable };

std::string to_string(Semantics s);
Semantics semantics_from_string(const std::string& s);

struct Job {
    int id = 0;                    // >= 0, unique within the instance
    int processing_time = 1;       // periods; 0 only for dummy source/sink jobs
    double profit = 0.0;           // collected at completion, any sign
    std::vector<double> demands;   // one entry per resource, >= 0
    std::vector<int> preds;        // ids of jobs that must finish before this starts
};

// Per-period availability. Constant rates cover PSPLib; vectors cover
// time-varying supply. Periods are 1-based; queries past the horizon
// extend the profile (constant rate, or the last vector value).
class ResourceProfile {
public:
    ResourceProfile() : id_(0), availability_(0.0) {}
    ResourceProfile(int id, double constant_rate)
        : id_(id), availability_(constant_rate) {}
    ResourceProfile(int id, std::vector<double> per_period)
        : id_(id), availability_(std::move(per_period)) {}

    int id() const { return id_; }
    bool is_constant() const {
        return std::holds_alternative<double>(availability_);
    }
    double constant_rate() const { return std::get<double>(availability_); }
    const std::vector<double>& vector_values() const {
        return std::get<std::vector<double>>(availability_);
    }

    // Fresh supply arriving at period t (t >= 1).
    double available(int t) const;
    // Sum of available(u) for u = 1..t.
    double cumulative_available(int t) const;

private:
    int id_;
    std::variant<double, std::vector<double>> availability_;
};

struct Instance {
    std::vector<Job> jobs;
    std::vector<ResourceProfile> resources;
    int horizon = 1;       // T, periods 1..T
    double rate = 0.0;     // per-period discount rate r >= 0
    Semantics semantics = Semantics::Cumulative;

    int num_jobs() const { return static_cast<int>(jobs.size()); }
    int num_resources() const { return static_cast<int>(resources.size()); }

    // Index of a job id within jobs, or -1.
    int job_index(int id) const;
    const Job& job(int id) const;

    void rebuild_index();

private:
    mutable std::unordered_map<int, int> index_;
};

// A period-level schedule: job id -> completion period. Jobs absent from
// the map are unscheduled. t_ext records the horizon the schedule was
// built against (>= instance horizon after disaggregation).
struct AtSchedule {
    std::map<int, int> completion;
    int t_ext = 0;

    bool scheduled(int job_id) const { return completion.count(job_id) > 0; }
    std::optional<int> completion_of(int job_id) const {
        auto it = completion.find(job_id);
        if (it == completion.end()) return std::nullopt;
        return it->second;
    }
};

// An interval-level schedule: job id -> interval index (0..T_I).
struct AggSchedule {
    std::map<int, int> interval;

    bool scheduled(int job_id) const { return interval.count(job_id) > 0; }
    std::optional<int> interval_of(int job_id) const {
        auto it = interval.find(job_id);
        if (it == interval.end()) return std::nullopt;
        return it->second;
    }
};

enum class SolverStatus { Optimal, Feasible, TimeLimit, Infeasible, Error };

std::string to_string(SolverStatus s);

struct SolveReport {
    double npv = 0.0;
    double npv_hat_ub = 0.0;
    std::optional<double> gap_pct;  // empty when npv <= 0 (undefined)
    double gamma = 1.0;
    SolverStatus solver_status = SolverStatus::Error;
    std::map<std::string, double> wall_times;  // phase -> seconds
    bool beyond_horizon = false;  // some completion exceeds the instance horizon
    std::vector<int> dropped_jobs;  // renewable drop policy casualties
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Checks type invariants and precedence-graph acyclicity. Violations are
// data, not failures; callers decide what to do with them.
ValidationReport validate_instance(const Instance& inst);

}  // namespace geomsched

#endif
