// Solver-agnostic binary linear models plus LP-format serialization.
#ifndef GEOMSCHED_MIP_MODEL_HPP
#define GEOMSCHED_MIP_MODEL_HPP

#include <string>
#include <unordered_map>
#include <vector>

namespace geomsched {

enum class Relation { LessEqual, Equal };

struct MipVar {
    std::string name;
    int job = -1;     // metadata: owning job id, -1 for free-standing vars
    int period = -1;  // metadata: period or interval index
};

struct LinTerm {
    int var = 0;  // index into MipModel::vars
    double coef = 0.0;
};

struct LinConstraint {
    std::string name;
    std::vector<LinTerm> terms;
    Relation rel = Relation::LessEqual;
    double rhs = 0.0;
};

// Maximization model over binary variables.
struct MipModel {
    std::vector<MipVar> vars;
    std::vector<LinTerm> objective;
    std::vector<LinConstraint> constraints;

    int add_var(const std::string& name, int job = -1, int period = -1);
    int var_index(const std::string& name) const;           // -1 if absent
    int var_index(int job, int period) const;                // -1 if absent

    double objective_value(const std::vector<double>& point) const;
    // True when every constraint row holds at the binary point (1e-9 slack).
    bool satisfied(const std::vector<double>& point) const;

private:
    std::unordered_map<std::string, int> by_name_;
    std::unordered_map<long long, int> by_job_period_;
};

// Emits LP format text (Maximize / Subject To / Bounds / Binaries / End)
// with coefficients at 12 significant digits and deterministic ordering.
// Throws StructuralError on non-finite coefficients.
std::string write_lp(const MipModel& model);

// Parses the LP subset produced by write_lp. Round-trips the model.
MipModel parse_lp(const std::string& text);

}  // namespace geomsched

#endif
