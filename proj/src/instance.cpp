#include "geomsched/instance.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace geomsched {

std::string to_string(Semantics s) {
    return s == Semantics::Cumulative ? "cumulative" : "renewable";
}

Semantics semantics_from_string(const std::string& s) {
    if (s == "cumulative") return Semantics::Cumulative;
    if (s == "renewable") return Semantics::Renewable;
    throw ParamError("unknown semantics '" + s +
                     "' (expected 'cumulative' or 'renewable')");
}

std::string to_string(SolverStatus s) {
    switch (s) {
        case SolverStatus::Optimal: return "Optimal";
        case SolverStatus::Feasible: return "Feasible";
        case SolverStatus::TimeLimit: return "TimeLimit";
        case SolverStatus::Infeasible: return "Infeasible";
        case SolverStatus::Error: return "Error";
    }
    return "Error";
}

double ResourceProfile::available(int t) const {
    if (t < 1) return 0.0;
    if (is_constant()) return constant_rate();
    const auto& v = vector_values();
    if (v.empty()) return 0.0;
    if (t > static_cast<int>(v.size())) return v.back();
    return v[static_cast<size_t>(t) - 1];
}

double ResourceProfile::cumulative_available(int t) const {
    if (t < 1) return 0.0;
    if (is_constant()) return constant_rate() * t;
    const auto& v = vector_values();
    if (v.empty()) return 0.0;
    double sum = 0.0;
    int n = static_cast<int>(v.size());
    for (int u = 1; u <= std::min(t, n); ++u) sum += v[static_cast<size_t>(u) - 1];
    if (t > n) sum += v.back() * (t - n);
    return sum;
}

int Instance::job_index(int id) const {
    if (index_.size() != jobs.size()) {
        index_.clear();
        for (int i = 0; i < num_jobs(); ++i) index_[jobs[static_cast<size_t>(i)].id] = i;
    }
    auto it = index_.find(id);
    return it == index_.end() ? -1 : it->second;
}

const Job& Instance::job(int id) const {
    int i = job_index(id);
    if (i < 0) throw StructuralError("unknown job id " + std::to_string(id));
    return jobs[static_cast<size_t>(i)];
}

void Instance::rebuild_index() {
    index_.clear();
    for (int i = 0; i < num_jobs(); ++i) index_[jobs[static_cast<size_t>(i)].id] = i;
}

namespace {

// Returns one cycle as a job-id list if the precedence graph has any.
std::optional<std::vector<int>> find_cycle(const Instance& inst) {
    enum { White, Gray, Black };
    std::unordered_map<int, int> color;
    std::unordered_map<int, int> parent;
    for (const auto& j : inst.jobs) color[j.id] = White;

    // Iterative DFS over arcs job -> pred.
    for (const auto& root : inst.jobs) {
        if (color[root.id] != White) continue;
        std::vector<std::pair<int, size_t>> stack;
        stack.push_back({root.id, 0});
        color[root.id] = Gray;
        while (!stack.empty()) {
            auto& [id, next] = stack.back();
            int idx = inst.job_index(id);
            if (idx < 0) { stack.pop_back(); continue; }
            const auto& preds = inst.jobs[static_cast<size_t>(idx)].preds;
            if (next >= preds.size()) {
                color[id] = Black;
                stack.pop_back();
                continue;
            }
            int k = preds[next++];
            if (inst.job_index(k) < 0) continue;  // dangling, reported separately
            if (color[k] == Gray) {
                // Recover the cycle from the stack.
                std::vector<int> cycle;
                cycle.push_back(k);
                for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
                    if (it->first == k) break;
                    cycle.push_back(it->first);
                }
                std::reverse(cycle.begin(), cycle.end());
                return cycle;
            }
            if (color[k] == White) {
                color[k] = Gray;
                stack.push_back({k, 0});
            }
        }
    }
    return std::nullopt;
}

}  // namespace

ValidationReport validate_instance(const Instance& inst) {
    ValidationReport report;
    auto add = [&report](const std::string& v) { report.violations.push_back(v); };

    if (inst.horizon < 1) add("horizon must be >= 1, got " + std::to_string(inst.horizon));
    if (inst.rate < 0.0) add("discount rate must be >= 0, got " + std::to_string(inst.rate));

    const int K = inst.num_resources();
    std::set<int> seen_jobs;
    for (const auto& j : inst.jobs) {
        std::string tag = "job " + std::to_string(j.id);
        if (j.id < 0) add(tag + ": id must be >= 0");
        if (!seen_jobs.insert(j.id).second) add(tag + ": duplicate id");
        if (j.processing_time < 0) add(tag + ": negative processing time");
        if (static_cast<int>(j.demands.size()) != K)
            add(tag + ": demands length " + std::to_string(j.demands.size()) +
                " does not match resource count " + std::to_string(K));
        for (size_t k = 0; k < j.demands.size(); ++k)
            if (j.demands[k] < 0.0)
                add(tag + ": negative demand for resource index " + std::to_string(k));
        std::set<int> seen_preds;
        for (int p : j.preds) {
            if (p == j.id) add("self-precedence at job " + std::to_string(j.id));
            else if (inst.job_index(p) < 0)
                add(tag + ": dangling predecessor id " + std::to_string(p));
            if (!seen_preds.insert(p).second)
                add(tag + ": duplicate predecessor id " + std::to_string(p));
        }
    }

    std::set<int> seen_res;
    for (const auto& r : inst.resources) {
        std::string tag = "resource " + std::to_string(r.id());
        if (!seen_res.insert(r.id()).second) add(tag + ": duplicate id");
        if (r.is_constant()) {
            if (r.constant_rate() < 0.0) add(tag + ": negative availability rate");
        } else {
            if (static_cast<int>(r.vector_values().size()) != inst.horizon)
                add(tag + ": availability vector length " +
                    std::to_string(r.vector_values().size()) + " does not match horizon " +
                    std::to_string(inst.horizon));
            for (double v : r.vector_values())
                if (v < 0.0) { add(tag + ": negative availability value"); break; }
        }
    }

    if (auto cycle = find_cycle(inst)) {
        std::ostringstream os;
        os << "precedence cycle [";
        for (size_t i = 0; i < cycle->size(); ++i) {
            if (i) os << ",";
            os << (*cycle)[i];
        }
        os << "]";
        add(os.str());
    }

    return report;
}

}  // namespace geomsched
