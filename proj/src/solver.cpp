#include "geomsched/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include <sys/wait.h>

#include "geomsched/evaluate.hpp"

namespace geomsched {

namespace {

namespace fs = std::filesystem;

std::string substitute(std::string text, const std::string& key, const std::string& value) {
    size_t pos;
    while ((pos = text.find(key)) != std::string::npos)
        text.replace(pos, key.size(), value);
    return text;
}

fs::path make_temp_dir() {
    auto base = fs::temp_directory_path();
    std::random_device rd;
    std::mt19937_64 gen(rd());
    for (int attempt = 0; attempt < 64; ++attempt) {
        auto dir = base / ("geomsched-" + std::to_string(gen()));
        std::error_code ec;
        if (fs::create_directory(dir, ec)) return dir;
    }
    throw StructuralError("could not create a temporary solver directory");
}

struct CommandResult {
    int exit_code = -1;
    std::string output;
};

CommandResult run_command(const std::string& cmd) {
    CommandResult result;
    FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
    if (!pipe) throw StructuralError("failed to launch solver command: " + cmd);
    char buf[4096];
    while (size_t n = fread(buf, 1, sizeof(buf), pipe)) result.output.append(buf, n);
    int status = pclose(pipe);
    if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
    return result;
}

std::string format_double(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

MipSolution solve_external(const MipModel& model, const SolverConfig& cfg) {
    if (cfg.command_template.find("{model}") == std::string::npos ||
        cfg.command_template.find("{solution}") == std::string::npos)
        throw ParamError("solver command template must contain {model} and {solution}");

    MipSolution sol;
    auto dir = make_temp_dir();
    auto model_path = dir / "model.lp";
    auto solution_path = dir / "solution.txt";
    {
        std::ofstream out(model_path);
        out << write_lp(model);
    }

    std::string cmd = cfg.command_template;
    cmd = substitute(cmd, "{model}", model_path.string());
    cmd = substitute(cmd, "{solution}", solution_path.string());
    cmd = substitute(cmd, "{time_limit}", format_double(cfg.time_limit_s));
    cmd = substitute(cmd, "{mip_gap}", format_double(cfg.mip_gap));

    auto run = run_command(cmd);
    bool have_solution = fs::exists(solution_path);

    auto fail = [&](const std::string& why) {
        sol.status = SolverStatus::Error;
        sol.message = why + " (inputs kept at " + dir.string() + ")\n" + run.output;
        return sol;
    };

    if (run.exit_code != 0 && run.exit_code != 2 && run.exit_code != 3)
        return fail("solver exited with code " + std::to_string(run.exit_code));
    if (run.exit_code == 2) {
        sol.status = SolverStatus::Infeasible;
        fs::remove_all(dir);
        return sol;
    }
    if (run.exit_code == 0 && !have_solution)
        return fail("solver reported success but wrote no solution file");

    if (have_solution) {
        std::ifstream in(solution_path);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::istringstream ls(line);
            std::string name;
            double value;
            if (!(ls >> name)) continue;  // blank line
            if (name[0] == '#') continue;
            if (!(ls >> value))
                return fail("unparsable solution line " + std::to_string(lineno) + ": '" +
                            line + "'");
            if (model.var_index(name) < 0)
                return fail("solution line " + std::to_string(lineno) +
                            " names unknown variable '" + name + "'");
            double nearest = std::round(value);
            if ((nearest != 0.0 && nearest != 1.0) || std::abs(value - nearest) > 1e-4)
                return fail("solution line " + std::to_string(lineno) +
                            " has non-binary value " + format_double(value));
            sol.values[name] = nearest;
        }
    }

    std::vector<double> point(model.vars.size(), 0.0);
    for (const auto& [name, v] : sol.values)
        point[static_cast<size_t>(model.var_index(name))] = v;
    sol.objective = model.objective_value(point);
    sol.status = run.exit_code == 0
                     ? SolverStatus::Optimal
                     : (have_solution ? SolverStatus::Feasible : SolverStatus::TimeLimit);
    fs::remove_all(dir);
    return sol;
}

namespace {

// Shared state for the period-level exhaustive search.
struct AtSearch {
    const Instance& inst;
    std::vector<int> order;                 // job ids, predecessors first
    std::map<int, int> completion;          // partial assignment
    std::vector<std::vector<double>> load;  // [resource][period 1..T] consumption
    const std::function<void(const AtSchedule&)>& yield;

    AtSearch(const Instance& i, const std::function<void(const AtSchedule&)>& y)
        : inst(i), yield(y) {
        order = PrecGraph::from_instance(inst).topological();
        std::reverse(order.begin(), order.end());  // predecessors first
        load.assign(static_cast<size_t>(inst.num_resources()),
                    std::vector<double>(static_cast<size_t>(inst.horizon) + 1, 0.0));
    }

    bool resources_ok(const Job& j, int c) const {
        if (j.processing_time == 0) return true;
        int start = c - j.processing_time + 1;
        for (int k = 0; k < inst.num_resources(); ++k) {
            double q = j.demands[static_cast<size_t>(k)];
            if (q <= 0.0) continue;
            const auto& res = inst.resources[static_cast<size_t>(k)];
            if (inst.semantics == Semantics::Renewable) {
                for (int t = start; t <= c; ++t)
                    if (load[static_cast<size_t>(k)][static_cast<size_t>(t)] + q >
                        res.available(t) + 1e-9)
                        return false;
            } else {
                // Prefix consumption with the candidate placement added on top.
                double prefix = 0.0;
                for (int t = 1; t <= inst.horizon; ++t) {
                    prefix += load[static_cast<size_t>(k)][static_cast<size_t>(t)];
                    if (t < start) continue;
                    double added = q * std::min(j.processing_time, t - start + 1);
                    if (prefix + added > res.cumulative_available(t) + 1e-9)
                        return false;
                }
            }
        }
        return true;
    }

    void apply(const Job& j, int c, double sign) {
        if (j.processing_time == 0) return;
        int start = c - j.processing_time + 1;
        for (int k = 0; k < inst.num_resources(); ++k) {
            double q = j.demands[static_cast<size_t>(k)];
            if (q <= 0.0) continue;
            for (int t = start; t <= c; ++t)
                load[static_cast<size_t>(k)][static_cast<size_t>(t)] += sign * q;
        }
    }

    void search(size_t depth) {
        if (depth == order.size()) {
            AtSchedule sched;
            sched.completion = completion;
            sched.t_ext = inst.horizon;
            yield(sched);
            return;
        }
        const Job& j = inst.job(order[depth]);

        // Scheduling j requires every predecessor scheduled.
        int lb = std::max(j.processing_time, 1);
        bool preds_ok = true;
        for (int k : j.preds) {
            auto it = completion.find(k);
            if (it == completion.end()) {
                preds_ok = false;
                break;
            }
            lb = std::max(lb, it->second + j.processing_time);
        }
        if (preds_ok) {
            for (int c = lb; c <= inst.horizon; ++c) {
                if (!resources_ok(j, c)) continue;
                completion[j.id] = c;
                apply(j, c, 1.0);
                search(depth + 1);
                apply(j, c, -1.0);
                completion.erase(j.id);
            }
        }
        search(depth + 1);  // leave j unscheduled
    }
};

// Interval-level search. Domains follow the aggregated variable rule.
struct AggSearch {
    const Instance& inst;
    const IntervalGrid& grid;
    DeltaMatrix delta;
    std::vector<int> order;
    std::map<int, std::vector<int>> domain;
    std::map<int, int> assignment;
    std::vector<double> used;  // flattened [resource][family][interval]
    const std::function<void(const AggSchedule&)>& yield;

    AggSearch(const Instance& i, const IntervalGrid& g,
              const std::function<void(const AggSchedule&)>& y)
        : inst(i), grid(g), yield(y) {
        auto graph = PrecGraph::from_instance(inst);
        delta = longest_path_deltas(graph);
        order = graph.topological();
        std::reverse(order.begin(), order.end());
        for (const auto& j : inst.jobs) {
            long long lo = std::max<long long>(1, j.processing_time);
            for (const auto& [k, span] : delta.row(j.id))
                lo = std::max(lo, static_cast<long long>(span) + 1);
            auto& list = domain[j.id];
            for (int s = 0; s <= grid.num_intervals(); ++s) {
                if (grid.first_period_in(s) == 0) continue;
                if (grid.last_period_in(s) < lo) continue;
                list.push_back(s);
            }
        }
        used.assign(static_cast<size_t>(inst.num_resources() * 2) *
                        (static_cast<size_t>(grid.num_intervals()) + 1),
                    0.0);
    }

    // Two row families per interval: index 0 charges consumption through the
    // interval end (the only family under cumulative semantics), index 1 the
    // guaranteed overlap with the interval's own periods (renewable only).
    double contribution(const Job& j, int u, int k, int t, int family) const {
        double q = j.demands[static_cast<size_t>(k)];
        if (q <= 0.0 || j.processing_time == 0) return 0.0;
        if (inst.semantics == Semantics::Cumulative) {
            if (family != 0) return 0.0;
            double amount = j.processing_time - std::max(0.0, grid.tau(u) - grid.tau(t));
            return amount > 0.0 ? q * amount : 0.0;
        }
        long long first = static_cast<long long>(std::floor(grid.tau(t - 1))) + 1;
        long long last = grid.last_period_in(t);
        if (last < first) return 0.0;
        long long p = j.processing_time;
        long long last_u = grid.last_period_in(u);
        if (family == 0) {
            long long by_end = p - std::max<long long>(0, last_u - last);
            return by_end > 0 ? q * static_cast<double>(by_end) : 0.0;
        }
        if (u < t) return 0.0;
        long long overlap = u == t ? 1 : last - std::max(last_u - p + 1, first) + 1;
        return overlap > 0 ? q * static_cast<double>(overlap) : 0.0;
    }

    double capacity(int k, int t, int family) const {
        const auto& res = inst.resources[static_cast<size_t>(k)];
        if (inst.semantics == Semantics::Cumulative)
            return res.cumulative_available(static_cast<int>(std::ceil(grid.tau(t))));
        long long first = static_cast<long long>(std::floor(grid.tau(t - 1))) + 1;
        long long last = grid.last_period_in(t);
        if (last < first) return 0.0;
        if (family == 0) return res.cumulative_available(static_cast<int>(last));
        return res.cumulative_available(static_cast<int>(last)) -
               res.cumulative_available(static_cast<int>(first) - 1);
    }

    int families() const { return inst.semantics == Semantics::Cumulative ? 1 : 2; }

    bool resources_ok(const Job& j, int u) const {
        for (int k = 0; k < inst.num_resources(); ++k) {
            if (j.demands[static_cast<size_t>(k)] <= 0.0) continue;
            for (int t = 0; t <= grid.num_intervals(); ++t)
                for (int f = 0; f < families(); ++f) {
                    double add = contribution(j, u, k, t, f);
                    if (add > 0.0 &&
                        used[slot(k, t, f)] + add > capacity(k, t, f) + 1e-9)
                        return false;
                }
        }
        return true;
    }

    size_t slot(int k, int t, int family) const {
        return static_cast<size_t>((k * 2 + family) * (grid.num_intervals() + 1) + t);
    }

    void apply(const Job& j, int u, double sign) {
        for (int k = 0; k < inst.num_resources(); ++k)
            for (int t = 0; t <= grid.num_intervals(); ++t)
                for (int f = 0; f < families(); ++f)
                    used[slot(k, t, f)] += sign * contribution(j, u, k, t, f);
    }

    void search(size_t depth) {
        if (depth == order.size()) {
            AggSchedule sched;
            sched.interval = assignment;
            yield(sched);
            return;
        }
        const Job& j = inst.job(order[depth]);

        bool preds_ok = true;
        int ub = grid.num_intervals();
        // Precedence: every transitive predecessor scheduled early enough.
        const auto& row = delta.row(j.id);
        for (const auto& [k, span] : row) {
            auto it = assignment.find(k);
            if (it == assignment.end()) {
                preds_ok = false;
                break;
            }
        }
        if (preds_ok) {
            for (int s : domain[j.id]) {
                if (s > ub) break;
                bool prec_ok = true;
                for (const auto& [k, span] : row) {
                    int limit = grid.interval_of(grid.tau(s) - static_cast<double>(span));
                    if (assignment.at(k) > limit) {
                        prec_ok = false;
                        break;
                    }
                }
                if (!prec_ok || !resources_ok(j, s)) continue;
                assignment[j.id] = s;
                apply(j, s, 1.0);
                search(depth + 1);
                apply(j, s, -1.0);
                assignment.erase(j.id);
            }
        }
        search(depth + 1);
    }
};

void check_bruteforce_bounds(const Instance& inst, Formulation kind,
                             const IntervalGrid* grid) {
    if (inst.num_jobs() > 8)
        throw ParamError("brute force refuses more than 8 jobs");
    if (kind == Formulation::OrigAt) {
        if (inst.horizon > 14)
            throw ParamError("brute force refuses period horizons beyond 14");
    } else {
        if (!grid) throw ParamError("aggregated brute force requires a grid");
        if (grid->num_intervals() > 8)
            throw ParamError("brute force refuses interval grids beyond T_I = 8");
    }
}

}  // namespace

void enumerate_feasible_at(const Instance& inst,
                           const std::function<void(const AtSchedule&)>& yield) {
    check_bruteforce_bounds(inst, Formulation::OrigAt, nullptr);
    AtSearch search(inst, yield);
    search.search(0);
}

void enumerate_feasible_agg(const Instance& inst, const IntervalGrid& grid,
                            const std::function<void(const AggSchedule&)>& yield) {
    check_bruteforce_bounds(inst, Formulation::AggAt, &grid);
    AggSearch search(inst, grid, yield);
    search.search(0);
}

MipSolution solve_bruteforce(const Instance& inst, Formulation kind,
                             const IntervalGrid* grid) {
    check_bruteforce_bounds(inst, kind, grid);
    MipSolution best;
    best.status = SolverStatus::Optimal;
    best.objective = 0.0;

    // Lexicographic encoding in job-id order; unscheduled sorts last.
    auto encode = [&inst](const std::map<int, int>& chosen) {
        std::vector<int> code;
        for (const auto& j : inst.jobs) {
            auto it = chosen.find(j.id);
            code.push_back(it == chosen.end() ? std::numeric_limits<int>::max()
                                              : it->second);
        }
        return code;
    };

    if (kind == Formulation::OrigAt) {
        std::optional<AtSchedule> best_sched;
        std::vector<int> best_code;
        double best_value = -std::numeric_limits<double>::infinity();
        enumerate_feasible_at(inst, [&](const AtSchedule& sched) {
            double value = npv(sched, inst);
            auto code = encode(sched.completion);
            if (!best_sched || value > best_value + 1e-12 ||
                (std::abs(value - best_value) <= 1e-12 && code < best_code)) {
                best_sched = sched;
                best_code = code;
                best_value = value;
            }
        });
        if (best_sched) {
            best.objective = best_value;
            for (const auto& [job, t] : best_sched->completion)
                best.values["x_" + std::to_string(job) + "_" + std::to_string(t)] = 1.0;
        }
        return best;
    }

    std::optional<AggSchedule> best_sched;
    std::vector<int> best_code;
    double best_value = -std::numeric_limits<double>::infinity();
    enumerate_feasible_agg(inst, *grid, [&](const AggSchedule& sched) {
        double value = npv_hat(sched, inst, *grid);
        auto code = encode(sched.interval);
        if (!best_sched || value > best_value + 1e-12 ||
            (std::abs(value - best_value) <= 1e-12 && code < best_code)) {
            best_sched = sched;
            best_code = code;
            best_value = value;
        }
    });
    if (best_sched) {
        best.objective = best_value;
        if (kind == Formulation::AggAt) {
            for (const auto& [job, s] : best_sched->interval)
                best.values["X_" + std::to_string(job) + "_" + std::to_string(s)] = 1.0;
        } else {
            // Staircase encoding: every existing step at or after s is 1.
            auto graph = PrecGraph::from_instance(inst);
            auto delta = longest_path_deltas(graph);
            for (const auto& [job, s] : best_sched->interval) {
                const Job& j = inst.job(job);
                long long lo = std::max<long long>(1, j.processing_time);
                for (const auto& [k, span] : delta.row(job))
                    lo = std::max(lo, static_cast<long long>(span) + 1);
                for (int u = s; u <= grid->num_intervals(); ++u) {
                    if (grid->first_period_in(u) == 0 || grid->last_period_in(u) < lo)
                        continue;
                    best.values["Y_" + std::to_string(job) + "_" + std::to_string(u)] = 1.0;
                }
            }
        }
    }
    return best;
}

}  // namespace geomsched
