#include "geomsched/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "geomsched/evaluate.hpp"
#include "geomsched/instance_json.hpp"
#include "geomsched/interval_grid.hpp"
#include "geomsched/psplib.hpp"

namespace geomsched {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Instance apply_overrides(const RunConfig& cfg, Instance inst) {
    if (cfg.rate) inst.rate = *cfg.rate;
    if (cfg.semantics) inst.semantics = *cfg.semantics;
    return inst;
}

// Restricts the instance to the kept job set. Precedence closedness of the
// kept set keeps predecessor lists intact.
Instance restrict_to(const Instance& inst, const std::set<int>& kept) {
    Instance out;
    out.horizon = inst.horizon;
    out.rate = inst.rate;
    out.semantics = inst.semantics;
    out.resources = inst.resources;
    for (const auto& j : inst.jobs) {
        if (!kept.count(j.id)) continue;
        Job copy = j;
        copy.preds.erase(std::remove_if(copy.preds.begin(), copy.preds.end(),
                                        [&kept](int k) { return !kept.count(k); }),
                         copy.preds.end());
        out.jobs.push_back(std::move(copy));
    }
    out.rebuild_index();
    return out;
}

MipSolution solve_model(const RunConfig& cfg, const Instance& inst, const MipModel& model,
                        const IntervalGrid* grid) {
    if (!cfg.solver.command_template.empty()) return solve_external(model, cfg.solver);
    return solve_bruteforce(inst, cfg.formulation, grid);
}

}  // namespace

PipelineResult run_pipeline(const RunConfig& cfg, const Instance& input) {
    PipelineResult result;
    auto& report = result.report;
    auto total_start = std::chrono::steady_clock::now();

    auto validation = validate_instance(input);
    if (!validation.ok())
        throw StructuralError("pipeline (validate): " + validation.violations.front());

    Instance inst = apply_overrides(cfg, input);

    // Preprocessing: horizon pruning first, then the max-closure heuristic.
    auto pre_start = std::chrono::steady_clock::now();
    {
        std::set<int> kept;
        for (const auto& j : inst.jobs) kept.insert(j.id);
        if (cfg.preprocess.horizon_limit) {
            auto graph = PrecGraph::from_instance(inst);
            auto delta = longest_path_deltas(graph);
            std::map<int, int> durations;
            for (const auto& j : inst.jobs) durations[j.id] = j.processing_time;
            for (int id : prune_by_horizon(delta, durations, *cfg.preprocess.horizon_limit))
                kept.erase(id);
            inst = restrict_to(inst, kept);
        }
        if (cfg.preprocess.nested_pit_alpha) {
            auto graph = PrecGraph::from_instance(inst);
            std::map<int, double> weights;
            for (const auto& j : inst.jobs) weights[j.id] = j.profit;
            auto closure = max_closure_preprocess(graph, weights,
                                                  *cfg.preprocess.nested_pit_alpha);
            inst = restrict_to(inst, closure);
            kept = closure;
        }
        for (const auto& j : input.jobs)
            if (inst.job_index(j.id) < 0) result.preprocessed_out.push_back(j.id);
    }
    report.wall_times["preprocess"] = seconds_since(pre_start);

    report.gamma = cfg.formulation == Formulation::OrigAt
                       ? 1.0
                       : gamma_bound(inst.rate, inst.horizon, cfg.epsilon);

    auto build_start = std::chrono::steady_clock::now();
    IntervalGrid grid = build_grid(cfg.epsilon, inst.horizon);
    MipModel model;
    DeltaMatrix delta;
    if (cfg.formulation == Formulation::OrigAt) {
        model = build_orig_at(inst);
    } else {
        delta = longest_path_deltas(PrecGraph::from_instance(inst));
        model = cfg.formulation == Formulation::AggAt ? build_agg_at(inst, grid, delta)
                                                      : build_agg_by(inst, grid, delta);
    }
    report.wall_times["build"] = seconds_since(build_start);

    auto solve_start = std::chrono::steady_clock::now();
    MipSolution solution = solve_model(cfg, inst, model, &grid);
    report.wall_times["solve"] = seconds_since(solve_start);
    report.solver_status = solution.status;

    if (solution.status == SolverStatus::Error)
        throw StructuralError("pipeline (solve): " + solution.message);
    if (solution.status == SolverStatus::Infeasible ||
        solution.status == SolverStatus::TimeLimit) {
        report.wall_times["total"] = seconds_since(total_start);
        return result;
    }

    auto recon_start = std::chrono::steady_clock::now();
    if (cfg.formulation == Formulation::OrigAt) {
        result.schedule = at_schedule_from_solution(model, solution.values);
        result.schedule.t_ext = inst.horizon;
        report.npv = npv(result.schedule, inst);
        // The period-level model optimizes NPV directly, so a proven optimum
        // is its own bound.
        report.npv_hat_ub = solution.status == SolverStatus::Optimal
                                ? report.npv
                                : std::numeric_limits<double>::quiet_NaN();
    } else {
        result.agg_schedule = agg_schedule_from_solution(model, solution.values,
                                                         cfg.formulation);
        auto disagg = disaggregate(result.agg_schedule, inst, grid, cfg.unplaceable);
        result.schedule = disagg.schedule;
        report.beyond_horizon = disagg.beyond_horizon;
        report.dropped_jobs = disagg.dropped;
        report.npv = npv(result.schedule, inst);
        report.npv_hat_ub = npv_hat(result.agg_schedule, inst, grid);
    }
    report.gap_pct = gap(report.npv, report.npv_hat_ub);
    report.wall_times["reconstruct"] = seconds_since(recon_start);
    report.wall_times["total"] = seconds_since(total_start);
    return result;
}

Instance load_instance(const std::string& path, double profit_default, double rate,
                       Semantics semantics) {
    std::ifstream in(path);
    if (!in) throw StructuralError("cannot open instance file " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    if (std::filesystem::path(path).extension() == ".sm") {
        PsplibOptions opts;
        opts.profit_default = profit_default;
        opts.rate = rate;
        opts.semantics = semantics;
        return parse_psplib(buffer.str(), opts);
    }
    return parse_instance_json(buffer.str());
}

namespace {

std::string csv_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

BenchResult bench(const RunConfig& cfg, const std::vector<std::string>& instance_paths,
                  const std::vector<double>& epsilons, int threads) {
    struct Task {
        std::string path;
        double epsilon;
    };
    std::vector<Task> tasks;
    for (const auto& path : instance_paths)
        for (double eps : epsilons) tasks.push_back({path, eps});

    std::vector<BenchRow> rows(tasks.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            const auto& task = tasks[i];
            BenchRow row;
            row.instance = std::filesystem::path(task.path).stem().string();
            row.epsilon = task.epsilon;
            try {
                RunConfig local = cfg;
                local.epsilon = task.epsilon;
                Instance inst = load_instance(
                    task.path, local.profit_default, local.rate.value_or(0.001),
                    local.semantics.value_or(Semantics::Renewable));
                row.semantics = to_string(local.semantics.value_or(inst.semantics));
                auto result = run_pipeline(local, inst);
                row.status = to_string(result.report.solver_status);
                row.solve_seconds = result.report.wall_times.count("solve")
                                        ? result.report.wall_times.at("solve")
                                        : 0.0;
                row.npv = result.report.npv;
                row.npv_hat_ub = result.report.npv_hat_ub;
                row.gap_pct = result.report.gap_pct;
                row.gamma = result.report.gamma;
            } catch (const std::exception& e) {
                row.status = "Error";
                (void)e;
            }
            rows[i] = std::move(row);
        }
    };

    threads = std::max(1, threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    BenchResult result;
    result.rows = std::move(rows);
    std::sort(result.rows.begin(), result.rows.end(), [](const BenchRow& a, const BenchRow& b) {
        if (a.instance != b.instance) return a.instance < b.instance;
        return a.epsilon < b.epsilon;
    });

    auto& s = result.summary;
    s.rows = static_cast<int>(result.rows.size());
    double time_sum = 0.0, gap_sum = 0.0;
    int gap_count = 0;
    for (const auto& row : result.rows) {
        if (row.status == "Optimal") {
            ++s.solved;
            time_sum += row.solve_seconds;
        }
        if (row.gap_pct) {
            gap_sum += *row.gap_pct;
            ++gap_count;
        }
    }
    s.avg_solve_seconds = s.solved ? time_sum / s.solved : 0.0;
    s.avg_gap_pct = gap_count ? gap_sum / gap_count : 0.0;
    return result;
}

std::string bench_csv(const BenchResult& result) {
    std::ostringstream os;
    os << "instance,epsilon,semantics,status,solve_seconds,npv,npv_hat_ub,gap_pct,gamma\n";
    for (const auto& r : result.rows) {
        os << r.instance << "," << csv_double(r.epsilon) << "," << r.semantics << ","
           << r.status << "," << csv_double(r.solve_seconds) << "," << csv_double(r.npv)
           << "," << csv_double(r.npv_hat_ub) << ","
           << (r.gap_pct ? csv_double(*r.gap_pct) : "") << "," << csv_double(r.gamma)
           << "\n";
    }
    return os.str();
}

BenchResult parse_bench_csv(const std::string& text) {
    BenchResult result;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ',')) fields.push_back(field);
        while (fields.size() < 9) fields.push_back("");
        BenchRow row;
        row.instance = fields[0];
        row.epsilon = std::stod(fields[1]);
        row.semantics = fields[2];
        row.status = fields[3];
        row.solve_seconds = std::stod(fields[4]);
        row.npv = std::stod(fields[5]);
        row.npv_hat_ub = std::stod(fields[6]);
        if (!fields[7].empty()) row.gap_pct = std::stod(fields[7]);
        row.gamma = std::stod(fields[8]);
        result.rows.push_back(std::move(row));
    }
    return result;
}

std::string bench_json(const BenchResult& result) {
    nlohmann::json root;
    root["rows"] = nlohmann::json::array();
    for (const auto& r : result.rows) {
        nlohmann::json row;
        row["instance"] = r.instance;
        row["epsilon"] = r.epsilon;
        row["semantics"] = r.semantics;
        row["status"] = r.status;
        row["solve_seconds"] = r.solve_seconds;
        row["npv"] = r.npv;
        row["npv_hat_ub"] = r.npv_hat_ub;
        if (r.gap_pct) row["gap_pct"] = *r.gap_pct;
        row["gamma"] = r.gamma;
        root["rows"].push_back(std::move(row));
    }
    root["summary"] = {{"rows", result.summary.rows},
                       {"solved", result.summary.solved},
                       {"avg_solve_seconds", result.summary.avg_solve_seconds},
                       {"avg_gap_pct", result.summary.avg_gap_pct}};
    return root.dump(2) + "\n";
}

}  // namespace geomsched
