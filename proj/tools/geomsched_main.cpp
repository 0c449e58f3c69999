// Command-line front end: solve a single instance, benchmark a batch, verify
// a schedule file, export a model, or print the approximation factor.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "geomsched/evaluate.hpp"
#include "geomsched/instance_json.hpp"
#include "geomsched/interval_grid.hpp"
#include "geomsched/pipeline.hpp"
#include "geomsched/psplib.hpp"

namespace {

using namespace geomsched;

struct CommonFlags {
    double epsilon = 1.0;
    double rate = 0.001;
    bool rate_set = false;
    std::string semantics = "renewable";
    bool semantics_set = false;
    std::string formulation = "agg-at";
    std::string solver_cmd;
    double time_limit = 600.0;
    double profit_default = 1.0;
    double alpha = -1.0;
    int horizon_limit = 0;
    std::string output;
    std::string format = "csv";

    void attach(CLI::App* app) {
        app->add_option("--epsilon", epsilon, "aggregation parameter (> 0)");
        app->add_option("--rate", rate, "per-period discount rate")
            ->each([this](const std::string&) { rate_set = true; });
        app->add_option("--semantics", semantics,
                        "cumulative | renewable (overrides the instance)")
            ->each([this](const std::string&) { semantics_set = true; });
        app->add_option("--formulation", formulation, "orig-at | agg-at | agg-by");
        app->add_option("--solver-cmd", solver_cmd,
                        "solver command with {model} and {solution} placeholders "
                        "(default: env GEOMSCHED_SOLVER_CMD, else built-in search)");
        app->add_option("--time-limit", time_limit, "solver time limit in seconds");
        app->add_option("--profit-default", profit_default, "profit for PSPLib jobs");
        app->add_option("--alpha", alpha, "nested-pit max-closure scaling in [0,1]");
        app->add_option("--horizon-limit", horizon_limit,
                        "drop jobs that cannot finish within this many periods");
        app->add_option("--output", output, "write results to this path");
        app->add_option("--format", format, "csv | json (bench output)");
    }

    RunConfig to_config() const {
        RunConfig cfg;
        cfg.epsilon = epsilon;
        if (rate_set) cfg.rate = rate;
        if (semantics_set) cfg.semantics = semantics_from_string(semantics);
        cfg.formulation = formulation_from_string(formulation);
        cfg.profit_default = profit_default;
        std::string cmd = solver_cmd;
        if (cmd.empty()) {
            const char* env = std::getenv("GEOMSCHED_SOLVER_CMD");
            if (env) cmd = env;
        }
        cfg.solver.command_template = cmd;
        cfg.solver.time_limit_s = time_limit;
        if (alpha >= 0.0) cfg.preprocess.nested_pit_alpha = alpha;
        if (horizon_limit > 0) cfg.preprocess.horizon_limit = horizon_limit;
        return cfg;
    }

    Instance load(const std::string& path) const {
        return load_instance(path, profit_default, rate, semantics_from_string(semantics));
    }
};

void write_or_print(const std::string& output, const std::string& text) {
    if (output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output);
        out << text;
    }
}

int cmd_solve(const CommonFlags& flags, const std::string& instance_path,
              const std::string& schedule_out) {
    Instance inst = flags.load(instance_path);
    auto result = run_pipeline(flags.to_config(), inst);
    const auto& r = result.report;
    std::cout << "status:      " << to_string(r.solver_status) << "\n";
    std::cout << "npv:         " << r.npv << "\n";
    std::cout << "npv_hat_ub:  " << r.npv_hat_ub << "\n";
    if (r.gap_pct)
        std::cout << "gap_pct:     " << *r.gap_pct << "\n";
    else
        std::cout << "gap_pct:     undefined (npv <= 0)\n";
    std::cout << "gamma:       " << r.gamma << "\n";
    for (const auto& [phase, secs] : r.wall_times)
        std::cout << "time_" << phase << ": " << secs << "\n";
    if (r.beyond_horizon)
        std::cout << "note: some completions fall beyond the instance horizon\n";
    if (!r.dropped_jobs.empty()) {
        std::cout << "warning: dropped unplaceable jobs:";
        for (int id : r.dropped_jobs) std::cout << " " << id;
        std::cout << "\n";
    }
    if (!result.preprocessed_out.empty())
        std::cout << "preprocessing removed " << result.preprocessed_out.size()
                  << " job(s)\n";
    if (!schedule_out.empty()) {
        write_or_print(schedule_out, write_at_schedule_json(result.schedule));
        std::cout << "schedule written to " << schedule_out << "\n";
    }
    return r.solver_status == SolverStatus::Optimal ||
                   r.solver_status == SolverStatus::Feasible
               ? 0
               : 1;
}

int cmd_bench(const CommonFlags& flags, const std::vector<std::string>& paths,
              const std::vector<double>& eps_list, int jobs) {
    std::vector<std::string> files;
    for (const auto& p : paths) {
        if (std::filesystem::is_directory(p)) {
            for (const auto& entry : std::filesystem::directory_iterator(p)) {
                auto ext = entry.path().extension();
                if (ext == ".sm" || ext == ".json") files.push_back(entry.path().string());
            }
        } else {
            files.push_back(p);
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        std::cerr << "bench: no instances matched\n";
        return 1;
    }
    auto eps = eps_list.empty() ? std::vector<double>{flags.epsilon} : eps_list;
    auto result = bench(flags.to_config(), files, eps, jobs);
    write_or_print(flags.output,
                   flags.format == "json" ? bench_json(result) : bench_csv(result));
    std::cerr << "instances solved: " << result.summary.solved << "/"
              << result.summary.rows << "\n"
              << "avg solve time:   " << result.summary.avg_solve_seconds << " s\n"
              << "avg gap:          " << result.summary.avg_gap_pct << " %\n";
    return 0;
}

int cmd_check(const CommonFlags& flags, const std::string& instance_path,
              const std::string& schedule_path) {
    Instance inst = flags.load(instance_path);
    if (flags.rate_set) inst.rate = flags.rate;
    if (flags.semantics_set) inst.semantics = semantics_from_string(flags.semantics);
    std::ifstream in(schedule_path);
    if (!in) {
        std::cerr << "check: cannot open " << schedule_path << "\n";
        return 2;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    AtSchedule sched = parse_at_schedule_json(buf.str());
    auto report = check_feasible_at(sched, inst);
    if (report.feasible()) {
        std::cout << "feasible; npv = " << npv(sched, inst) << "\n";
        return 0;
    }
    for (const auto& v : report.violations)
        std::cout << v.kind << ": " << v.detail << "\n";
    return 1;
}

int cmd_export_model(const CommonFlags& flags, const std::string& instance_path) {
    Instance inst = flags.load(instance_path);
    if (flags.rate_set) inst.rate = flags.rate;
    if (flags.semantics_set) inst.semantics = semantics_from_string(flags.semantics);
    Formulation kind = formulation_from_string(flags.formulation);
    MipModel model;
    if (kind == Formulation::OrigAt) {
        model = build_orig_at(inst);
    } else {
        auto grid = build_grid(flags.epsilon, inst.horizon);
        auto delta = longest_path_deltas(PrecGraph::from_instance(inst));
        model = kind == Formulation::AggAt ? build_agg_at(inst, grid, delta)
                                           : build_agg_by(inst, grid, delta);
    }
    write_or_print(flags.output, write_lp(model));
    return 0;
}

int cmd_gamma(double rate, int horizon, double epsilon) {
    std::cout << gamma_bound(rate, horizon, epsilon) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"geomsched: geometric time-aggregation solver for project "
                 "scheduling with net-present-value objective"};
    app.require_subcommand(1);

    CommonFlags solve_flags, bench_flags, check_flags, export_flags;
    std::string instance_path, schedule_path, schedule_out;
    std::vector<std::string> bench_paths;
    std::vector<double> bench_eps;
    int bench_jobs = 1;
    double gamma_rate = 0.0;
    int gamma_horizon = 1;
    double gamma_eps = 1.0;

    auto* solve = app.add_subcommand("solve", "run the full pipeline on one instance");
    solve->add_option("instance", instance_path, "instance file (.sm or .json)")
        ->required();
    solve->add_option("--schedule-out", schedule_out, "write the schedule as JSON");
    solve_flags.attach(solve);

    auto* bench_cmd = app.add_subcommand("bench", "run a batch and summarize");
    bench_cmd->add_option("instances", bench_paths, "instance files or directories")
        ->required();
    bench_cmd->add_option("--epsilon-list", bench_eps, "epsilon values (repeatable)");
    bench_cmd->add_option("--jobs", bench_jobs, "concurrent pipelines");
    bench_flags.attach(bench_cmd);

    auto* check = app.add_subcommand("check", "verify a schedule file against an instance");
    check->add_option("instance", instance_path, "instance file")->required();
    check->add_option("schedule", schedule_path, "schedule JSON (job id -> completion)")
        ->required();
    check_flags.attach(check);

    auto* export_model = app.add_subcommand("export-model", "write the LP without solving");
    export_model->add_option("instance", instance_path, "instance file")->required();
    export_flags.attach(export_model);

    auto* gamma_cmd = app.add_subcommand("gamma", "print the approximation factor");
    gamma_cmd->add_option("--rate", gamma_rate, "per-period discount rate")->required();
    gamma_cmd->add_option("--horizon", gamma_horizon, "number of periods")->required();
    gamma_cmd->add_option("--epsilon", gamma_eps, "aggregation parameter");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(solve_flags, instance_path, schedule_out);
        if (bench_cmd->parsed())
            return cmd_bench(bench_flags, bench_paths, bench_eps, bench_jobs);
        if (check->parsed()) return cmd_check(check_flags, instance_path, schedule_path);
        if (export_model->parsed()) return cmd_export_model(export_flags, instance_path);
        if (gamma_cmd->parsed()) return cmd_gamma(gamma_rate, gamma_horizon, gamma_eps);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
