#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "geomsched/evaluate.hpp"
#include "geomsched/pipeline.hpp"
#include "support/gen.hpp"
#include "support/psplib_gen.hpp"

using namespace geomsched;

namespace {

std::string shim_template() {
    return std::string("python3 ") + GEOMSCHED_SOURCE_DIR +
           "/tools/lp_mip_solve.py {model} {solution} {time_limit} {mip_gap}";
}

}  // namespace

TEST_CASE("the e1 pipeline respects the upper-bound chain") {
    auto inst = testing::make_e1();
    RunConfig cfg;
    cfg.epsilon = 1.0;
    cfg.formulation = Formulation::AggAt;
    auto result = run_pipeline(cfg, inst);
    const auto& r = result.report;
    CHECK(r.solver_status == SolverStatus::Optimal);
    CHECK(r.npv <= r.npv_hat_ub + 1e-9);
    REQUIRE(r.gap_pct.has_value());
    CHECK(*r.gap_pct >= 0.0);
    // interval-0 support lets job 1 finish at period 1, recovering the
    // period-level optimum exactly
    CHECK(r.npv ==
          doctest::Approx(1.0 / 1.1 + 1.0 / std::pow(1.1, 3)).epsilon(1e-9));
    CHECK(r.npv_hat_ub == doctest::Approx(1.0 / 1.1 + 1.0 / 1.21).epsilon(1e-9));
    CHECK(r.gamma == doctest::Approx(std::pow(1.1, -5.0)));
    CHECK(r.wall_times.count("solve") == 1);
    CHECK(r.wall_times.count("total") == 1);
}

TEST_CASE("the negative-chain pipeline reproduces the undefined gap") {
    auto inst = testing::make_r1();
    RunConfig cfg;
    cfg.epsilon = 3.0;
    cfg.formulation = Formulation::AggAt;
    auto result = run_pipeline(cfg, inst);
    const auto& r = result.report;
    CHECK(r.npv == doctest::Approx(-10.0 / 2.25 + 10.5 / 3.375).epsilon(1e-9));
    CHECK(r.npv < 0.0);
    CHECK_FALSE(r.gap_pct.has_value());
    CHECK(result.schedule.completion.size() == 2);
}

TEST_CASE("the orig-at pipeline matches the brute-force optimum") {
    auto inst = testing::make_e1();
    RunConfig cfg;
    cfg.formulation = Formulation::OrigAt;
    auto result = run_pipeline(cfg, inst);
    auto brute = solve_bruteforce(inst, Formulation::OrigAt);
    CHECK(result.report.npv == doctest::Approx(brute.objective).epsilon(1e-9));
    CHECK(result.report.gamma == 1.0);
}

TEST_CASE("agg-by pipelines agree with agg-at pipelines") {
    std::mt19937 rng(2323);
    testing::GenParams params;
    params.max_jobs = 4;
    params.max_horizon = 8;
    for (int round = 0; round < 10; ++round) {
        auto inst = testing::random_instance(rng, params);
        RunConfig cfg;
        cfg.epsilon = 1.0;
        cfg.formulation = Formulation::AggAt;
        auto at = run_pipeline(cfg, inst);
        cfg.formulation = Formulation::AggBy;
        auto by = run_pipeline(cfg, inst);
        CHECK(at.report.npv_hat_ub ==
              doctest::Approx(by.report.npv_hat_ub).epsilon(1e-9));
    }
}

TEST_CASE("preprocessing drops deep chains and unprofitable closures") {
    Instance inst;
    inst.horizon = 10;
    inst.rate = 0.0;
    inst.semantics = Semantics::Cumulative;
    inst.resources.push_back(ResourceProfile(1, 100.0));
    // chain 3 <- 2 <- 1 plus an isolated money-loser
    for (int id = 1; id <= 4; ++id) {
        Job j;
        j.id = id;
        j.processing_time = 4;
        j.profit = id == 4 ? -5.0 : 1.0;
        j.demands = {1.0};
        if (id > 1 && id < 4) j.preds = {id - 1};
        inst.jobs.push_back(j);
    }
    inst.rebuild_index();

    RunConfig cfg;
    cfg.formulation = Formulation::AggAt;
    cfg.preprocess.horizon_limit = 8;        // chain head needs 12
    cfg.preprocess.nested_pit_alpha = 1.0;   // drops the isolated -5 job
    auto result = run_pipeline(cfg, inst);
    CHECK(result.preprocessed_out == std::vector<int>{3, 4});
    CHECK(result.schedule.completion.count(3) == 0);
    CHECK(result.schedule.completion.count(4) == 0);
    CHECK(result.schedule.completion.count(1) == 1);
}

TEST_CASE("bench produces sorted rows, a summary, and csv round-trips") {
    namespace fs = std::filesystem;
    auto dir = fs::temp_directory_path() / "geomsched-bench-test";
    fs::create_directories(dir);
    std::vector<std::string> paths;
    for (unsigned seed : {11u, 12u, 13u}) {
        auto path = dir / ("synth" + std::to_string(seed) + ".sm");
        std::ofstream out(path);
        testing::PsplibGenParams params;
        params.real_jobs = 6;
        out << testing::generate_psplib_sm(seed, params);
        paths.push_back(path.string());
    }

    RunConfig cfg;
    cfg.formulation = Formulation::AggAt;
    cfg.solver.command_template = shim_template();
    cfg.semantics = Semantics::Cumulative;
    auto result = bench(cfg, paths, {0.5, 1.0}, 2);
    REQUIRE(result.rows.size() == 6);
    CHECK(result.summary.rows == 6);
    CHECK(result.summary.solved == 6);
    for (size_t i = 1; i < result.rows.size(); ++i) {
        const auto& a = result.rows[i - 1];
        const auto& b = result.rows[i];
        CHECK((a.instance < b.instance ||
               (a.instance == b.instance && a.epsilon < b.epsilon)));
    }

    auto csv = bench_csv(result);
    auto parsed = parse_bench_csv(csv);
    REQUIRE(parsed.rows.size() == result.rows.size());
    for (size_t i = 0; i < parsed.rows.size(); ++i) {
        CHECK(parsed.rows[i].instance == result.rows[i].instance);
        CHECK(parsed.rows[i].epsilon == result.rows[i].epsilon);
        CHECK(parsed.rows[i].npv == result.rows[i].npv);
        CHECK(parsed.rows[i].npv_hat_ub == result.rows[i].npv_hat_ub);
        CHECK(parsed.rows[i].gap_pct.has_value() ==
              result.rows[i].gap_pct.has_value());
        if (parsed.rows[i].gap_pct)
            CHECK(*parsed.rows[i].gap_pct == *result.rows[i].gap_pct);
    }

    // serial and concurrent runs produce identical sorted outputs
    auto serial = bench(cfg, paths, {0.5, 1.0}, 1);
    REQUIRE(serial.rows.size() == result.rows.size());
    for (size_t i = 0; i < serial.rows.size(); ++i) {
        CHECK(serial.rows[i].instance == result.rows[i].instance);
        CHECK(serial.rows[i].npv == doctest::Approx(result.rows[i].npv).epsilon(1e-9));
        CHECK(serial.rows[i].npv_hat_ub ==
              doctest::Approx(result.rows[i].npv_hat_ub).epsilon(1e-9));
    }
    fs::remove_all(dir);
}

TEST_CASE("bench records failures as error rows and keeps going") {
    namespace fs = std::filesystem;
    auto dir = fs::temp_directory_path() / "geomsched-bench-err";
    fs::create_directories(dir);
    auto good = dir / "good.sm";
    {
        std::ofstream out(good);
        testing::PsplibGenParams params;
        params.real_jobs = 5;
        out << testing::generate_psplib_sm(21, params);
    }
    auto bad = dir / "bad.sm";
    {
        std::ofstream out(bad);
        out << "not a psplib file\n";
    }
    RunConfig cfg;
    cfg.formulation = Formulation::AggAt;
    cfg.solver.command_template = shim_template();
    auto result = bench(cfg, {good.string(), bad.string()}, {1.0}, 1);
    REQUIRE(result.rows.size() == 2);
    CHECK(result.rows[0].status == "Error");  // "bad" sorts first
    CHECK(result.rows[1].status == "Optimal");
    CHECK(result.summary.solved == 1);
    fs::remove_all(dir);
}
