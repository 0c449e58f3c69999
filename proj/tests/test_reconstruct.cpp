#include <doctest.h>

#include <random>

#include "geomsched/evaluate.hpp"
#include "geomsched/reconstruct.hpp"
#include "geomsched/solver.hpp"
#include "support/gen.hpp"

using namespace geomsched;

TEST_CASE("a single interval-1 job starts right after tau_0") {
    Instance inst;
    inst.horizon = 8;
    inst.rate = 0.0;
    inst.semantics = Semantics::Cumulative;
    inst.resources.push_back(ResourceProfile(1, 100.0));
    Job j;
    j.id = 1;
    j.processing_time = 1;
    j.profit = 1.0;
    j.demands = {1.0};
    inst.jobs = {j};
    inst.rebuild_index();

    auto grid = build_grid(1.0, 8);
    AggSchedule agg;
    agg.interval = {{1, 1}};
    auto result = disaggregate(agg, inst, grid);
    CHECK(result.schedule.completion.at(1) == 2);  // floor(tau_0) + 1
    CHECK(result.dropped.empty());
}

TEST_CASE("the e1 interval assignment lands at completions 2 and 4") {
    auto inst = testing::make_e1();
    auto grid = build_grid(1.0, inst.horizon);
    AggSchedule agg;
    agg.interval = {{1, 1}, {2, 2}};
    auto result = disaggregate(agg, inst, grid);
    CHECK(result.schedule.completion.at(1) == 2);
    CHECK(result.schedule.completion.at(2) == 4);
    CHECK(check_feasible_at(result.schedule, inst).feasible());
}

TEST_CASE("an empty aggregated schedule reconstructs to an empty one") {
    auto inst = testing::make_e1();
    auto grid = build_grid(1.0, inst.horizon);
    auto result = disaggregate(AggSchedule{}, inst, grid);
    CHECK(result.schedule.completion.empty());
}

TEST_CASE("infeasible aggregated schedules are rejected up front") {
    auto inst = testing::make_e1();
    auto grid = build_grid(1.0, inst.horizon);
    AggSchedule agg;
    agg.interval = {{2, 1}};  // scheduled without its predecessor
    CHECK_THROWS_AS(disaggregate(agg, inst, grid), StructuralError);
}

TEST_CASE("renewable jobs too heavy for any period are dropped with dependents") {
    Instance inst;
    inst.horizon = 8;
    inst.rate = 0.0;
    inst.semantics = Semantics::Renewable;
    inst.resources.push_back(ResourceProfile(1, 3.0));
    Job heavy, child;
    heavy.id = 1;
    heavy.processing_time = 4;
    heavy.profit = 5.0;
    heavy.demands = {5.0};  // q > R at every period
    child.id = 2;
    child.processing_time = 1;
    child.profit = 5.0;
    child.demands = {1.0};
    child.preds = {1};
    inst.jobs = {heavy, child};
    inst.rebuild_index();

    // A long enough interval absorbs the oversized demand in aggregate even
    // though no single period can host it.
    auto grid = build_grid(1.0, 8);
    AggSchedule agg;
    agg.interval = {{1, 3}, {2, 3}};
    REQUIRE(check_feasible_agg(agg, inst, grid,
                               longest_path_deltas(PrecGraph::from_instance(inst)))
                .feasible());

    auto result = disaggregate(agg, inst, grid);
    CHECK(result.dropped == std::vector<int>{1, 2});
    CHECK(result.schedule.completion.empty());

    CHECK_THROWS_AS(disaggregate(agg, inst, grid, UnplaceablePolicy::Fail),
                    StructuralError);
}

TEST_CASE("heap order prefers profitable jobs inside an interval") {
    // Two independent unit jobs against one unit of renewable capacity per
    // period: the higher-profit one takes the earlier period.
    Instance inst;
    inst.horizon = 8;
    inst.rate = 0.1;
    inst.semantics = Semantics::Renewable;
    inst.resources.push_back(ResourceProfile(1, 1.0));
    Job a, b;
    a.id = 1;
    a.processing_time = 1;
    a.profit = 3.0;
    a.demands = {1.0};
    b.id = 2;
    b.processing_time = 1;
    b.profit = 5.0;
    b.demands = {1.0};
    inst.jobs = {a, b};
    inst.rebuild_index();

    auto grid = build_grid(1.0, 8);
    AggSchedule agg;
    agg.interval = {{1, 2}, {2, 2}};
    auto result = disaggregate(agg, inst, grid);
    CHECK(result.schedule.completion.at(2) == 3);  // popped first
    CHECK(result.schedule.completion.at(1) == 4);
}

TEST_CASE("reconstructions are always feasible for the original instance") {
    std::mt19937 rng(112);
    testing::GenParams params;
    params.max_jobs = 5;
    params.max_horizon = 10;
    int reconstructions = 0;
    for (int round = 0; round < 120; ++round) {
        auto inst = testing::random_instance(rng, params);
        for (double eps : {0.5, 1.0}) {
            auto grid = build_grid(eps, inst.horizon);
            auto sol = solve_bruteforce(inst, Formulation::AggAt, &grid);
            AggSchedule agg;
            for (const auto& [name, v] : sol.values) {
                if (v < 0.5) continue;
                auto p1 = name.find('_');
                auto p2 = name.find('_', p1 + 1);
                agg.interval[std::stoi(name.substr(p1 + 1, p2 - p1 - 1))] =
                    std::stoi(name.substr(p2 + 1));
            }
            auto result = disaggregate(agg, inst, grid);
            ++reconstructions;
            CHECK(check_feasible_at(result.schedule, inst).feasible());
            if (!result.schedule.completion.empty() && inst.horizon < result.schedule.t_ext)
                CHECK(result.schedule.t_ext == extended_horizon(grid));
        }
    }
    CHECK(reconstructions == 240);
}

TEST_CASE("cumulative completions stay inside the guarantee window") {
    // Non-negative profits, cumulative semantics, integer grid.
    std::mt19937 rng(113);
    testing::GenParams params;
    params.max_jobs = 5;
    params.max_horizon = 10;
    params.nonneg_profits = true;
    params.semantics = Semantics::Cumulative;
    for (int round = 0; round < 120; ++round) {
        auto inst = testing::random_instance(rng, params);
        auto grid = build_grid(1.0, inst.horizon);
        auto sol = solve_bruteforce(inst, Formulation::AggAt, &grid);
        AggSchedule agg;
        for (const auto& [name, v] : sol.values) {
            if (v < 0.5) continue;
            auto p1 = name.find('_');
            auto p2 = name.find('_', p1 + 1);
            agg.interval[std::stoi(name.substr(p1 + 1, p2 - p1 - 1))] =
                std::stoi(name.substr(p2 + 1));
        }
        auto result = disaggregate(agg, inst, grid);
        REQUIRE(result.dropped.empty());
        for (const auto& [job, s] : agg.interval) {
            int c = result.schedule.completion.at(job);
            CHECK(grid.tau(s - 1) < static_cast<double>(c));
            CHECK(static_cast<double>(c) <=
                  grid.tau(s) * (1.0 + 2.0 * grid.epsilon()) / (1.0 + grid.epsilon()) + 1e-9);
        }
    }
}
