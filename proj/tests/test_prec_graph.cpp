#include <doctest.h>

#include <random>

#include "geomsched/prec_graph.hpp"
#include "support/gen.hpp"
#include "support/oracles.hpp"

using namespace geomsched;

namespace {

// chain 3 -> 2 -> 1 (1 must finish first)
PrecGraph chain3(int p3 = 1, int p2 = 1) {
    PrecGraph g;
    g.add_arc(3, 2, p3);
    g.add_arc(2, 1, p2);
    return g;
}

}  // namespace

TEST_CASE("transitive closure of a chain") {
    auto closure = transitive_closure(chain3());
    CHECK(closure[3] == std::set<int>{1, 2});
    CHECK(closure[2] == std::set<int>{1});
    CHECK(closure[1].empty());
}

TEST_CASE("transitive closure of an empty graph") {
    PrecGraph g;
    g.add_node(1);
    g.add_node(2);
    auto closure = transitive_closure(g);
    CHECK(closure[1].empty());
    CHECK(closure[2].empty());
}

TEST_CASE("transitive closure of a diamond") {
    PrecGraph g;  // 4 -> {2,3} -> 1
    g.add_arc(4, 2, 1);
    g.add_arc(4, 3, 1);
    g.add_arc(2, 1, 1);
    g.add_arc(3, 1, 1);
    auto closure = transitive_closure(g);
    CHECK(closure[4] == std::set<int>{1, 2, 3});
}

TEST_CASE("longest path spans on a chain") {
    // j=3 -> k=2 -> l=1 with p_j = 2, p_k = 3
    auto delta = longest_path_deltas(chain3(2, 3));
    CHECK(delta.span(3, 2) == 2);
    CHECK(delta.span(3, 1) == 5);
    CHECK(delta.span(2, 1) == 3);
    CHECK_FALSE(delta.span(1, 2).has_value());
}

TEST_CASE("longest path span over a single arc") {
    PrecGraph g;
    g.add_arc(2, 1, 7);
    auto delta = longest_path_deltas(g);
    CHECK(delta.span(2, 1) == 7);
}

TEST_CASE("longest path picks the heavier diamond branch") {
    // j -> {a, b} -> l, p_j = 1, p_a = 2, p_b = 4
    PrecGraph g;
    g.add_arc(4, 2, 1);  // j=4, a=2
    g.add_arc(4, 3, 1);  // b=3
    g.add_arc(2, 1, 2);
    g.add_arc(3, 1, 4);
    auto delta = longest_path_deltas(g);
    CHECK(delta.span(4, 1) == 5);  // 1+4 beats 1+2
}

TEST_CASE("longest paths match path enumeration on random DAGs") {
    std::mt19937 rng(777);
    testing::GenParams params;
    params.max_jobs = 8;
    params.arc_prob = 0.4;
    for (int round = 0; round < 150; ++round) {
        auto inst = testing::random_instance(rng, params);
        auto g = PrecGraph::from_instance(inst);
        auto delta = longest_path_deltas(g);
        auto closure = transitive_closure(g);
        for (const auto& j : inst.jobs) {
            CHECK(closure[j.id] == testing::reachable_by_paths(g, j.id));
            for (int k : closure[j.id]) {
                auto expect = testing::longest_path_by_enumeration(g, j.id, k);
                REQUIRE(expect.has_value());
                CHECK(delta.span(j.id, k) == *expect);
            }
        }
    }
}

TEST_CASE("interval reduction keeps the direct arc when weights tie") {
    // chain j=3 -> k=2 -> l=1, all deltas 1/1/2, eps = 1, t = 3 (tau = 8)
    auto delta = longest_path_deltas(chain3(1, 1));
    auto grid = build_grid(1.0, 8);
    auto red = interval_transitive_reduction(delta, grid, 3);
    CHECK(red.forced_zero.empty());
    bool has_direct = false;
    for (const auto& arc : red.arcs)
        if (arc.job == 3 && arc.pred == 1) has_direct = true;
    CHECK(has_direct);
    CHECK(red.arcs.size() == 3);
}

TEST_CASE("interval reduction removes the implied arc at a tight interval") {
    auto delta = longest_path_deltas(chain3(1, 1));
    auto grid = build_grid(1.0, 8);
    auto red = interval_transitive_reduction(delta, grid, 1);  // tau_1 = 2
    CHECK(red.forced_zero.empty());
    for (const auto& arc : red.arcs) {
        CHECK_FALSE((arc.job == 3 && arc.pred == 1));  // w 1 < 1 + 1, removed
    }
    CHECK(red.arcs.size() == 2);
    for (const auto& arc : red.arcs)
        CHECK(arc.s_limit == 0);  // both survivors point at interval 0
}

TEST_CASE("interval reduction forces jobs whose span exceeds the interval end") {
    PrecGraph g;
    g.add_arc(2, 1, 10);  // delta = 10
    auto delta = longest_path_deltas(g);
    auto grid = build_grid(1.0, 16);
    auto red = interval_transitive_reduction(delta, grid, 3);  // tau_3 = 8 < 10
    CHECK(red.forced_zero == std::set<int>{2});
}

TEST_CASE("topological order prefers higher profit at equal intervals") {
    PrecGraph g;
    g.add_node(1);  // A
    g.add_node(2);  // B
    auto priority = [](int id) {
        return id == 1 ? std::make_pair(1, -5.0) : std::make_pair(1, -3.0);
    };
    auto order = topological_order(g, priority);
    CHECK(order == std::vector<int>{1, 2});
}

TEST_CASE("topological order lets precedence override priority") {
    PrecGraph g;
    g.add_arc(1, 2, 1);  // B=2 must precede A=1
    auto priority = [](int id) {
        return id == 1 ? std::make_pair(1, 0.0) : std::make_pair(2, 0.0);
    };
    auto order = topological_order(g, priority);
    CHECK(order == std::vector<int>{2, 1});
}

TEST_CASE("topological order ties break by ascending id") {
    PrecGraph g;
    g.add_node(5);
    g.add_node(3);
    g.add_node(4);
    auto priority = [](int) { return std::make_pair(1, -1.0); };
    auto order = topological_order(g, priority);
    CHECK(order == std::vector<int>{3, 4, 5});
}

TEST_CASE("topological order always respects precedence on random DAGs") {
    std::mt19937 rng(4242);
    for (int round = 0; round < 100; ++round) {
        auto inst = testing::random_instance(rng);
        auto g = PrecGraph::from_instance(inst);
        auto priority = [&inst](int id) {
            return std::make_pair(id % 3, -inst.job(id).profit);
        };
        auto order = topological_order(g, priority);
        std::map<int, size_t> pos;
        for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
        for (const auto& j : inst.jobs)
            for (int k : j.preds) CHECK(pos[k] < pos[j.id]);
    }
}

TEST_CASE("max closure keeps everything when all weights are positive") {
    PrecGraph g;
    g.add_arc(2, 1, 1);
    g.add_arc(3, 1, 1);
    std::map<int, double> w{{1, 1.0}, {2, 2.0}, {3, 3.0}};
    CHECK(max_closure_preprocess(g, w, 1.0) == std::set<int>{1, 2, 3});
}

TEST_CASE("max closure with alpha 0 keeps nothing when positives need negatives") {
    PrecGraph g;
    g.add_arc(2, 1, 1);  // +5 job 2 requires -3 job 1
    std::map<int, double> w{{1, -3.0}, {2, 5.0}};
    CHECK(max_closure_preprocess(g, w, 0.0).empty());
}

TEST_CASE("max closure three-node example") {
    PrecGraph g;
    g.add_arc(1, 2, 1);  // A=1 (w=5) requires B=2 (w=-3)
    g.add_node(3);       // isolated C (w=-1)
    std::map<int, double> w{{1, 5.0}, {2, -3.0}, {3, -1.0}};
    auto kept = max_closure_preprocess(g, w, 1.0);
    CHECK(kept == std::set<int>{1, 2});  // value 2, best of all 8 closures
}

TEST_CASE("max closure matches enumeration and shrinks with alpha") {
    std::mt19937 rng(99);
    testing::GenParams params;
    params.min_jobs = 3;
    params.max_jobs = 10;
    params.arc_prob = 0.3;
    for (int round = 0; round < 80; ++round) {
        auto inst = testing::random_instance(rng, params);
        auto g = PrecGraph::from_instance(inst);
        std::map<int, double> w;
        for (const auto& j : inst.jobs) w[j.id] = j.profit;
        std::set<int> previous;
        bool first = true;
        for (double alpha : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            auto kept = max_closure_preprocess(g, w, alpha);
            // it is a closure
            for (int id : kept)
                for (int k : g.preds_of(id)) CHECK(kept.count(k));
            // optimal value matches subset enumeration
            auto best = testing::best_closure_by_enumeration(g, w, alpha);
            auto value = [&](const std::set<int>& s) {
                double v = 0.0;
                for (int id : s) v += w[id] <= 0.0 ? w[id] : alpha * w[id];
                return v;
            };
            CHECK(value(kept) == doctest::Approx(value(best)).epsilon(1e-9));
            // nested in alpha: smaller alpha keeps (weakly) less
            if (!first) CHECK(std::includes(kept.begin(), kept.end(),
                                            previous.begin(), previous.end()));
            previous = kept;
            first = false;
        }
    }
}

TEST_CASE("horizon pruning drops jobs with deep chains") {
    PrecGraph g;  // 3 -> 2 -> 1, each p = 700
    g.add_arc(3, 2, 700);
    g.add_arc(2, 1, 700);
    auto delta = longest_path_deltas(g);
    std::map<int, int> p{{1, 700}, {2, 700}, {3, 700}};
    CHECK(prune_by_horizon(delta, p, 1800) == std::set<int>{3});  // needs 2100
    CHECK(prune_by_horizon(delta, p, 2100).empty());              // slack limit
}

TEST_CASE("horizon pruning keeps a single job at the boundary") {
    DeltaMatrix delta;
    std::map<int, int> p{{1, 1800}};
    CHECK(prune_by_horizon(delta, p, 1800).empty());
    CHECK(prune_by_horizon(delta, p, 1799) == std::set<int>{1});
}

TEST_CASE("transitive reduction removes implied arcs") {
    PrecGraph g;  // 3 -> 2 -> 1 plus the redundant 3 -> 1
    g.add_arc(3, 2, 1);
    g.add_arc(3, 1, 1);
    g.add_arc(2, 1, 1);
    auto reduced = transitive_reduction(g);
    CHECK(reduced[3] == std::vector<int>{2});
    CHECK(reduced[2] == std::vector<int>{1});
}

TEST_CASE("cycles raise structural errors with a witness") {
    PrecGraph g;
    g.add_arc(1, 2, 1);
    g.add_arc(2, 1, 1);
    CHECK_THROWS_AS(g.topological(), StructuralError);
    CHECK_THROWS_AS(transitive_closure(g), StructuralError);
}
