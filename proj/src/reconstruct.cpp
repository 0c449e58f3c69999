#include "geomsched/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <tuple>

#include "geomsched/evaluate.hpp"
#include "geomsched/prec_graph.hpp"

namespace geomsched {

int extended_horizon(const IntervalGrid& grid) {
    double eps = grid.epsilon();
    double end = grid.tau(grid.num_intervals()) * (1.0 + 2.0 * eps) / (1.0 + eps);
    return std::max(grid.horizon(), static_cast<int>(std::ceil(end)));
}

namespace {

// Per-period ledgers over the extended horizon.
struct Ledger {
    const Instance& inst;
    int t_ext;
    std::vector<std::vector<double>> load;      // [k][t]: per-period consumption
    std::vector<std::vector<double>> cum_load;  // [k][t]: prefix of load
    std::vector<std::vector<double>> avail;     // [k][t]: per-period supply
    std::vector<std::vector<double>> cum_avail;

    Ledger(const Instance& i, int text) : inst(i), t_ext(text) {
        int K = inst.num_resources();
        load.assign(static_cast<size_t>(K), std::vector<double>(static_cast<size_t>(t_ext) + 1, 0.0));
        cum_load = load;
        avail = load;
        cum_avail = load;
        for (int k = 0; k < K; ++k) {
            const auto& res = inst.resources[static_cast<size_t>(k)];
            double running = 0.0;
            for (int t = 1; t <= t_ext; ++t) {
                double a = res.available(t);
                avail[static_cast<size_t>(k)][static_cast<size_t>(t)] = a;
                running += a;
                cum_avail[static_cast<size_t>(k)][static_cast<size_t>(t)] = running;
            }
        }
    }

    // Whether job j can occupy [c - p + 1, c].
    bool fits(const Job& j, int c) const {
        if (j.processing_time == 0) return true;
        int start = c - j.processing_time + 1;
        if (start < 1 || c > t_ext) return false;
        for (int k = 0; k < inst.num_resources(); ++k) {
            double q = j.demands[static_cast<size_t>(k)];
            if (q <= 0.0) continue;
            const auto& ld = load[static_cast<size_t>(k)];
            const auto& cld = cum_load[static_cast<size_t>(k)];
            const auto& av = avail[static_cast<size_t>(k)];
            const auto& cav = cum_avail[static_cast<size_t>(k)];
            if (inst.semantics == Semantics::Renewable) {
                for (int t = start; t <= c; ++t)
                    if (ld[static_cast<size_t>(t)] + q > av[static_cast<size_t>(t)] + 1e-9)
                        return false;
            } else {
                for (int t = start; t <= t_ext; ++t) {
                    double added = q * std::min(j.processing_time, t - start + 1);
                    if (cld[static_cast<size_t>(t)] + added > cav[static_cast<size_t>(t)] + 1e-9)
                        return false;
                }
            }
        }
        return true;
    }

    void place(const Job& j, int c) {
        if (j.processing_time == 0) return;
        int start = c - j.processing_time + 1;
        for (int k = 0; k < inst.num_resources(); ++k) {
            double q = j.demands[static_cast<size_t>(k)];
            if (q <= 0.0) continue;
            auto& ld = load[static_cast<size_t>(k)];
            auto& cld = cum_load[static_cast<size_t>(k)];
            for (int t = start; t <= c; ++t) ld[static_cast<size_t>(t)] += q;
            double running = 0.0;
            for (int t = 1; t <= t_ext; ++t) {
                running += ld[static_cast<size_t>(t)];
                cld[static_cast<size_t>(t)] = running;
            }
        }
    }
};

}  // namespace

DisaggregateResult disaggregate(const AggSchedule& agg, const Instance& inst,
                                const IntervalGrid& grid, UnplaceablePolicy policy) {
    auto graph = PrecGraph::from_instance(inst);
    auto delta = longest_path_deltas(graph);
    auto feas = check_feasible_agg(agg, inst, grid, delta);
    if (!feas.feasible())
        throw StructuralError("disaggregate: aggregated schedule is infeasible: " +
                              feas.violations.front().detail);

    DisaggregateResult result;
    result.schedule.t_ext = extended_horizon(grid);
    Ledger ledger(inst, result.schedule.t_ext);

    // Min-heap of jobs whose predecessors are all placed (or dropped), keyed
    // by (assigned interval, -profit, id).
    using Key = std::tuple<int, double, int>;
    std::priority_queue<Key, std::vector<Key>, std::greater<Key>> ready;
    std::map<int, int> outstanding;
    std::set<int> dropped;

    auto push_if_ready = [&](int id) {
        if (outstanding[id] == 0 && agg.scheduled(id)) {
            const Job& j = inst.job(id);
            ready.push({*agg.interval_of(id), -j.profit, id});
        }
    };

    for (int id : graph.nodes()) {
        int n = 0;
        for (int k : graph.preds_of(id))
            if (agg.scheduled(k)) ++n;
        // Unscheduled predecessors cannot exist for scheduled jobs in a
        // feasible aggregated schedule; count only scheduled ones.
        outstanding[id] = n;
        push_if_ready(id);
    }

    auto release_dependents = [&](int id) {
        for (int succ : graph.succs_of(id)) {
            if (--outstanding[succ] == 0) push_if_ready(succ);
        }
    };

    while (!ready.empty()) {
        auto [s, neg_profit, id] = ready.top();
        ready.pop();
        const Job& j = inst.job(id);

        bool pred_dropped = false;
        int t = static_cast<int>(std::floor(grid.tau(s - 1))) + 1;
        for (int k : graph.preds_of(id)) {
            if (dropped.count(k)) {
                pred_dropped = true;
                break;
            }
            if (auto ck = result.schedule.completion_of(k))
                t = std::max(t, *ck + j.processing_time);
        }
        if (pred_dropped) {
            dropped.insert(id);
            release_dependents(id);
            continue;
        }

        while (t <= result.schedule.t_ext && !ledger.fits(j, t)) ++t;
        if (t > result.schedule.t_ext) {
            if (inst.semantics == Semantics::Cumulative || policy == UnplaceablePolicy::Fail)
                throw StructuralError("disaggregate: job " + std::to_string(id) +
                                      " cannot be placed within the extended horizon " +
                                      std::to_string(result.schedule.t_ext));
            dropped.insert(id);
            release_dependents(id);
            continue;
        }

        ledger.place(j, t);
        result.schedule.completion[id] = t;
        if (t > inst.horizon) result.beyond_horizon = true;
        release_dependents(id);
    }

    result.dropped.assign(dropped.begin(), dropped.end());
    return result;
}

}  // namespace geomsched
