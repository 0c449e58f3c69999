#include "geomsched/prec_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

namespace geomsched {

const std::map<int, int> DeltaMatrix::empty_{};

const std::map<int, int>& DeltaMatrix::row(int j) const {
    auto it = rows_.find(j);
    return it == rows_.end() ? empty_ : it->second;
}

std::optional<int> DeltaMatrix::span(int j, int i) const {
    auto it = rows_.find(j);
    if (it == rows_.end()) return std::nullopt;
    auto jt = it->second.find(i);
    if (jt == it->second.end()) return std::nullopt;
    return jt->second;
}

PrecGraph PrecGraph::from_instance(const Instance& inst) {
    PrecGraph g;
    for (const auto& j : inst.jobs) g.add_node(j.id);
    for (const auto& j : inst.jobs)
        for (int k : j.preds) g.add_arc(j.id, k, j.processing_time);
    return g;
}

void PrecGraph::add_node(int id) {
    if (preds_.count(id)) return;
    nodes_.push_back(id);
    preds_[id];
    succs_[id];
    length_.emplace(id, 0);
}

void PrecGraph::add_arc(int j, int k, int length_pj) {
    add_node(j);
    add_node(k);
    preds_[j].push_back(k);
    succs_[k].push_back(j);
    length_[j] = length_pj;
}

const std::vector<int>& PrecGraph::preds_of(int j) const {
    static const std::vector<int> none;
    auto it = preds_.find(j);
    return it == preds_.end() ? none : it->second;
}

const std::vector<int>& PrecGraph::succs_of(int k) const {
    static const std::vector<int> none;
    auto it = succs_.find(k);
    return it == succs_.end() ? none : it->second;
}

int PrecGraph::arc_length(int j) const {
    auto it = length_.find(j);
    return it == length_.end() ? 0 : it->second;
}

std::vector<int> PrecGraph::reverse_topological() const {
    // Kahn over arcs j -> k: emit nodes whose preds are all emitted.
    std::map<int, int> outstanding;  // unemitted preds per node
    for (int id : nodes_) outstanding[id] = static_cast<int>(preds_of(id).size());

    std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
    for (int id : nodes_)
        if (outstanding[id] == 0) ready.push(id);

    std::vector<int> order;
    order.reserve(nodes_.size());
    while (!ready.empty()) {
        int k = ready.top();
        ready.pop();
        order.push_back(k);
        for (int j : succs_of(k))
            if (--outstanding[j] == 0) ready.push(j);
    }
    if (order.size() != nodes_.size()) {
        std::ostringstream os;
        os << "precedence graph has a cycle through jobs {";
        bool first = true;
        for (auto& [id, n] : outstanding)
            if (n > 0) {
                if (!first) os << ",";
                os << id;
                first = false;
            }
        os << "}";
        throw StructuralError(os.str());
    }
    return order;
}

std::vector<int> PrecGraph::topological() const {
    auto order = reverse_topological();
    std::reverse(order.begin(), order.end());
    return order;
}

std::map<int, std::set<int>> transitive_closure(const PrecGraph& g) {
    std::map<int, std::set<int>> closure;
    for (int j : g.reverse_topological()) {
        auto& cj = closure[j];
        for (int k : g.preds_of(j)) {
            cj.insert(k);
            const auto& ck = closure[k];
            cj.insert(ck.begin(), ck.end());
        }
    }
    return closure;
}

DeltaMatrix longest_path_deltas(const PrecGraph& g) {
    DeltaMatrix delta;
    std::map<int, std::map<int, int>> best;  // j -> i -> span
    for (int j : g.reverse_topological()) {
        auto& row = best[j];
        int w = g.arc_length(j);
        for (int k : g.preds_of(j)) {
            auto it = row.find(k);
            if (it == row.end() || it->second < w) row[k] = w;
            for (const auto& [i, span_ki] : best[k]) {
                int cand = w + span_ki;
                auto jt = row.find(i);
                if (jt == row.end() || jt->second < cand) row[i] = cand;
            }
        }
        for (const auto& [i, d] : row) delta.set(j, i, d);
    }
    return delta;
}

std::map<int, std::vector<int>> transitive_reduction(const PrecGraph& g) {
    auto closure = transitive_closure(g);
    std::map<int, std::vector<int>> reduced;
    for (int j : g.nodes()) {
        std::set<int> direct(g.preds_of(j).begin(), g.preds_of(j).end());
        std::vector<int> kept;
        for (int k : direct) {
            // (j, k) is redundant iff k is reachable through another pred.
            bool implied = false;
            for (int m : direct) {
                if (m == k) continue;
                if (closure[m].count(k)) { implied = true; break; }
            }
            if (!implied) kept.push_back(k);
        }
        reduced[j] = std::move(kept);
    }
    return reduced;
}

IntervalReduction interval_transitive_reduction(const DeltaMatrix& delta,
                                                const IntervalGrid& grid, int t) {
    IntervalReduction result;
    const double tau_t = grid.tau(t);

    // Candidate arcs with weights. A job is forced out of interval t when the
    // span to some transitive predecessor exceeds tau_t.
    std::map<std::pair<int, int>, int> weight;   // surviving (j,k) -> w
    std::map<std::pair<int, int>, int> s_limit;
    for (const auto& [j, row] : delta.rows()) {
        if (row.empty()) continue;
        bool forced = false;
        for (const auto& [k, span] : row)
            if (tau_t < static_cast<double>(span)) { forced = true; break; }
        if (forced) {
            result.forced_zero.insert(j);
            continue;
        }
        for (const auto& [k, span] : row) {
            int limit = grid.interval_of(tau_t - static_cast<double>(span));
            weight[{j, k}] = t - limit;
            s_limit[{j, k}] = limit;
        }
    }

    // Modified transitive reduction: drop (j, k) whenever a surviving two-arc
    // path j -> m -> k is at least as restrictive, repeated to a fixpoint.
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = weight.begin(); it != weight.end();) {
            auto [j, k] = it->first;
            bool redundant = false;
            const auto& row = delta.row(j);
            for (const auto& [m, unused] : row) {
                if (m == k) continue;
                auto jm = weight.find({j, m});
                auto mk = weight.find({m, k});
                if (jm != weight.end() && mk != weight.end() &&
                    it->second < jm->second + mk->second) {
                    redundant = true;
                    break;
                }
            }
            if (redundant) {
                s_limit.erase(it->first);
                it = weight.erase(it);
                changed = true;
            } else {
                ++it;
            }
        }
    }

    for (const auto& [arc, limit] : s_limit)
        result.arcs.push_back({arc.first, arc.second, limit});
    return result;
}

std::vector<int> topological_order(const PrecGraph& g, const JobPriority& priority) {
    using Key = std::tuple<int, double, int>;  // (interval, -profit, id)
    auto key_of = [&priority](int id) {
        auto [interval, neg_profit] = priority(id);
        return Key{interval, neg_profit, id};
    };

    std::map<int, int> outstanding;
    for (int id : g.nodes()) outstanding[id] = static_cast<int>(g.preds_of(id).size());

    std::priority_queue<Key, std::vector<Key>, std::greater<Key>> ready;
    for (int id : g.nodes())
        if (outstanding[id] == 0) ready.push(key_of(id));

    std::vector<int> order;
    order.reserve(g.nodes().size());
    while (!ready.empty()) {
        int k = std::get<2>(ready.top());
        ready.pop();
        order.push_back(k);
        for (int j : g.succs_of(k))
            if (--outstanding[j] == 0) ready.push(key_of(j));
    }
    if (order.size() != g.nodes().size())
        throw StructuralError("topological_order: precedence graph has a cycle");
    return order;
}

namespace {

// Dinic max-flow on a small dense-ish network; exact on integral-capacity
// layered graphs and fine for the closure networks we build (double caps with
// an explicit infinite sentinel).
class MaxFlow {
public:
    explicit MaxFlow(int n) : head_(static_cast<size_t>(n), -1) {}

    void add_edge(int u, int v, double cap) {
        edges_.push_back({v, head_[static_cast<size_t>(u)], cap});
        head_[static_cast<size_t>(u)] = static_cast<int>(edges_.size()) - 1;
        edges_.push_back({u, head_[static_cast<size_t>(v)], 0.0});
        head_[static_cast<size_t>(v)] = static_cast<int>(edges_.size()) - 1;
    }

    double run(int s, int t) {
        double flow = 0.0;
        while (bfs(s, t)) {
            iter_ = head_;
            double f;
            while ((f = dfs(s, t, std::numeric_limits<double>::infinity())) > 1e-12)
                flow += f;
        }
        return flow;
    }

    // After run(), nodes reachable from s in the residual graph.
    std::vector<bool> min_cut_side(int s) const {
        std::vector<bool> side(head_.size(), false);
        std::vector<int> stack{s};
        side[static_cast<size_t>(s)] = true;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int e = head_[static_cast<size_t>(u)]; e != -1; e = edges_[static_cast<size_t>(e)].next) {
                const auto& ed = edges_[static_cast<size_t>(e)];
                if (ed.cap > 1e-12 && !side[static_cast<size_t>(ed.to)]) {
                    side[static_cast<size_t>(ed.to)] = true;
                    stack.push_back(ed.to);
                }
            }
        }
        return side;
    }

private:
    struct Edge {
        int to;
        int next;
        double cap;
    };

    bool bfs(int s, int t) {
        level_.assign(head_.size(), -1);
        std::queue<int> q;
        q.push(s);
        level_[static_cast<size_t>(s)] = 0;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int e = head_[static_cast<size_t>(u)]; e != -1; e = edges_[static_cast<size_t>(e)].next) {
                const auto& ed = edges_[static_cast<size_t>(e)];
                if (ed.cap > 1e-12 && level_[static_cast<size_t>(ed.to)] < 0) {
                    level_[static_cast<size_t>(ed.to)] = level_[static_cast<size_t>(u)] + 1;
                    q.push(ed.to);
                }
            }
        }
        return level_[static_cast<size_t>(t)] >= 0;
    }

    double dfs(int u, int t, double limit) {
        if (u == t) return limit;
        for (int& e = iter_[static_cast<size_t>(u)]; e != -1; e = edges_[static_cast<size_t>(e)].next) {
            auto& ed = edges_[static_cast<size_t>(e)];
            if (ed.cap > 1e-12 && level_[static_cast<size_t>(ed.to)] == level_[static_cast<size_t>(u)] + 1) {
                double f = dfs(ed.to, t, std::min(limit, ed.cap));
                if (f > 1e-12) {
                    ed.cap -= f;
                    edges_[static_cast<size_t>(e ^ 1)].cap += f;
                    return f;
                }
            }
        }
        return 0.0;
    }

    std::vector<int> head_;
    std::vector<int> level_;
    std::vector<int> iter_;
    std::vector<Edge> edges_;
};

}  // namespace

std::set<int> max_closure_preprocess(const PrecGraph& g,
                                     const std::map<int, double>& weights,
                                     double alpha) {
    const auto& nodes = g.nodes();
    const int n = static_cast<int>(nodes.size());
    std::map<int, int> index;
    for (int i = 0; i < n; ++i) index[nodes[static_cast<size_t>(i)]] = i;

    std::vector<double> w(static_cast<size_t>(n), 0.0);
    double pos_total = 0.0;
    for (int i = 0; i < n; ++i) {
        auto it = weights.find(nodes[static_cast<size_t>(i)]);
        double wi = it == weights.end() ? 0.0 : it->second;
        w[static_cast<size_t>(i)] = wi <= 0.0 ? wi : alpha * wi;
        if (w[static_cast<size_t>(i)] > 0.0) pos_total += w[static_cast<size_t>(i)];
    }

    // Standard closure network: source -> positive nodes, negative -> sink,
    // infinite arcs along j -> pred(j) so a kept job drags its closure in.
    const int source = n;
    const int sink = n + 1;
    const double inf = pos_total + 1.0;
    MaxFlow flow(n + 2);
    for (int i = 0; i < n; ++i) {
        if (w[static_cast<size_t>(i)] > 0.0) flow.add_edge(source, i, w[static_cast<size_t>(i)]);
        else if (w[static_cast<size_t>(i)] < 0.0) flow.add_edge(i, sink, -w[static_cast<size_t>(i)]);
        for (int k : g.preds_of(nodes[static_cast<size_t>(i)]))
            flow.add_edge(i, index.at(k), inf);
    }
    flow.run(source, sink);
    auto side = flow.min_cut_side(source);

    std::set<int> kept;
    for (int i = 0; i < n; ++i)
        if (side[static_cast<size_t>(i)]) kept.insert(nodes[static_cast<size_t>(i)]);
    return kept;
}

std::set<int> prune_by_horizon(const DeltaMatrix& delta,
                               const std::map<int, int>& processing_time,
                               int limit) {
    if (limit < 1) throw ParamError("horizon limit must be >= 1");
    std::set<int> removed;
    for (const auto& [j, p_j] : processing_time) {
        // Earliest completion: own duration, or the longest chain through any
        // transitive predecessor plus that predecessor's own duration.
        long long earliest = p_j;
        for (const auto& [k, span] : delta.row(j)) {
            auto it = processing_time.find(k);
            long long pk = it == processing_time.end() ? 0 : it->second;
            earliest = std::max(earliest, static_cast<long long>(span) + pk);
        }
        if (earliest > limit) removed.insert(j);
    }
    return removed;
}

}  // namespace geomsched
