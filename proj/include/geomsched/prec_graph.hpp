// Precedence DAG computations: closures, longest-path spans, per-interval
// modified transitive reduction, prioritized topological orders, max-closure
// preprocessing, and horizon pruning.
#ifndef GEOMSCHED_PREC_GRAPH_HPP
#define GEOMSCHED_PREC_GRAPH_HPP

#include <functional>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "geomsched/instance.hpp"
#include "geomsched/interval_grid.hpp"

namespace geomsched {

// Directed acyclic graph with an arc (j, k) for every k in P_j. Each arc
// carries length p_j (the tail job's processing time), so the longest path
// from j to i is the minimum span between the completion times of i and j.
class PrecGraph {
public:
    PrecGraph() = default;

    static PrecGraph from_instance(const Instance& inst);

    // node ids in insertion order
    const std::vector<int>& nodes() const { return nodes_; }
    void add_node(int id);
    // arc j -> k with length p_j; k must finish before j starts
    void add_arc(int j, int k, int length_pj);

    bool has_node(int id) const { return preds_.count(id) > 0; }
    const std::vector<int>& preds_of(int j) const;      // arc heads from j
    const std::vector<int>& succs_of(int k) const;      // arc tails into k
    int arc_length(int j) const;                        // p_j for arcs out of j

    // Nodes in an order where every node appears after all of preds_of(it).
    // Throws StructuralError naming a cycle witness if the graph is cyclic.
    std::vector<int> reverse_topological() const;  // preds first
    std::vector<int> topological() const;          // preds last

private:
    std::vector<int> nodes_;
    std::map<int, std::vector<int>> preds_;
    std::map<int, std::vector<int>> succs_;
    std::map<int, int> length_;  // node id -> outgoing arc length p_j
};

// Sparse longest-path spans Delta_{ji} for i in the transitive closure of j.
class DeltaMatrix {
public:
    // All (i, Delta_ji) pairs for a given j, ordered by i.
    const std::map<int, int>& row(int j) const;
    const std::map<int, std::map<int, int>>& rows() const { return rows_; }
    std::optional<int> span(int j, int i) const;
    void set(int j, int i, int delta) { rows_[j][i] = delta; }

private:
    std::map<int, std::map<int, int>> rows_;
    static const std::map<int, int> empty_;
};

// P-hat: every job reachable from j over precedence arcs.
std::map<int, std::set<int>> transitive_closure(const PrecGraph& g);

// Longest-path spans over the closure, via reverse-topological DP.
DeltaMatrix longest_path_deltas(const PrecGraph& g);

// Minimal arc set with the same closure (used by the period-level MIP).
// Returns job id -> reduced predecessor list, each sorted.
std::map<int, std::vector<int>> transitive_reduction(const PrecGraph& g);

struct IntervalArc {
    int job;      // j
    int pred;     // k in P-hat_j
    int s_limit;  // last interval where k may finish if j finishes in t
};

struct IntervalReduction {
    std::set<int> forced_zero;       // jobs that cannot finish in interval t
    std::vector<IntervalArc> arcs;   // surviving reduced arcs, sorted (job, pred)
};

// Per-interval modified transitive reduction. For interval t, a pair
// (j, k in P-hat_j) is infeasible when even a period-1 completion of k cannot
// support j finishing by tau_t (tau_t - Delta_jk < 1); otherwise the pair
// carries weight w = t - I(tau_t - Delta_jk), and an arc is dropped when some
// surviving two-arc path has w_ik + w_kj > w_ij, repeated to a fixpoint.
IntervalReduction interval_transitive_reduction(const DeltaMatrix& delta,
                                                const IntervalGrid& grid, int t);

// Priority for list scheduling: (assigned interval, -profit), jobs without an
// assignment sort last. Ties broken by ascending job id.
using JobPriority = std::function<std::pair<int, double>(int)>;

// Kahn's algorithm with a min-heap keyed by (priority, job id). The output
// respects precedence; among available jobs the lexicographically smallest
// (interval, -profit, id) comes first.
std::vector<int> topological_order(const PrecGraph& g, const JobPriority& priority);

// Maximum-weight closure of g under scaled weights (w_i if w_i <= 0, else
// alpha * w_i), solved exactly as a min-cut. The kept set is closed: every
// predecessor of a kept job is kept.
std::set<int> max_closure_preprocess(const PrecGraph& g,
                                     const std::map<int, double>& weights,
                                     double alpha);

// Jobs whose earliest possible completion (longest predecessor chain plus own
// duration) exceeds the limit.
std::set<int> prune_by_horizon(const DeltaMatrix& delta,
                               const std::map<int, int>& processing_time,
                               int limit);

}  // namespace geomsched

#endif
