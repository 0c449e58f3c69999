#include "geomsched/mip_builder.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace geomsched {

std::string to_string(Formulation f) {
    switch (f) {
        case Formulation::OrigAt: return "orig-at";
        case Formulation::AggAt: return "agg-at";
        case Formulation::AggBy: return "agg-by";
    }
    return "orig-at";
}

Formulation formulation_from_string(const std::string& s) {
    if (s == "orig-at") return Formulation::OrigAt;
    if (s == "agg-at") return Formulation::AggAt;
    if (s == "agg-by") return Formulation::AggBy;
    throw ParamError("unknown formulation '" + s +
                     "' (expected orig-at, agg-at or agg-by)");
}

namespace {

std::string var_name(const char* prefix, int job, int period) {
    return std::string(prefix) + "_" + std::to_string(job) + "_" + std::to_string(period);
}

void require_valid(const Instance& inst) {
    auto report = validate_instance(inst);
    if (!report.ok())
        throw StructuralError("invalid instance: " + report.violations.front());
}

double discount(double rate, double t) { return std::pow(1.0 + rate, -t); }

}  // namespace

MipModel build_orig_at(const Instance& inst) {
    require_valid(inst);
    MipModel model;
    const int T = inst.horizon;
    const double r = inst.rate;

    // t < p_j eliminated by omission.
    std::map<int, int> first_t;
    for (const auto& j : inst.jobs) {
        first_t[j.id] = std::max(j.processing_time, 1);
        for (int t = first_t[j.id]; t <= T; ++t)
            model.add_var(var_name("x", j.id, t), j.id, t);
    }

    for (const auto& j : inst.jobs) {
        if (j.profit == 0.0) continue;
        for (int t = first_t[j.id]; t <= T; ++t) {
            int v = model.var_index(j.id, t);
            if (v >= 0) model.objective.push_back({v, j.profit * discount(r, t)});
        }
    }

    for (const auto& j : inst.jobs) {
        LinConstraint once;
        once.name = "once_" + std::to_string(j.id);
        once.rel = Relation::LessEqual;
        once.rhs = 1.0;
        for (int t = first_t[j.id]; t <= T; ++t) {
            int v = model.var_index(j.id, t);
            if (v >= 0) once.terms.push_back({v, 1.0});
        }
        if (!once.terms.empty()) model.constraints.push_back(std::move(once));
    }

    // Precedence over the minimal arc set.
    auto reduced = transitive_reduction(PrecGraph::from_instance(inst));
    for (const auto& j : inst.jobs) {
        for (int k : reduced[j.id]) {
            for (int t = first_t[j.id]; t <= T; ++t) {
                LinConstraint c;
                c.name = "prec_" + std::to_string(j.id) + "_" + std::to_string(k) + "_" +
                         std::to_string(t);
                c.rel = Relation::LessEqual;
                c.rhs = 0.0;
                for (int u = first_t[j.id]; u <= t; ++u) {
                    int v = model.var_index(j.id, u);
                    if (v >= 0) c.terms.push_back({v, 1.0});
                }
                for (int u = 1; u <= t - j.processing_time; ++u) {
                    int v = model.var_index(k, u);
                    if (v >= 0) c.terms.push_back({v, -1.0});
                }
                if (!c.terms.empty()) model.constraints.push_back(std::move(c));
            }
        }
    }

    for (int k = 0; k < inst.num_resources(); ++k) {
        const auto& res = inst.resources[static_cast<size_t>(k)];
        for (int t = 1; t <= T; ++t) {
            LinConstraint c;
            c.name = "res_" + std::to_string(res.id()) + "_" + std::to_string(t);
            c.rel = Relation::LessEqual;
            for (const auto& j : inst.jobs) {
                double q = j.demands[static_cast<size_t>(k)];
                if (q <= 0.0 || j.processing_time == 0) continue;
                if (inst.semantics == Semantics::Cumulative) {
                    // All consumption charged up to period t: finished jobs in
                    // full, running jobs for the periods already elapsed.
                    int hi = std::min(T, t + j.processing_time - 1);
                    for (int u = first_t[j.id]; u <= hi; ++u) {
                        double used = j.processing_time - std::max(0, u - t);
                        int v = model.var_index(j.id, u);
                        if (v >= 0 && used > 0.0) c.terms.push_back({v, q * used});
                    }
                } else {
                    // Jobs occupying period t: u in [t, t + p_j - 1].
                    int hi = std::min(T, t + j.processing_time - 1);
                    for (int u = std::max(first_t[j.id], t); u <= hi; ++u) {
                        int v = model.var_index(j.id, u);
                        if (v >= 0) c.terms.push_back({v, q});
                    }
                }
            }
            c.rhs = inst.semantics == Semantics::Cumulative
                        ? res.cumulative_available(t)
                        : res.available(t);
            if (!c.terms.empty()) model.constraints.push_back(std::move(c));
        }
    }

    return model;
}

namespace {

// Aggregated variable domain: X_{j,s} can exist only if interval s contains
// an integer period >= lo_j, where lo_j is the earliest completion the job
// could have at all (its processing time, and one period after the longest
// span to any transitive predecessor).
struct AggDomain {
    std::map<int, long long> lo;              // job id -> earliest completion
    std::map<int, std::vector<int>> intervals;  // job id -> existing s, ascending

    AggDomain(const Instance& inst, const IntervalGrid& grid, const DeltaMatrix& delta) {
        for (const auto& j : inst.jobs) {
            long long lo_j = std::max<long long>(1, j.processing_time);
            for (const auto& [k, span] : delta.row(j.id))
                lo_j = std::max(lo_j, static_cast<long long>(span) + 1);
            lo[j.id] = lo_j;
            auto& list = intervals[j.id];
            for (int s = 0; s <= grid.num_intervals(); ++s) {
                long long first = grid.first_period_in(s);
                if (first == 0) continue;  // no integer period in the interval
                if (grid.last_period_in(s) < lo_j) continue;
                list.push_back(s);
            }
        }
    }
};

int ceil_time(double x) { return static_cast<int>(std::ceil(x)); }

// One aggregated resource row: terms as (job, interval) -> coefficient.
struct AggResourceRow {
    std::string name;
    std::vector<std::tuple<int, int, double>> terms;  // (job, interval, coef)
    double rhs = 0.0;
};

// Resource rows for one resource across all intervals.
//
// Cumulative: total consumption charged against supply through ceil(tau_t),
// with running jobs charged partially (p - (tau_u - tau_t)^+).
//
// Renewable supply does not carry over, so the continuous-time interval row
// is not implied by the per-period constraints once interval boundaries fall
// between periods; a completion early in its interval back-loads consumption
// into earlier periods. Two families that every period-feasible schedule
// does satisfy: prefix rows over the integer periods up to the interval end,
// and per-interval rows charging each job its guaranteed overlap with the
// interval's own periods.
std::vector<AggResourceRow> agg_resource_rows(const Instance& inst,
                                              const IntervalGrid& grid,
                                              const AggDomain& domain, int k) {
    std::vector<AggResourceRow> rows;
    const auto& res = inst.resources[static_cast<size_t>(k)];
    const int T_I = grid.num_intervals();
    for (int t = 0; t <= T_I; ++t) {
        if (inst.semantics == Semantics::Cumulative) {
            AggResourceRow row;
            row.name = "res_" + std::to_string(res.id()) + "_" + std::to_string(t);
            const double tau_t = grid.tau(t);
            for (const auto& j : inst.jobs) {
                double q = j.demands[static_cast<size_t>(k)];
                if (q <= 0.0 || j.processing_time == 0) continue;
                for (int u : domain.intervals.at(j.id)) {
                    double used = j.processing_time - std::max(0.0, grid.tau(u) - tau_t);
                    if (used > 0.0) row.terms.push_back({j.id, u, q * used});
                }
            }
            row.rhs = res.cumulative_available(ceil_time(tau_t));
            if (!row.terms.empty()) rows.push_back(std::move(row));
            continue;
        }

        long long first = static_cast<long long>(std::floor(grid.tau(t - 1))) + 1;
        long long last = grid.last_period_in(t);
        if (last < first) continue;  // no integer period ends here

        AggResourceRow prefix;
        prefix.name = "res_" + std::to_string(res.id()) + "_" + std::to_string(t);
        AggResourceRow peak;
        peak.name = "peak_" + std::to_string(res.id()) + "_" + std::to_string(t);
        for (const auto& j : inst.jobs) {
            double q = j.demands[static_cast<size_t>(k)];
            if (q <= 0.0 || j.processing_time == 0) continue;
            long long p = j.processing_time;
            for (int u : domain.intervals.at(j.id)) {
                long long last_u = grid.last_period_in(u);
                // Consumption through period `last` holds for any completion
                // in interval u, since completions cannot exceed last_u.
                long long by_end = p - std::max<long long>(0, last_u - last);
                if (by_end > 0)
                    prefix.terms.push_back({j.id, u, q * static_cast<double>(by_end)});
                if (u < t) continue;
                // Within the interval's own periods, a job is only guaranteed
                // its overlap under the latest completion (u > t), or the one
                // period it certainly occupies (u == t).
                long long overlap =
                    u == t ? 1
                           : last - std::max(last_u - p + 1, first) + 1;
                if (overlap > 0)
                    peak.terms.push_back({j.id, u, q * static_cast<double>(overlap)});
            }
        }
        prefix.rhs = res.cumulative_available(static_cast<int>(last));
        peak.rhs = res.cumulative_available(static_cast<int>(last)) -
                   res.cumulative_available(static_cast<int>(first) - 1);
        if (!prefix.terms.empty()) rows.push_back(std::move(prefix));
        if (!peak.terms.empty()) rows.push_back(std::move(peak));
    }
    return rows;
}

}  // namespace

MipModel build_agg_at(const Instance& inst, const IntervalGrid& grid,
                      const DeltaMatrix& delta) {
    require_valid(inst);
    MipModel model;
    AggDomain domain(inst, grid, delta);
    const double r = inst.rate;
    const int T_I = grid.num_intervals();

    for (const auto& j : inst.jobs)
        for (int s : domain.intervals[j.id])
            model.add_var(var_name("X", j.id, s), j.id, s);

    for (const auto& j : inst.jobs) {
        if (j.profit == 0.0) continue;
        for (int s : domain.intervals[j.id]) {
            int v = model.var_index(j.id, s);
            double t_disc = j.profit > 0.0 ? grid.interval_start_time(s)
                                           : grid.interval_end_time(s);
            model.objective.push_back({v, j.profit * discount(r, t_disc)});
        }
    }

    for (const auto& j : inst.jobs) {
        if (domain.intervals[j.id].empty()) continue;
        LinConstraint once;
        once.name = "once_" + std::to_string(j.id);
        once.rel = Relation::LessEqual;
        once.rhs = 1.0;
        for (int s : domain.intervals[j.id])
            once.terms.push_back({model.var_index(j.id, s), 1.0});
        model.constraints.push_back(std::move(once));
    }

    for (int t = 0; t <= T_I; ++t) {
        auto reduction = interval_transitive_reduction(delta, grid, t);
        for (const auto& arc : reduction.arcs) {
            LinConstraint c;
            c.name = "prec_" + std::to_string(arc.job) + "_" + std::to_string(arc.pred) +
                     "_" + std::to_string(t);
            c.rel = Relation::LessEqual;
            c.rhs = 0.0;
            for (int u : domain.intervals[arc.job]) {
                if (u > t) break;
                c.terms.push_back({model.var_index(arc.job, u), 1.0});
            }
            if (c.terms.empty()) continue;
            for (int u : domain.intervals[arc.pred]) {
                if (u > arc.s_limit) break;
                c.terms.push_back({model.var_index(arc.pred, u), -1.0});
            }
            model.constraints.push_back(std::move(c));
        }
    }

    for (int k = 0; k < inst.num_resources(); ++k) {
        for (auto& row : agg_resource_rows(inst, grid, domain, k)) {
            LinConstraint c;
            c.name = std::move(row.name);
            c.rel = Relation::LessEqual;
            c.rhs = row.rhs;
            for (const auto& [job, u, coef] : row.terms) {
                int v = model.var_index(job, u);
                if (v >= 0) c.terms.push_back({v, coef});
            }
            if (!c.terms.empty()) model.constraints.push_back(std::move(c));
        }
    }

    return model;
}

MipModel build_agg_by(const Instance& inst, const IntervalGrid& grid,
                      const DeltaMatrix& delta) {
    require_valid(inst);
    MipModel model;
    AggDomain domain(inst, grid, delta);
    const double r = inst.rate;
    const int T_I = grid.num_intervals();

    for (const auto& j : inst.jobs)
        for (int s : domain.intervals[j.id])
            model.add_var(var_name("Y", j.id, s), j.id, s);

    // Y_{j,t} for a t without its own variable aliases the latest existing
    // variable at or below t (X_{j,t} = 0 there), or zero below the first.
    auto alias = [&](int job, int t) -> int {
        const auto& list = domain.intervals.at(job);
        int found = -1;
        for (int s : list) {
            if (s > t) break;
            found = s;
        }
        return found < 0 ? -1 : model.var_index(job, found);
    };

    // X_{j,s} = Y_{j,s} - Y_{j,prev(s)} expanded into an accumulator.
    auto add_diff = [&](std::map<int, double>& acc, int job, int s, double coef) {
        const auto& list = domain.intervals.at(job);
        int prev = -1;
        for (int u : list) {
            if (u >= s) break;
            prev = u;
        }
        acc[model.var_index(job, s)] += coef;
        if (prev >= 0) acc[model.var_index(job, prev)] -= coef;
    };

    {
        std::map<int, double> acc;
        for (const auto& j : inst.jobs) {
            if (j.profit == 0.0) continue;
            for (int s : domain.intervals[j.id]) {
                double t_disc = j.profit > 0.0 ? grid.interval_start_time(s)
                                               : grid.interval_end_time(s);
                add_diff(acc, j.id, s, j.profit * discount(r, t_disc));
            }
        }
        for (const auto& [v, coef] : acc)
            if (coef != 0.0) model.objective.push_back({v, coef});
    }

    for (const auto& j : inst.jobs) {
        const auto& list = domain.intervals[j.id];
        for (size_t i = 1; i < list.size(); ++i) {
            LinConstraint c;
            c.name = "mono_" + std::to_string(j.id) + "_" + std::to_string(list[i]);
            c.rel = Relation::LessEqual;
            c.rhs = 0.0;
            c.terms.push_back({model.var_index(j.id, list[i - 1]), 1.0});
            c.terms.push_back({model.var_index(j.id, list[i]), -1.0});
            model.constraints.push_back(std::move(c));
        }
    }

    std::set<std::pair<int, int>> emitted;  // (lhs var, rhs var or -1)
    for (int t = 0; t <= T_I; ++t) {
        auto reduction = interval_transitive_reduction(delta, grid, t);
        for (const auto& arc : reduction.arcs) {
            int lhs = alias(arc.job, t);
            if (lhs < 0) continue;
            int rhs = alias(arc.pred, arc.s_limit);
            if (!emitted.insert({lhs, rhs}).second) continue;
            LinConstraint c;
            c.name = "prec_" + std::to_string(arc.job) + "_" + std::to_string(arc.pred) +
                     "_" + std::to_string(t);
            c.rel = Relation::LessEqual;
            c.rhs = 0.0;
            c.terms.push_back({lhs, 1.0});
            if (rhs >= 0) c.terms.push_back({rhs, -1.0});
            model.constraints.push_back(std::move(c));
        }
    }

    for (int k = 0; k < inst.num_resources(); ++k) {
        for (auto& row : agg_resource_rows(inst, grid, domain, k)) {
            std::map<int, double> acc;
            for (const auto& [job, u, coef] : row.terms) add_diff(acc, job, u, coef);
            LinConstraint c;
            c.name = std::move(row.name);
            c.rel = Relation::LessEqual;
            c.rhs = row.rhs;
            for (const auto& [v, coef] : acc)
                if (coef != 0.0) c.terms.push_back({v, coef});
            if (!c.terms.empty()) model.constraints.push_back(std::move(c));
        }
    }

    return model;
}

AtSchedule at_schedule_from_solution(const MipModel& model,
                                     const std::map<std::string, double>& values) {
    AtSchedule sched;
    for (const auto& v : model.vars) {
        auto it = values.find(v.name);
        if (it == values.end() || it->second < 0.5) continue;
        auto existing = sched.completion.find(v.job);
        if (existing == sched.completion.end() || v.period < existing->second)
            sched.completion[v.job] = v.period;
    }
    for (const auto& [job, t] : sched.completion) sched.t_ext = std::max(sched.t_ext, t);
    return sched;
}

AggSchedule agg_schedule_from_solution(const MipModel& model,
                                       const std::map<std::string, double>& values,
                                       Formulation kind) {
    AggSchedule sched;
    if (kind == Formulation::AggAt) {
        for (const auto& v : model.vars) {
            auto it = values.find(v.name);
            if (it == values.end() || it->second < 0.5) continue;
            auto existing = sched.interval.find(v.job);
            if (existing == sched.interval.end() || v.period < existing->second)
                sched.interval[v.job] = v.period;
        }
    } else if (kind == Formulation::AggBy) {
        // Job finishes in the first interval whose step variable is 1.
        for (const auto& v : model.vars) {
            auto it = values.find(v.name);
            if (it == values.end() || it->second < 0.5) continue;
            auto existing = sched.interval.find(v.job);
            if (existing == sched.interval.end() || v.period < existing->second)
                sched.interval[v.job] = v.period;
        }
    } else {
        throw ParamError("agg_schedule_from_solution requires an aggregated formulation");
    }
    return sched;
}

}  // namespace geomsched
