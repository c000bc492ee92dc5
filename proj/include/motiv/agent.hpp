#pragma once

#include <optional>
#include <span>

#include "motiv/instance.hpp"

namespace motiv {

/// Per-vertex distances of a pruned instance: the true shortest remaining
/// distance to t, and the perceived cost zeta(u) = min over out-edges uv
/// of b*w(uv) + true_dist(v). Both are 0 at t, and perceived >= true_dist
/// everywhere since b >= 1.
struct CostTable {
    std::vector<Rational> true_dist;
    std::vector<Rational> perceived;
};

/// Perceived cost of a concrete plan: b times the first edge plus the
/// plain sum of the rest. The empty plan costs 0.
Rational perceived_path_cost(std::span<const Rational> edge_weights,
                             const Rational& salience);

CostTable cost_table(const PlanningInstance& instance);

/// All successors v of u achieving zeta(u); nonempty on pruned instances.
/// Sorted by topological position, so output order is deterministic.
std::vector<int> greedy_successors(const PlanningInstance& instance,
                                   const CostTable& table, int u);

struct MotivationReport {
    bool motivating = false;
    std::vector<int> reachable;  // greedy-reachable set R, topo-sorted
    std::optional<int> witness;  // an abandoning vertex the agent can hit
    CostTable table;
};

/// Decides whether the instance is motivating by checking zeta(u) <= r on
/// the greedy-reachable set. Abandonment is strict: zeta(u) > r; on a tie
/// the agent proceeds.
MotivationReport is_motivating(const PlanningInstance& instance);

struct AgentTrace {
    std::vector<int> walk;  // starts at s
    bool reached_target = false;
    Rational abandoned_cost;  // zeta at the last vertex, when abandoned
};

struct TraceSet {
    std::vector<AgentTrace> traces;
    bool truncated = false;  // true when max_traces was hit
};

/// Expands the agent's nondeterminism into all maximal greedy walks from
/// s. Exists for tests and CLI demonstration; carries an explicit budget.
TraceSet enumerate_traces(const PlanningInstance& instance, size_t max_traces);

/// Smallest reward that makes the instance motivating: max zeta over the
/// greedy-reachable set, which does not depend on r.
Rational min_reward(const PlanningInstance& instance);

}  // namespace motiv
