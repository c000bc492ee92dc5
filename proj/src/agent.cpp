#include "motiv/agent.hpp"

#include <algorithm>

#include "motiv/errors.hpp"

namespace motiv {

Rational perceived_path_cost(std::span<const Rational> edge_weights,
                             const Rational& salience) {
    if (edge_weights.empty()) return Rational(0);
    Rational cost = salience * edge_weights[0];
    for (size_t i = 1; i < edge_weights.size(); ++i) cost += edge_weights[i];
    return cost;
}

CostTable cost_table(const PlanningInstance& instance) {
    const TaskGraph& g = instance.graph;
    int n = g.vertex_count();
    CostTable table;
    table.true_dist.assign(n, Rational(0));
    table.perceived.assign(n, Rational(0));
    const auto& order = g.topo_order();
    for (int i = n; i-- > 0;) {
        int u = order[i];
        if (u == instance.t) continue;
        bool first = true;
        Rational best_true, best_perceived;
        for (int e : g.out_edges(u)) {
            const Edge& edge = g.edge(e);
            Rational through = edge.weight + table.true_dist[edge.head];
            Rational seen = instance.salience * edge.weight +
                            table.true_dist[edge.head];
            if (first || through < best_true) best_true = through;
            if (first || seen < best_perceived) best_perceived = seen;
            first = false;
        }
        // pruned instances guarantee an out-edge on every non-target vertex
        if (first)
            fail(Errc::TargetUnreachable,
                 "vertex '" + g.name(u) + "' cannot reach the target");
        table.true_dist[u] = best_true;
        table.perceived[u] = best_perceived;
    }
    return table;
}

std::vector<int> greedy_successors(const PlanningInstance& instance,
                                   const CostTable& table, int u) {
    const TaskGraph& g = instance.graph;
    std::vector<int> out;
    for (int e : g.out_edges(u)) {
        const Edge& edge = g.edge(e);
        if (instance.salience * edge.weight + table.true_dist[edge.head] ==
            table.perceived[u])
            out.push_back(edge.head);
    }
    std::sort(out.begin(), out.end(), [&](int a, int b) {
        return g.topo_pos(a) < g.topo_pos(b);
    });
    return out;
}

// Greedy-reachable set from s, without stopping at abandoning vertices
// (the set does not depend on r, and the yes/no answer is the same).
static std::vector<int> greedy_closure(const PlanningInstance& instance,
                                       const CostTable& table) {
    const TaskGraph& g = instance.graph;
    std::vector<bool> seen(g.vertex_count(), false);
    std::vector<int> stack{instance.s}, out;
    seen[instance.s] = true;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        out.push_back(u);
        if (u == instance.t) continue;
        for (int v : greedy_successors(instance, table, u)) {
            if (!seen[v]) {
                seen[v] = true;
                stack.push_back(v);
            }
        }
    }
    std::sort(out.begin(), out.end(), [&](int a, int b) {
        return g.topo_pos(a) < g.topo_pos(b);
    });
    return out;
}

MotivationReport is_motivating(const PlanningInstance& instance) {
    MotivationReport report;
    report.table = cost_table(instance);
    report.reachable = greedy_closure(instance, report.table);
    report.motivating = true;
    for (int u : report.reachable) {
        if (report.table.perceived[u] > instance.reward) {
            report.motivating = false;
            report.witness = u;  // topologically first abandoning vertex
            break;
        }
    }
    return report;
}

static void extend_trace(const PlanningInstance& instance,
                         const CostTable& table, std::vector<int>& walk,
                         TraceSet& out, size_t max_traces) {
    int u = walk.back();
    if (table.perceived[u] > instance.reward) {
        if (out.traces.size() >= max_traces) {
            out.truncated = true;
            return;
        }
        out.traces.push_back({walk, false, table.perceived[u]});
        return;
    }
    if (u == instance.t) {
        if (out.traces.size() >= max_traces) {
            out.truncated = true;
            return;
        }
        out.traces.push_back({walk, true, Rational(0)});
        return;
    }
    for (int v : greedy_successors(instance, table, u)) {
        if (out.truncated) return;
        walk.push_back(v);
        extend_trace(instance, table, walk, out, max_traces);
        walk.pop_back();
    }
}

TraceSet enumerate_traces(const PlanningInstance& instance, size_t max_traces) {
    CostTable table = cost_table(instance);
    TraceSet out;
    std::vector<int> walk{instance.s};
    extend_trace(instance, table, walk, out, max_traces);
    return out;
}

Rational min_reward(const PlanningInstance& instance) {
    CostTable table = cost_table(instance);
    Rational best(0);
    for (int u : greedy_closure(instance, table))
        best = max(best, table.perceived[u]);
    return best;
}

}  // namespace motiv
