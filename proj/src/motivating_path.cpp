#include "motiv/motivating_path.hpp"

#include "motiv/errors.hpp"

namespace motiv {

PathResult solve_motivating_path(const PlanningInstance& instance) {
    const TaskGraph& g = instance.graph;
    int n = g.vertex_count();
    std::vector<std::optional<Rational>> dist(n);
    std::vector<int> next(n, -1);
    dist[instance.t] = Rational(0);

    const auto& order = g.topo_order();
    for (int i = n; i-- > 0;) {
        int u = order[i];
        if (u == instance.t) continue;
        for (int e : g.out_edges(u)) {
            const Edge& edge = g.edge(e);
            if (!dist[edge.head]) continue;
            if (instance.salience * edge.weight + *dist[edge.head] >
                instance.reward)
                continue;  // the agent would not take this first step
            Rational cand = edge.weight + *dist[edge.head];
            if (!dist[u] || cand < *dist[u] ||
                (cand == *dist[u] &&
                 g.topo_pos(edge.head) < g.topo_pos(next[u]))) {
                dist[u] = cand;
                next[u] = edge.head;
            }
        }
    }

    PathResult result;
    if (!dist[instance.s]) return result;
    result.length = dist[instance.s];
    int u = instance.s;
    result.path.push_back(u);
    while (u != instance.t) {
        u = next[u];
        result.path.push_back(u);
    }
    return result;
}

Rational path_weight(const TaskGraph& graph, const std::vector<int>& path) {
    Rational total(0);
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        auto e = graph.edge_between(path[i], path[i + 1]);
        if (!e)
            fail(Errc::DanglingEndpoint,
                 "path uses missing edge " + graph.name(path[i]) + "->" +
                     graph.name(path[i + 1]));
        total += graph.edge(*e).weight;
    }
    return total;
}

PlanningInstance path_instance(const PlanningInstance& instance,
                               const std::vector<int>& path) {
    std::vector<int> edge_ids;
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        auto e = instance.graph.edge_between(path[i], path[i + 1]);
        if (!e)
            fail(Errc::DanglingEndpoint, "path edge missing from graph");
        edge_ids.push_back(*e);
    }
    PlanningInstance sub;
    sub.graph = instance.graph.edge_subgraph(edge_ids);
    sub.s = instance.s;
    sub.t = instance.t;
    sub.reward = instance.reward;
    sub.salience = instance.salience;
    return prune(sub);
}

}  // namespace motiv
