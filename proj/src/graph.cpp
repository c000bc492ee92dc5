#include "motiv/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "motiv/errors.hpp"

namespace motiv {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::CycleDetected: return "CycleDetected";
        case Errc::NegativeWeight: return "NegativeWeight";
        case Errc::DanglingEndpoint: return "DanglingEndpoint";
        case Errc::DuplicateEdge: return "DuplicateEdge";
        case Errc::SelfLoop: return "SelfLoop";
        case Errc::DuplicateVertex: return "DuplicateVertex";
        case Errc::TargetUnreachable: return "TargetUnreachable";
        case Errc::BudgetExceeded: return "BudgetExceeded";
        case Errc::InstanceTooLarge: return "InstanceTooLarge";
        case Errc::InvalidEpsilon: return "InvalidEpsilon";
        case Errc::ZeroTarget: return "ZeroTarget";
        case Errc::NonIntegerWeights: return "NonIntegerWeights";
        case Errc::FormatError: return "FormatError";
    }
    return "Unknown";
}

TaskGraph TaskGraph::validate(const GraphData& data) {
    TaskGraph g;
    g.names_ = data.vertices;
    for (int i = 0; i < static_cast<int>(g.names_.size()); ++i) {
        if (!g.index_.emplace(g.names_[i], i).second)
            fail(Errc::DuplicateVertex, "vertex '" + g.names_[i] + "' listed twice");
    }
    std::set<std::pair<int, int>> seen;
    for (const auto& e : data.edges) {
        auto from = g.index_of(e.from);
        auto to = g.index_of(e.to);
        if (!from || !to)
            fail(Errc::DanglingEndpoint,
                 "edge " + e.from + "->" + e.to + " references unknown vertex");
        if (*from == *to)
            fail(Errc::SelfLoop, "self-loop at '" + e.from + "'");
        if (!seen.emplace(*from, *to).second)
            fail(Errc::DuplicateEdge, "parallel edge " + e.from + "->" + e.to);
        if (e.weight.is_negative())
            fail(Errc::NegativeWeight,
                 "edge " + e.from + "->" + e.to + " has weight " +
                     e.weight.to_string());
        g.edges_.push_back({*from, *to, e.weight});
    }
    g.build_adjacency_and_order();
    return g;
}

void TaskGraph::build_adjacency_and_order() {
    int n = vertex_count();
    out_.assign(n, {});
    in_.assign(n, {});
    for (int e = 0; e < edge_count(); ++e) {
        out_[edges_[e].tail].push_back(e);
        in_[edges_[e].head].push_back(e);
    }
    // Kahn's algorithm; the ready set is a min-heap on vertex input index,
    // which makes the order deterministic for a given input.
    std::vector<int> indeg(n);
    for (int v = 0; v < n; ++v) indeg[v] = in_degree(v);
    std::priority_queue<int, std::vector<int>, std::greater<>> ready;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) ready.push(v);
    topo_order_.clear();
    while (!ready.empty()) {
        int v = ready.top();
        ready.pop();
        topo_order_.push_back(v);
        for (int e : out_[v])
            if (--indeg[edges_[e].head] == 0) ready.push(edges_[e].head);
    }
    if (static_cast<int>(topo_order_.size()) != n)
        fail(Errc::CycleDetected, "graph contains a directed cycle");
    topo_pos_.assign(n, -1);
    for (int i = 0; i < n; ++i) topo_pos_[topo_order_[i]] = i;
}

std::optional<int> TaskGraph::index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

int TaskGraph::require(const std::string& name) const {
    auto idx = index_of(name);
    if (!idx) fail(Errc::DanglingEndpoint, "unknown vertex '" + name + "'");
    return *idx;
}

std::optional<int> TaskGraph::edge_between(int tail, int head) const {
    for (int e : out_[tail])
        if (edges_[e].head == head) return e;
    return std::nullopt;
}

ReachMatrix TaskGraph::reachability() const {
    int n = vertex_count();
    ReachMatrix reach(n);
    for (int i = n; i-- > 0;) {
        int u = topo_order_[i];
        for (int e : out_[u]) {
            int v = edges_[e].head;
            reach.set(u, v);
            reach.merge_row(u, v);
        }
    }
    return reach;
}

TaskGraph TaskGraph::induced(const std::vector<bool>& keep) const {
    GraphData data;
    for (int v = 0; v < vertex_count(); ++v)
        if (keep[v]) data.vertices.push_back(names_[v]);
    for (const Edge& e : edges_)
        if (keep[e.tail] && keep[e.head])
            data.edges.push_back({names_[e.tail], names_[e.head], e.weight});
    return validate(data);
}

TaskGraph TaskGraph::edge_subgraph(const std::vector<int>& edge_ids) const {
    GraphData data;
    data.vertices = names_;
    for (int e : edge_ids)
        data.edges.push_back(
            {names_[edges_[e].tail], names_[edges_[e].head], edges_[e].weight});
    return validate(data);
}

GraphData TaskGraph::to_data() const {
    GraphData data;
    data.vertices = names_;
    for (const Edge& e : edges_)
        data.edges.push_back({names_[e.tail], names_[e.head], e.weight});
    return data;
}

}  // namespace motiv
