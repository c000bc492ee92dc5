#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "motiv/rational.hpp"

namespace motiv {

/// Raw graph description as it arrives from files or test literals,
/// before any validation has happened.
struct GraphData {
    std::vector<std::string> vertices;
    struct EdgeData {
        std::string from, to;
        Rational weight;
    };
    std::vector<EdgeData> edges;
};

struct Edge {
    int tail = -1;
    int head = -1;
    Rational weight;
};

/// Row-per-vertex bit matrix; reach(u, v) answers "is v reachable from u".
class ReachMatrix {
public:
    ReachMatrix() = default;
    ReachMatrix(int n) : n_(n), words_((n + 63) / 64), bits_(size_t(n) * words_, 0) {}

    void set(int u, int v) { bits_[size_t(u) * words_ + v / 64] |= 1ull << (v % 64); }
    bool get(int u, int v) const {
        return bits_[size_t(u) * words_ + v / 64] >> (v % 64) & 1;
    }
    void merge_row(int into, int from) {
        for (int w = 0; w < words_; ++w)
            bits_[size_t(into) * words_ + w] |= bits_[size_t(from) * words_ + w];
    }

private:
    int n_ = 0;
    int words_ = 0;
    std::vector<uint64_t> bits_;
};

/// Validated weighted DAG. Construction via `validate` is the only way to
/// obtain one, so every TaskGraph is acyclic, has non-negative weights, no
/// self-loops and no parallel edges. Vertex ids are opaque strings mapped
/// to dense indices; the stored topological order breaks ties by input
/// order, so it is deterministic.
class TaskGraph {
public:
    TaskGraph() = default;  // empty graph; populate via validate

    /// Checks the raw data and builds the indexed graph.
    /// Throws Error with DanglingEndpoint, DuplicateVertex, DuplicateEdge,
    /// SelfLoop, CycleDetected or NegativeWeight.
    static TaskGraph validate(const GraphData& data);

    int vertex_count() const { return static_cast<int>(names_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    const std::string& name(int v) const { return names_[v]; }
    std::optional<int> index_of(const std::string& name) const;
    int require(const std::string& name) const;  // throws DanglingEndpoint

    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int e) const { return edges_[e]; }
    const std::vector<int>& out_edges(int v) const { return out_[v]; }
    const std::vector<int>& in_edges(int v) const { return in_[v]; }
    int out_degree(int v) const { return static_cast<int>(out_[v].size()); }
    int in_degree(int v) const { return static_cast<int>(in_[v].size()); }

    std::optional<int> edge_between(int tail, int head) const;

    const std::vector<int>& topo_order() const { return topo_order_; }
    int topo_pos(int v) const { return topo_pos_[v]; }

    /// Transitive closure; reach(u, u) is false, edges count as reachable.
    ReachMatrix reachability() const;

    /// Induced subgraph on `keep` (order preserved), with the same names.
    TaskGraph induced(const std::vector<bool>& keep) const;

    /// Subgraph with exactly the given edge indices (all vertices kept).
    TaskGraph edge_subgraph(const std::vector<int>& edge_ids) const;

    GraphData to_data() const;

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> out_, in_;  // edge ids, in input order
    std::vector<int> topo_order_, topo_pos_;

    void build_adjacency_and_order();
};

}  // namespace motiv
