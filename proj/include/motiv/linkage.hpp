#pragma once

#include <optional>
#include <string>
#include <vector>

#include "motiv/budget.hpp"
#include "motiv/rational.hpp"

namespace motiv {

/// One link of an exact motivating k-linkage: a path from source to sink
/// of total weight exactly `length`, motivating for an agent with the
/// link's own salience factor and reward.
struct Link {
    int source = -1;
    int sink = -1;
    long long length = 0;
    Rational salience;  // b_i >= 1
    Rational reward;    // may be negative; such links are unsatisfiable
};

/// Integer-weight DAG plus terminals. `origin` maps each vertex to the
/// vertex it copies; it is the identity until normalize_terminals
/// introduces terminal copies.
struct LinkageInstance {
    std::vector<std::string> names;
    struct IntEdge {
        int tail = -1, head = -1;
        long long weight = 0;
    };
    std::vector<IntEdge> edges;
    std::vector<Link> links;
    long long total_weight = 0;  // W, sum of edge weights
    std::vector<int> origin;

    int vertex_count() const { return static_cast<int>(names.size()); }
    void reset_origin();
    /// Recomputes total_weight and checks acyclicity, weight and terminal
    /// sanity. Call after hand-building an instance.
    void finalize();
};

/// Preprocessing required by solve_linkage: every terminal occurrence gets
/// its own vertex (repeated terminals are copied), sources keep only
/// out-edges, sinks keep only in-edges. Instances that are already in this
/// shape come back unchanged.
LinkageInstance normalize_terminals(const LinkageInstance& instance);

struct LinkageSolution {
    std::vector<std::vector<int>> paths;  // one vertex sequence per link
};

/// Decides the exact motivating k-linkage problem by the Boolean DP over
/// (head vertex, remaining length) tuples and reconstructs one solution.
/// The table is kept sparse; materialized cells are charged to `budget`.
/// Requires a normalized instance with k >= 1.
std::optional<LinkageSolution> solve_linkage(const LinkageInstance& instance,
                                             Budget& budget);

/// Checks the three solution invariants (endpoints and exact lengths,
/// internal vertex-disjointness, per-step motivation) without consulting
/// the DP. Returns an explanation or nothing when the solution is valid.
std::optional<std::string> check_linkage_solution(
    const LinkageInstance& instance, const LinkageSolution& solution);

}  // namespace motiv
