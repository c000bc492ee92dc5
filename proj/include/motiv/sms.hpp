#pragma once

#include <functional>
#include <optional>

#include "motiv/agent.hpp"
#include "motiv/budget.hpp"
#include "motiv/instance.hpp"
#include "motiv/linkage.hpp"

namespace motiv {

/// One guess of the "interesting" vertices of a candidate subgraph:
/// k branching vertices in their unique topological chain order, the
/// next-step vertex the agent takes at each, the tempting shortcut
/// neighbor it rejects, and the (deduplicated) merge vertices.
struct GuessFrame {
    std::vector<int> branch;   // B, out-degree >= 2 in G, chain-ordered
    std::vector<int> star;    // B*, star[i] in N(branch[i]), distinct
    std::vector<int> diamond;  // B<>, in N(branch[i]) minus star[i]
    std::vector<int> merge;    // B>, distinct members of the multiset
};

/// Reachability graph H on the frame vertices plus s and t: an edge uv
/// means G has a u-v path avoiding every other H vertex.
struct ReachGraph {
    std::vector<int> verts;                   // topo-sorted original ids
    std::vector<std::pair<int, int>> edges;   // deterministic order
};

ReachGraph build_reachability_graph(const TaskGraph& graph,
                                    const GuessFrame& frame, int s, int t);

/// A candidate contracted subgraph H' with its agent path P'. Edges whose
/// endpoints are directly adjacent in G carry a pinned weight; the others
/// are free and enumerate over `domain` (0..W when the domain is empty).
struct ContractedGraph {
    struct CEdge {
        int tail = -1, head = -1;
        bool fixed = false;
        long long fixed_weight = 0;
        bool on_agent_path = false;
        std::vector<long long> domain;
    };
    std::vector<int> verts;  // topo-sorted original ids
    std::vector<CEdge> edges;
    std::vector<int> agent_path;                     // P' vertex sequence
    std::vector<std::pair<int, int>> branch_edges;   // per branch: (star, diamond) edge index
};

/// Streams every integer weighting of E(H') that stays within the total
/// weight bound, agrees with w on pinned edges, and makes the agent at
/// every branch vertex strictly prefer the star edge over the shortcut.
/// The callback receives the weights and the H'-distances to t and may
/// return false to stop. Returns false when stopped early.
bool enumerate_weightings(
    const ContractedGraph& hp, long long total_weight_bound,
    const Rational& salience,
    const std::function<bool(const std::vector<long long>& weights,
                             const std::vector<long long>& dist_to_t)>& yield);

/// A motivating subgraph witness: its edges (as vertex index pairs of the
/// solved instance), the branching count, and the greedy trace certifying
/// that the agent reaches t.
struct SmsSolution {
    std::vector<std::pair<int, int>> edges;
    int branching_count = 0;
    std::vector<int> agent_path;
};

struct SolveOptions {
    uint64_t budget = 100'000'000;  // elementary steps across all guesses
    int threads = 1;                // >1 explores frames in parallel
};

/// Simple-motivating-subgraph solver for integer weights: tries
/// k' = 0..k in order; k' = 0 delegates to the motivating-path DP, larger
/// k' enumerate guess frames and dispatch to the linkage DP. Requires a
/// pruned instance with integer weights.
std::optional<SmsSolution> solve_sms(const ScaledInstance& scaled, int k,
                                     const SolveOptions& options = {});

/// Branching vertices (out-degree >= 2) of a solution edge set.
int count_branchings(const std::vector<std::pair<int, int>>& edges);

}  // namespace motiv
