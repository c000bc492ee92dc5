#pragma once

#include <optional>

#include "motiv/instance.hpp"

namespace motiv {

/// Result of the motivating-path search. `length` is absent when no
/// motivating s-t path exists (never a sentinel value); when present,
/// `path` is an s-t vertex sequence of that total weight whose single-path
/// sub-instance is motivating.
struct PathResult {
    std::optional<Rational> length;
    std::vector<int> path;

    bool found() const { return length.has_value(); }
};

/// Shortest motivating s-t path by reverse-topological dynamic
/// programming: relaxation along uv is allowed only when the agent at u
/// would stay motivated, b*w(uv) + d_v <= r. Linear in |V| + |E|.
/// Requires a pruned instance. Ties between optimal successors break
/// toward the smaller topological position, so output is deterministic.
PathResult solve_motivating_path(const PlanningInstance& instance);

/// Total weight of a vertex path; throws if consecutive vertices are not
/// adjacent.
Rational path_weight(const TaskGraph& graph, const std::vector<int>& path);

/// Sub-instance induced by the edges of one s-t path.
PlanningInstance path_instance(const PlanningInstance& instance,
                               const std::vector<int>& path);

}  // namespace motiv
