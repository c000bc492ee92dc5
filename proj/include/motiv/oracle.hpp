#pragma once

#include "motiv/linkage.hpp"
#include "motiv/motivating_path.hpp"
#include "motiv/sms.hpp"

namespace motiv {

/// Desk-scale reference solvers. These share no search machinery with the
/// production solvers: they enumerate candidate structures exhaustively
/// and re-check everything from the model definitions. Caps are hard
/// errors, never silent truncation, so equivalence suites cannot pass
/// vacuously. None of these is ever called from solver code paths.

/// Exhaustive search for a motivating subgraph with at most k branching
/// vertices; returns one with the fewest edges. Enumerates every pruned
/// candidate subgraph (each vertex reached from s picks a nonempty set of
/// out-edges, at most k of them picking two or more), which covers every
/// edge subset up to pruning.
std::optional<SmsSolution> brute_force_sms(const PlanningInstance& instance,
                                           int k, uint64_t max_edges = 32,
                                           uint64_t max_steps = 50'000'000);

/// Minimum-length motivating s-t path by enumerating all s-t paths.
PathResult brute_force_motivating_path(const PlanningInstance& instance,
                                       uint64_t max_paths = 100'000);

/// Exhaustive tuple search over per-link candidate paths with exact
/// lengths and motivation guards. Requires a normalized instance.
std::optional<LinkageSolution> brute_force_linkage(
    const LinkageInstance& instance, uint64_t max_steps = 20'000'000);

/// All motivating subgraphs that are minimal under single-edge deletion.
/// Enumerates every edge subset; requires at most `max_edges` edges.
std::vector<SmsSolution> enumerate_minimal_motivating_subgraphs(
    const PlanningInstance& instance, uint64_t max_edges = 16);

}  // namespace motiv
