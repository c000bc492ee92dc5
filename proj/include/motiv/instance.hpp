#pragma once

#include "motiv/graph.hpp"

namespace motiv {

/// The planning model: task graph, start, target, reward and salience
/// factor. Immutable after construction; operations return new instances.
struct PlanningInstance {
    TaskGraph graph;
    int s = -1;
    int t = -1;
    Rational reward;    // r >= 0
    Rational salience;  // b >= 1

    static PlanningInstance make(TaskGraph graph, const std::string& s,
                                 const std::string& t, Rational reward,
                                 Rational salience);
};

/// Restricts the instance to vertices that lie on some s-t path. Keeps s
/// and t, is idempotent, and throws TargetUnreachable when no s-t path
/// exists.
PlanningInstance prune(const PlanningInstance& instance);

bool is_pruned(const PlanningInstance& instance);

/// Integer-weight view of an instance obtained by a common rational
/// multiplier. Unscaling every weight and the reward by `scale`
/// reproduces the source instance exactly; `total_weight` is W.
struct ScaledInstance {
    PlanningInstance instance;
    Rational scale;
    BigInt total_weight;
};

/// Multiplies all weights and r by the lcm of their denominators.
/// The salience factor is left untouched.
ScaledInstance scale_to_integers(const PlanningInstance& instance);

}  // namespace motiv
