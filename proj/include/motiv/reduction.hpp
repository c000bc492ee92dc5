#pragma once

#include <map>
#include <optional>

#include "motiv/instance.hpp"

namespace motiv {

struct SubsetSumInstance {
    std::vector<long long> values;  // non-negative
    long long target = 0;           // W
};

/// Instance produced by the Subset-Sum reduction: reward 1, one branching
/// vertex suffices exactly when the Subset-Sum instance is solvable.
/// `roles` maps vertex names to their structural role (s, a0..a3, c_i,
/// c_i*, t) so tests and tools can address vertices symbolically.
struct ReductionOutput {
    PlanningInstance instance;
    Rational epsilon;
    std::map<std::string, std::string> roles;
};

/// Builds the 2n+8-vertex reduction graph for a salience factor b > 1.
/// epsilon must satisfy 0 < eps < w(a1a2)/W and keep all weights
/// non-negative; when absent it defaults to w(a1a2)/(2W), tightened so
/// that w(c_{n+1}c_{n+2}) stays non-negative.
ReductionOutput subset_sum_to_sms(const SubsetSumInstance& ss,
                                  const Rational& salience,
                                  std::optional<Rational> epsilon = {});

/// Pseudo-polynomial Subset-Sum solver (test oracle). Returns indices of
/// a subset summing to the target, or nothing. Falls back to pruned
/// enumeration when the target is too large for the table.
std::optional<std::vector<size_t>> solve_subset_sum(const SubsetSumInstance& ss);

}  // namespace motiv
