#pragma once

#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "motiv/instance.hpp"
#include "motiv/reduction.hpp"

namespace motiv::testing {

using EdgeSpec = std::tuple<std::string, std::string, std::string>;

inline TaskGraph make_graph(const std::vector<std::string>& vertices,
                            const std::vector<EdgeSpec>& edges) {
    GraphData data;
    data.vertices = vertices;
    for (const auto& [from, to, w] : edges)
        data.edges.push_back({from, to, Rational::parse(w)});
    return TaskGraph::validate(data);
}

inline PlanningInstance make_instance(const std::vector<std::string>& vertices,
                                      const std::vector<EdgeSpec>& edges,
                                      const std::string& s, const std::string& t,
                                      const std::string& r, const std::string& b) {
    return PlanningInstance::make(make_graph(vertices, edges), s, t,
                                  Rational::parse(r), Rational::parse(b));
}

/// Random pruned instance. Weights are p/q with p in [0, max_num] and q
/// drawn from den_choices; a den of {1} gives integer weights.
inline PlanningInstance random_pruned_instance(
    std::mt19937_64& rng, int max_vertices, int max_extra_edges,
    long long max_num, const std::vector<long long>& den_choices,
    const Rational& reward, const Rational& salience) {
    std::uniform_int_distribution<int> nd(2, max_vertices);
    int n = nd(rng);
    GraphData data;
    for (int v = 0; v < n; ++v) data.vertices.push_back("v" + std::to_string(v));

    auto weight = [&]() {
        long long den = den_choices[rng() % den_choices.size()];
        long long whole = static_cast<long long>(rng() % (max_num + 1));
        long long part = static_cast<long long>(rng() % den);
        return Rational(whole) + Rational(part, den);
    };

    std::set<std::pair<int, int>> picked;
    int cur = 0;  // random spine so t is reachable
    while (cur != n - 1) {
        std::uniform_int_distribution<int> nxt(cur + 1, n - 1);
        int v = nxt(rng);
        picked.emplace(cur, v);
        cur = v;
    }
    int extra = static_cast<int>(rng() % (max_extra_edges + 1));
    for (int i = 0; i < extra * 4 &&
                    static_cast<int>(picked.size()) < extra + 2; ++i) {
        int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        picked.emplace(a, b);
    }
    for (auto [a, b] : picked)
        data.edges.push_back({"v" + std::to_string(a), "v" + std::to_string(b),
                              weight()});
    PlanningInstance inst = PlanningInstance::make(
        TaskGraph::validate(data), "v0", "v" + std::to_string(n - 1), reward,
        salience);
    return prune(inst);
}

/// The worked reduction example: X = {3,6,7}, W = 10, b = 2,
/// epsilon = 1/160.
inline ReductionOutput example_reduction() {
    return subset_sum_to_sms({{3, 6, 7}, 10}, Rational(2), Rational(1, 160));
}

}  // namespace motiv::testing
