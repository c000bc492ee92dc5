#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "motiv/agent.hpp"
#include "motiv/motivating_path.hpp"
#include "motiv/oracle.hpp"

using namespace motiv;
using namespace motiv::testing;

TEST_CASE("single edge within the reward") {
    PlanningInstance inst =
        make_instance({"s", "t"}, {{"s", "t", "1"}}, "s", "t", "2", "2");
    PathResult result = solve_motivating_path(inst);
    REQUIRE(result.found());
    CHECK(*result.length == Rational(1));
    CHECK(result.path == std::vector<int>{inst.s, inst.t});
}

TEST_CASE("single edge beyond the reward") {
    PlanningInstance inst =
        make_instance({"s", "t"}, {{"s", "t", "1"}}, "s", "t", "1", "2");
    CHECK_FALSE(solve_motivating_path(inst).found());
}

TEST_CASE("the example reduction has no motivating path") {
    ReductionOutput example = example_reduction();
    PlanningInstance inst = prune(example.instance);
    CHECK_FALSE(solve_motivating_path(inst).found());
    CHECK_FALSE(brute_force_motivating_path(inst).found());
}

TEST_CASE("a longer route wins when the short one is not motivating") {
    // the cheap arm front-loads its cost, so present bias kills it:
    // 2 * 7/2 = 7 > 6 at s, while the longer arm stays within the reward
    PlanningInstance inst = make_instance(
        {"s", "a", "b", "t"},
        {{"s", "a", "7/2"}, {"a", "t", "0"}, {"s", "b", "1"}, {"b", "t", "3"}},
        "s", "t", "6", "2");
    PathResult result = solve_motivating_path(inst);
    REQUIRE(result.found());
    CHECK(*result.length == Rational(4));
    CHECK(result.path.size() == 3);
    CHECK(inst.graph.name(result.path[1]) == "b");
    PathResult brute = brute_force_motivating_path(inst);
    REQUIRE(brute.found());
    CHECK(*brute.length == Rational(4));
}

TEST_CASE("returned paths are motivating as single-path instances") {
    std::mt19937_64 rng(61);
    for (int round = 0; round < 200; ++round) {
        PlanningInstance inst = random_pruned_instance(
            rng, 10, 12, 4, {1, 2, 3},
            Rational(static_cast<long long>(rng() % 12),
                     1 + static_cast<long long>(rng() % 3)),
            Rational(1 + static_cast<long long>(rng() % 5), 2) + Rational(1, 2));
        PathResult result = solve_motivating_path(inst);
        if (!result.found()) continue;
        CHECK(path_weight(inst.graph, result.path) == *result.length);
        CHECK(is_motivating(path_instance(inst, result.path)).motivating);
    }
}

TEST_CASE("handles long chains comfortably") {
    // single pass over vertices and edges; a 20k-vertex chain is instant
    GraphData data;
    for (int v = 0; v <= 20'000; ++v)
        data.vertices.push_back("v" + std::to_string(v));
    for (int v = 0; v < 20'000; ++v)
        data.edges.push_back({"v" + std::to_string(v),
                              "v" + std::to_string(v + 1), Rational(1)});
    PlanningInstance inst = PlanningInstance::make(
        TaskGraph::validate(data), "v0", "v20000", Rational(20'001),
        Rational(2));
    PathResult result = solve_motivating_path(inst);
    REQUIRE(result.found());
    CHECK(*result.length == Rational(20'000));
    CHECK(result.path.size() == 20'001);
}

TEST_CASE("agrees with brute force on random instances") {
    std::mt19937_64 rng(67);
    for (int round = 0; round < 300; ++round) {
        PlanningInstance inst = random_pruned_instance(
            rng, 10, 12, 5, {1, 2, 3, 7},
            Rational(static_cast<long long>(rng() % 14),
                     1 + static_cast<long long>(rng() % 4)),
            Rational(1) + Rational(static_cast<long long>(rng() % 5),
                                   1 + static_cast<long long>(rng() % 3)));
        PathResult fast = solve_motivating_path(inst);
        PathResult brute = brute_force_motivating_path(inst);
        REQUIRE(fast.found() == brute.found());
        if (fast.found()) CHECK(*fast.length == *brute.length);
    }
}
