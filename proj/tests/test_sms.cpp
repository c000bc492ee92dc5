#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "motiv/errors.hpp"
#include "motiv/oracle.hpp"
#include "motiv/sms.hpp"

using namespace motiv;
using namespace motiv::testing;

namespace {

GuessFrame frame_of(const TaskGraph& g, std::vector<std::string> branch,
                    std::vector<std::string> star,
                    std::vector<std::string> diamond,
                    std::vector<std::string> merge) {
    GuessFrame frame;
    for (const auto& v : branch) frame.branch.push_back(g.require(v));
    for (const auto& v : star) frame.star.push_back(g.require(v));
    for (const auto& v : diamond) frame.diamond.push_back(g.require(v));
    for (const auto& v : merge) frame.merge.push_back(g.require(v));
    return frame;
}

std::set<std::pair<std::string, std::string>> edge_names(
    const TaskGraph& g, const ReachGraph& h) {
    std::set<std::pair<std::string, std::string>> out;
    for (auto [u, v] : h.edges) out.emplace(g.name(u), g.name(v));
    return out;
}

long long total_weight_of(const PlanningInstance& inst) {
    long long total = 0;
    for (const Edge& e : inst.graph.edges())
        total += e.weight.numerator().to_int64();
    return total;
}

PlanningInstance random_sms_instance(std::mt19937_64& rng) {
    std::vector<Rational> saliences{Rational(3, 2), Rational(2), Rational(3)};
    while (true) {
        PlanningInstance inst = random_pruned_instance(
            rng, 9, 10, 2, {1},
            Rational(static_cast<long long>(rng() % 14)),
            saliences[rng() % saliences.size()]);
        if (inst.graph.edge_count() <= 14 && total_weight_of(inst) <= 12)
            return inst;
    }
}

bool verify_solution(const PlanningInstance& pruned_instance,
                     const SmsSolution& solution, int k) {
    std::vector<int> edge_ids;
    for (auto [u, v] : solution.edges) {
        auto e = pruned_instance.graph.edge_between(u, v);
        if (!e) return false;
        edge_ids.push_back(*e);
    }
    PlanningInstance sub;
    sub.graph = pruned_instance.graph.edge_subgraph(edge_ids);
    sub.s = pruned_instance.s;
    sub.t = pruned_instance.t;
    sub.reward = pruned_instance.reward;
    sub.salience = pruned_instance.salience;
    return is_motivating(prune(sub)).motivating &&
           count_branchings(solution.edges) <= k;
}

}  // namespace

TEST_CASE("k = 0 delegates to the motivating-path solver") {
    PlanningInstance inst = make_instance(
        {"s", "a", "t"}, {{"s", "a", "1"}, {"a", "t", "1"}},
        "s", "t", "3", "2");
    auto solution = solve_sms(scale_to_integers(inst), 0);
    REQUIRE(solution.has_value());
    CHECK(solution->branching_count == 0);
    CHECK(solution->edges.size() == 2);
    CHECK(solution->agent_path.size() == 3);
}

TEST_CASE("reachability graph of a frame on a path") {
    PlanningInstance inst = make_instance(
        {"s", "a", "b", "t"},
        {{"s", "a", "1"}, {"a", "b", "1"}, {"b", "t", "1"}, {"a", "t", "5"}},
        "s", "t", "9", "2");
    const TaskGraph& g = inst.graph;
    ReachGraph h = build_reachability_graph(
        g, frame_of(g, {"a"}, {"b"}, {"t"}, {}), inst.s, inst.t);
    auto edges = edge_names(g, h);
    CHECK(edges.count({"s", "a"}));
    CHECK(edges.count({"a", "b"}));
    CHECK(edges.count({"a", "t"}));
    CHECK(edges.count({"b", "t"}));
    CHECK(edges.size() == 4);
}

TEST_CASE("an intermediate H vertex blocks contracted reachability") {
    PlanningInstance inst = make_instance(
        {"s", "a", "m", "b", "t"},
        {{"s", "a", "1"}, {"a", "m", "1"}, {"m", "b", "1"}, {"b", "t", "1"}},
        "s", "t", "9", "1");
    const TaskGraph& g = inst.graph;
    GuessFrame frame;  // only s, t, and the listed extras matter here
    frame.merge = {g.require("a"), g.require("m"), g.require("b")};
    ReachGraph h = build_reachability_graph(g, frame, inst.s, inst.t);
    auto edges = edge_names(g, h);
    // a cannot reach b directly because m is an H vertex in between
    CHECK_FALSE(edges.count({"a", "b"}));
    CHECK(edges.count({"a", "m"}));
    CHECK(edges.count({"m", "b"}));
}

TEST_CASE("reachability graph of the correct example frame") {
    ReductionOutput example = example_reduction();
    ScaledInstance scaled = scale_to_integers(prune(example.instance));
    const TaskGraph& g = scaled.instance.graph;
    ReachGraph h = build_reachability_graph(
        g, frame_of(g, {"a0"}, {"a1"}, {"c1"}, {"t"}), scaled.instance.s,
        scaled.instance.t);
    auto edges = edge_names(g, h);
    CHECK(edges ==
          std::set<std::pair<std::string, std::string>>{
              {"s", "a0"}, {"a0", "a1"}, {"a0", "c1"}, {"a1", "t"}, {"c1", "t"}});
}

TEST_CASE("weighting enumeration over one free edge") {
    ContractedGraph hp;
    hp.verts = {0, 1};
    ContractedGraph::CEdge edge;
    edge.tail = 0;
    edge.head = 1;
    edge.on_agent_path = true;
    hp.edges.push_back(edge);
    hp.agent_path = {0, 1};
    std::vector<long long> seen;
    enumerate_weightings(hp, 3, Rational(2),
                         [&](const std::vector<long long>& w,
                             const std::vector<long long>&) {
                             seen.push_back(w[0]);
                             return true;
                         });
    CHECK(seen == std::vector<long long>{0, 1, 2, 3});
}

TEST_CASE("weighting enumeration with all edges fixed is check-only") {
    ContractedGraph hp;
    hp.verts = {0, 1, 2};
    ContractedGraph::CEdge e01, e12;
    e01.tail = 0;
    e01.head = 1;
    e01.fixed = true;
    e01.fixed_weight = 2;
    e12.tail = 1;
    e12.head = 2;
    e12.fixed = true;
    e12.fixed_weight = 3;
    hp.edges = {e01, e12};
    int count = 0;
    enumerate_weightings(hp, 10, Rational(2),
                         [&](const std::vector<long long>& w,
                             const std::vector<long long>& dist) {
                             ++count;
                             CHECK(w == std::vector<long long>{2, 3});
                             CHECK(dist[0] == 5);
                             return true;
                         });
    CHECK(count == 1);
    // and none at all when the fixed weights already exceed the bound
    count = 0;
    enumerate_weightings(hp, 4, Rational(2),
                         [&](const std::vector<long long>&,
                             const std::vector<long long>&) {
                             ++count;
                             return true;
                         });
    CHECK(count == 0);
}

TEST_CASE("weighting enumeration on the example frame finds the true one") {
    ReductionOutput example = example_reduction();
    ScaledInstance scaled = scale_to_integers(prune(example.instance));
    const TaskGraph& g = scaled.instance.graph;
    int s = g.require("s"), a0 = g.require("a0"), a1 = g.require("a1"),
        c1 = g.require("c1"), t = g.require("t");

    ContractedGraph hp;
    hp.verts = {s, a0, a1, c1, t};
    auto fixed_edge = [&](int u, int v) {
        ContractedGraph::CEdge e;
        e.tail = u;
        e.head = v;
        e.fixed = true;
        e.fixed_weight =
            g.edge(*g.edge_between(u, v)).weight.numerator().to_int64();
        return e;
    };
    ContractedGraph::CEdge a1t, c1t;
    a1t.tail = a1;
    a1t.head = t;
    a1t.domain = {279, 280, 281};  // true a-segment sum is 280
    c1t.tail = c1;
    c1t.head = t;
    c1t.domain = {273, 274, 275};  // true c-segment sum is 274
    ContractedGraph::CEdge sa0 = fixed_edge(s, a0);
    ContractedGraph::CEdge a0a1 = fixed_edge(a0, a1);
    ContractedGraph::CEdge a0c1 = fixed_edge(a0, c1);
    sa0.on_agent_path = a0a1.on_agent_path = a1t.on_agent_path = true;
    hp.edges = {sa0, a0a1, a0c1, a1t, c1t};
    hp.agent_path = {s, a0, a1, t};
    hp.branch_edges = {{1, 2}};  // a0->a1 vs a0->c1

    bool found_true_weighting = false;
    enumerate_weightings(
        hp, 633, Rational(2),
        [&](const std::vector<long long>& w, const std::vector<long long>& dist) {
            // every yielded weighting satisfies the strict temptation test
            Rational star = Rational(2) * Rational(w[1]) + Rational(dist[2]);
            Rational shortcut = Rational(2) * Rational(w[2]) + Rational(dist[3]);
            CHECK(star < shortcut);
            if (w[3] == 280 && w[4] == 274) found_true_weighting = true;
            return true;
        });
    CHECK(found_true_weighting);
}

TEST_CASE("example reduction end-to-end: no path, one branching suffices") {
    ReductionOutput example = example_reduction();
    ScaledInstance scaled = scale_to_integers(prune(example.instance));
    CHECK_FALSE(solve_sms(scaled, 0).has_value());

    auto solution = solve_sms(scaled, 1);
    REQUIRE(solution.has_value());
    CHECK(solution->branching_count == 1);
    CHECK(verify_solution(scaled.instance, *solution, 1));

    // the agent follows the a-path
    const TaskGraph& g = scaled.instance.graph;
    std::vector<std::string> walk;
    for (int v : solution->agent_path) walk.push_back(g.name(v));
    CHECK(walk == std::vector<std::string>{"s", "a0", "a1", "a2", "a3", "t"});

    // the chosen direct c-edges encode the subset {3, 7}
    std::set<std::pair<std::string, std::string>> edges;
    for (auto [u, v] : solution->edges) edges.emplace(g.name(u), g.name(v));
    CHECK(edges.count({"c1", "c2"}) == 1);
    CHECK(edges.count({"c3", "c4"}) == 1);
    CHECK(edges.count({"c2", "c3"}) == 0);
    CHECK(edges.count({"c2", "c2*"}) == 1);
}

TEST_CASE("a decoy gadget needs exactly one branching") {
    // the a-route alone overwhelms the agent at s; the shorter decoy
    // lowers zeta(s) to exactly r but dies at u if taken
    PlanningInstance inst = make_instance(
        {"s", "u", "a", "c", "t"},
        {{"s", "u", "3"}, {"u", "a", "4"}, {"a", "t", "8"},
         {"u", "c", "8"}, {"c", "t", "2"}},
        "s", "t", "16", "2");
    ScaledInstance scaled = scale_to_integers(inst);
    CHECK_FALSE(solve_sms(scaled, 0).has_value());
    CHECK_FALSE(brute_force_sms(inst, 0).has_value());
    auto solution = solve_sms(scaled, 1);
    auto oracle = brute_force_sms(inst, 1);
    REQUIRE(solution.has_value());
    REQUIRE(oracle.has_value());
    CHECK(solution->branching_count == 1);
    CHECK(solution->edges.size() == 5);  // the whole gadget is minimal
    CHECK(verify_solution(scaled.instance, *solution, 1));
}

TEST_CASE("two chained decoy gadgets need exactly two branchings") {
    PlanningInstance inst = make_instance(
        {"s", "u1", "a1", "c1", "m", "u2", "a2", "c2", "t"},
        {{"s", "u1", "2"}, {"u1", "a1", "3"}, {"a1", "m", "6"},
         {"u1", "c1", "5"}, {"c1", "m", "3"}, {"m", "u2", "12"},
         {"u2", "a2", "16"}, {"a2", "t", "32"}, {"u2", "c2", "32"},
         {"c2", "t", "8"}},
        "s", "t", "64", "2");
    ScaledInstance scaled = scale_to_integers(inst);
    CHECK_FALSE(brute_force_sms(inst, 1).has_value());
    CHECK_FALSE(solve_sms(scaled, 1).has_value());
    auto solution = solve_sms(scaled, 2);
    auto oracle = brute_force_sms(inst, 2);
    REQUIRE(solution.has_value());
    REQUIRE(oracle.has_value());
    CHECK(solution->branching_count == 2);
    CHECK(verify_solution(scaled.instance, *solution, 2));
    // the agent follows both true arms
    std::vector<std::string> walk;
    for (int v : solution->agent_path)
        walk.push_back(scaled.instance.graph.name(v));
    CHECK(walk == std::vector<std::string>{"s", "u1", "a1", "m", "u2", "a2",
                                           "t"});
}

TEST_CASE("solver matches the oracle on random instances") {
    std::mt19937_64 rng(83);
    int yes = 0, no = 0;
    for (int round = 0; round < 60; ++round) {
        PlanningInstance inst = random_sms_instance(rng);
        ScaledInstance scaled = scale_to_integers(inst);
        int k = static_cast<int>(rng() % 3);
        auto fast = solve_sms(scaled, k);
        auto brute = brute_force_sms(inst, k);
        REQUIRE(fast.has_value() == brute.has_value());
        if (fast) {
            ++yes;
            CHECK(verify_solution(scaled.instance, *fast, k));
        } else {
            ++no;
        }
    }
    CHECK(yes > 5);
    CHECK(no > 5);
}

TEST_CASE("a yes at k stays a yes at k + 1") {
    std::mt19937_64 rng(89);
    for (int round = 0; round < 25; ++round) {
        PlanningInstance inst = random_sms_instance(rng);
        ScaledInstance scaled = scale_to_integers(inst);
        for (int k = 0; k < 2; ++k) {
            if (solve_sms(scaled, k).has_value())
                CHECK(solve_sms(scaled, k + 1).has_value());
        }
    }
}

TEST_CASE("multi-threaded solving agrees on the yes/no answer") {
    std::mt19937_64 rng(97);
    SolveOptions parallel;
    parallel.threads = 2;
    for (int round = 0; round < 15; ++round) {
        PlanningInstance inst = random_sms_instance(rng);
        ScaledInstance scaled = scale_to_integers(inst);
        auto single = solve_sms(scaled, 1);
        auto multi = solve_sms(scaled, 1, parallel);
        CHECK(single.has_value() == multi.has_value());
        if (multi) CHECK(verify_solution(scaled.instance, *multi, 1));
    }
}

TEST_CASE("non-integer weights are rejected") {
    PlanningInstance inst = make_instance(
        {"s", "t"}, {{"s", "t", "1/2"}}, "s", "t", "2", "2");
    ScaledInstance scaled;  // hand-build to bypass scaling
    scaled.instance = inst;
    scaled.scale = Rational(1);
    scaled.total_weight = BigInt(1);
    bool threw = false;
    try {
        solve_sms(scaled, 1);
    } catch (const Error& e) {
        threw = true;
        CHECK(e.code() == Errc::NonIntegerWeights);
    }
    CHECK(threw);
}

TEST_CASE("the step budget aborts oversized searches") {
    ReductionOutput example = example_reduction();
    ScaledInstance scaled = scale_to_integers(prune(example.instance));
    SolveOptions tiny;
    tiny.budget = 50;
    bool threw = false;
    try {
        solve_sms(scaled, 1, tiny);
    } catch (const Error& e) {
        threw = true;
        CHECK(e.code() == Errc::InstanceTooLarge);
    }
    CHECK(threw);
}
