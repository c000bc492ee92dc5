#include "motiv/instance.hpp"

#include "motiv/errors.hpp"

namespace motiv {

PlanningInstance PlanningInstance::make(TaskGraph graph, const std::string& s,
                                        const std::string& t, Rational reward,
                                        Rational salience) {
    PlanningInstance inst;
    inst.s = graph.require(s);
    inst.t = graph.require(t);
    inst.graph = std::move(graph);
    if (reward.is_negative())
        fail(Errc::FormatError, "reward must be non-negative");
    if (salience < Rational(1))
        fail(Errc::FormatError, "salience factor must be at least 1");
    inst.reward = std::move(reward);
    inst.salience = std::move(salience);
    return inst;
}

PlanningInstance prune(const PlanningInstance& instance) {
    const TaskGraph& g = instance.graph;
    int n = g.vertex_count();
    std::vector<bool> from_s(n, false), to_t(n, false);

    std::vector<int> stack{instance.s};
    from_s[instance.s] = true;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int e : g.out_edges(u)) {
            int v = g.edge(e).head;
            if (!from_s[v]) {
                from_s[v] = true;
                stack.push_back(v);
            }
        }
    }
    stack.push_back(instance.t);
    to_t[instance.t] = true;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int e : g.in_edges(u)) {
            int v = g.edge(e).tail;
            if (!to_t[v]) {
                to_t[v] = true;
                stack.push_back(v);
            }
        }
    }
    if (!from_s[instance.t])
        fail(Errc::TargetUnreachable,
             "no path from '" + g.name(instance.s) + "' to '" +
                 g.name(instance.t) + "'");

    std::vector<bool> keep(n);
    for (int v = 0; v < n; ++v) keep[v] = from_s[v] && to_t[v];
    TaskGraph sub = g.induced(keep);
    PlanningInstance out;
    out.s = sub.require(g.name(instance.s));
    out.t = sub.require(g.name(instance.t));
    out.graph = std::move(sub);
    out.reward = instance.reward;
    out.salience = instance.salience;
    return out;
}

bool is_pruned(const PlanningInstance& instance) {
    try {
        PlanningInstance p = prune(instance);
        return p.graph.vertex_count() == instance.graph.vertex_count();
    } catch (const Error&) {
        return false;
    }
}

ScaledInstance scale_to_integers(const PlanningInstance& instance) {
    BigInt common(1);
    for (const Edge& e : instance.graph.edges())
        common = BigInt::lcm(common, e.weight.denominator());
    common = BigInt::lcm(common, instance.reward.denominator());
    Rational scale(common, BigInt(1));

    GraphData data = instance.graph.to_data();
    BigInt total(0);
    for (auto& e : data.edges) {
        e.weight = e.weight * scale;
        total += e.weight.numerator();
    }
    ScaledInstance out;
    out.instance.graph = TaskGraph::validate(data);
    out.instance.s = instance.s;
    out.instance.t = instance.t;
    out.instance.reward = instance.reward * scale;
    out.instance.salience = instance.salience;
    out.scale = scale;
    out.total_weight = std::move(total);
    return out;
}

}  // namespace motiv
