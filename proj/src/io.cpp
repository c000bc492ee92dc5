#include "motiv/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "motiv/errors.hpp"

namespace motiv {

using nlohmann::json;

namespace {

Rational parse_rational_field(const json& j, const char* what) {
    try {
        if (j.is_number_integer())
            return Rational(j.get<long long>());
        return Rational::parse(j.get<std::string>());
    } catch (const std::exception& e) {
        fail(Errc::FormatError, std::string(what) + ": " + e.what());
    }
}

json instance_to_json(const PlanningInstance& instance) {
    const TaskGraph& g = instance.graph;
    json j;
    j["vertices"] = json::array();
    for (int v = 0; v < g.vertex_count(); ++v) j["vertices"].push_back(g.name(v));
    j["edges"] = json::array();
    for (const Edge& e : g.edges())
        j["edges"].push_back({{"from", g.name(e.tail)},
                              {"to", g.name(e.head)},
                              {"w", e.weight.to_string()}});
    j["s"] = g.name(instance.s);
    j["t"] = g.name(instance.t);
    j["r"] = instance.reward.to_string();
    j["b"] = instance.salience.to_string();
    return j;
}

}  // namespace

PlanningInstance parse_instance(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        fail(Errc::FormatError, std::string("bad JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges") ||
        !j.contains("s") || !j.contains("t"))
        fail(Errc::FormatError, "instance needs vertices, edges, s and t");
    GraphData data;
    try {
        for (const auto& v : j["vertices"])
            data.vertices.push_back(v.get<std::string>());
        for (const auto& e : j["edges"])
            data.edges.push_back({e.at("from").get<std::string>(),
                                  e.at("to").get<std::string>(),
                                  parse_rational_field(e.at("w"), "edge weight")});
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        fail(Errc::FormatError, std::string("bad instance: ") + e.what());
    }
    Rational r = j.contains("r") ? parse_rational_field(j["r"], "reward")
                                 : Rational(0);
    Rational b = j.contains("b") ? parse_rational_field(j["b"], "salience")
                                 : Rational(1);
    std::string s, t;
    try {
        s = j["s"].get<std::string>();
        t = j["t"].get<std::string>();
    } catch (const std::exception& e) {
        fail(Errc::FormatError, std::string("bad terminals: ") + e.what());
    }
    return PlanningInstance::make(TaskGraph::validate(data), s, t, r, b);
}

std::string serialize_instance(const PlanningInstance& instance) {
    return instance_to_json(instance).dump(2) + "\n";
}

LinkageInstance parse_linkage(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        fail(Errc::FormatError, std::string("bad JSON: ") + e.what());
    }
    LinkageInstance li;
    try {
        for (const auto& v : j.at("vertices"))
            li.names.push_back(v.get<std::string>());
        auto index = [&](const std::string& name) {
            auto it = std::find(li.names.begin(), li.names.end(), name);
            if (it == li.names.end())
                fail(Errc::DanglingEndpoint, "unknown vertex '" + name + "'");
            return static_cast<int>(it - li.names.begin());
        };
        for (const auto& e : j.at("edges"))
            li.edges.push_back({index(e.at("from").get<std::string>()),
                                index(e.at("to").get<std::string>()),
                                e.at("w").get<long long>()});
        for (const auto& l : j.at("links")) {
            Link link;
            link.source = index(l.at("source").get<std::string>());
            link.sink = index(l.at("sink").get<std::string>());
            link.length = l.at("length").get<long long>();
            link.salience = parse_rational_field(l.at("b"), "link salience");
            link.reward = parse_rational_field(l.at("r"), "link reward");
            li.links.push_back(link);
        }
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        fail(Errc::FormatError, std::string("bad linkage instance: ") + e.what());
    }
    li.finalize();
    return li;
}

std::string serialize_linkage_solution(const LinkageInstance& instance,
                                       const LinkageSolution& solution) {
    json j;
    j["found"] = true;
    j["paths"] = json::array();
    for (const auto& path : solution.paths) {
        json p = json::array();
        for (int v : path) p.push_back(instance.names[v]);
        j["paths"].push_back(p);
    }
    return j.dump(2) + "\n";
}

std::string serialize_solution(const TaskGraph& graph,
                               const SmsSolution& solution) {
    json j;
    j["edges"] = json::array();
    for (auto [u, v] : solution.edges)
        j["edges"].push_back({{"from", graph.name(u)}, {"to", graph.name(v)}});
    j["branching_count"] = solution.branching_count;
    j["agent_path"] = json::array();
    for (int v : solution.agent_path) j["agent_path"].push_back(graph.name(v));
    return j.dump(2) + "\n";
}

SmsSolution parse_solution(const TaskGraph& graph, const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        fail(Errc::FormatError, std::string("bad JSON: ") + e.what());
    }
    SmsSolution solution;
    try {
        for (const auto& e : j.at("edges"))
            solution.edges.emplace_back(
                graph.require(e.at("from").get<std::string>()),
                graph.require(e.at("to").get<std::string>()));
        if (j.contains("branching_count"))
            solution.branching_count = j["branching_count"].get<int>();
        if (j.contains("agent_path"))
            for (const auto& v : j["agent_path"])
                solution.agent_path.push_back(
                    graph.require(v.get<std::string>()));
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        fail(Errc::FormatError, std::string("bad solution: ") + e.what());
    }
    return solution;
}

std::string export_dot(const PlanningInstance& instance,
                       const SmsSolution* solution) {
    const TaskGraph& g = instance.graph;
    std::set<std::pair<int, int>> chosen;
    if (solution)
        chosen.insert(solution->edges.begin(), solution->edges.end());

    std::ostringstream out;
    out << "digraph task_graph {\n  rankdir=LR;\n";
    for (int v : g.topo_order()) {
        out << "  \"" << g.name(v) << "\"";
        if (v == instance.s || v == instance.t) out << " [shape=doublecircle]";
        out << ";\n";
    }
    std::vector<int> order(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) order[e] = e;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        int pa = g.topo_pos(g.edge(a).tail), pb = g.topo_pos(g.edge(b).tail);
        if (pa != pb) return pa < pb;
        return g.topo_pos(g.edge(a).head) < g.topo_pos(g.edge(b).head);
    });
    for (int e : order) {
        const Edge& edge = g.edge(e);
        out << "  \"" << g.name(edge.tail) << "\" -> \"" << g.name(edge.head)
            << "\" [label=\"" << edge.weight.to_string() << "\"";
        if (chosen.count({edge.tail, edge.head})) out << ", penwidth=2.5";
        out << "];\n";
    }
    out << "}\n";
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::FormatError, "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::FormatError, "cannot write '" + path + "'");
    out << text;
}

}  // namespace motiv
