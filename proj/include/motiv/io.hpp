#pragma once

#include <string>

#include "motiv/instance.hpp"
#include "motiv/linkage.hpp"
#include "motiv/sms.hpp"

namespace motiv {

/// Instance JSON:
///   {"vertices": [...],
///    "edges": [{"from": .., "to": .., "w": "p/q"}],
///    "s": .., "t": .., "r": "p/q", "b": "p/q"}
/// Rationals travel as "p/q" or "p" strings and parse exactly, so
/// parse(serialize(x)) == x.
PlanningInstance parse_instance(const std::string& text);
std::string serialize_instance(const PlanningInstance& instance);

/// Linkage JSON (debugging surface):
///   {"vertices": [...], "edges": [{"from", "to", "w"}],
///    "links": [{"source", "sink", "length", "b", "r"}]}
LinkageInstance parse_linkage(const std::string& text);
std::string serialize_linkage_solution(const LinkageInstance& instance,
                                       const LinkageSolution& solution);

std::string serialize_solution(const TaskGraph& graph,
                               const SmsSolution& solution);
SmsSolution parse_solution(const TaskGraph& graph, const std::string& text);

/// Deterministic Graphviz text: vertices in topological order, edges
/// sorted by topological endpoints, labels carrying exact weights.
/// Solution edges get a penwidth attribute.
std::string export_dot(const PlanningInstance& instance,
                       const SmsSolution* solution = nullptr);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace motiv
