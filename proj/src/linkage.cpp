#include "motiv/linkage.hpp"

#include <algorithm>
#include <cstring>
#include <queue>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "motiv/graph.hpp"

namespace motiv {

void LinkageInstance::reset_origin() {
    origin.resize(names.size());
    for (int v = 0; v < vertex_count(); ++v) origin[v] = v;
}

void LinkageInstance::finalize() {
    if (origin.size() != names.size()) reset_origin();
    total_weight = 0;
    std::set<std::pair<int, int>> seen;
    for (const auto& e : edges) {
        if (e.tail < 0 || e.tail >= vertex_count() || e.head < 0 ||
            e.head >= vertex_count())
            fail(Errc::DanglingEndpoint, "linkage edge endpoint out of range");
        if (e.tail == e.head) fail(Errc::SelfLoop, "linkage self-loop");
        if (!seen.emplace(e.tail, e.head).second)
            fail(Errc::DuplicateEdge, "parallel linkage edge");
        if (e.weight < 0) fail(Errc::NegativeWeight, "negative linkage weight");
        total_weight += e.weight;
    }
    for (const auto& l : links) {
        if (l.source < 0 || l.source >= vertex_count() || l.sink < 0 ||
            l.sink >= vertex_count())
            fail(Errc::DanglingEndpoint, "link terminal out of range");
        if (l.length < 0) fail(Errc::NegativeWeight, "negative link length");
        if (l.salience < Rational(1))
            fail(Errc::FormatError, "link salience below 1");
    }
    // acyclicity via Kahn
    std::vector<int> indeg(vertex_count(), 0);
    for (const auto& e : edges) ++indeg[e.head];
    std::vector<int> ready;
    for (int v = 0; v < vertex_count(); ++v)
        if (indeg[v] == 0) ready.push_back(v);
    int seen_count = 0;
    std::vector<std::vector<int>> out(vertex_count());
    for (const auto& e : edges) out[e.tail].push_back(e.head);
    while (!ready.empty()) {
        int v = ready.back();
        ready.pop_back();
        ++seen_count;
        for (int h : out[v])
            if (--indeg[h] == 0) ready.push_back(h);
    }
    if (seen_count != vertex_count())
        fail(Errc::CycleDetected, "linkage graph contains a cycle");
}

// ---- terminal normalization ----

LinkageInstance normalize_terminals(const LinkageInstance& instance) {
    int n = instance.vertex_count();
    enum class Role { None, Source, Sink };

    LinkageInstance out;
    out.names = instance.names;
    out.origin.resize(n);
    for (int v = 0; v < n; ++v)
        out.origin[v] = instance.origin.empty() ? v : instance.origin[v];
    out.links = instance.links;

    // Manifestations of each original vertex that accept out- resp.
    // in-edges. Non-terminals accept both. The first terminal occurrence
    // keeps the original vertex but only the edges its role allows; every
    // later occurrence becomes a fresh copy.
    std::vector<Role> role(n, Role::None);
    std::vector<std::vector<int>> out_manifs(n), in_manifs(n);
    for (int v = 0; v < n; ++v) {
        out_manifs[v] = {v};
        in_manifs[v] = {v};
    }
    std::vector<int> copy_count(n, 0);
    auto claim = [&](int v, Role wanted) -> int {
        if (role[v] == Role::None && copy_count[v] == 0) {
            role[v] = wanted;
            if (wanted == Role::Source)
                in_manifs[v].clear();  // sources lose in-edges
            else
                out_manifs[v].clear();  // sinks lose out-edges
            return v;
        }
        int id = out.vertex_count();
        ++copy_count[v];
        out.names.push_back(instance.names[v] + "#" +
                            std::to_string(copy_count[v] + 1));
        out.origin.push_back(out.origin[v]);
        if (wanted == Role::Source)
            out_manifs[v].push_back(id);
        else
            in_manifs[v].push_back(id);
        return id;
    };

    for (auto& l : out.links) {
        l.source = claim(l.source, Role::Source);
        l.sink = claim(l.sink, Role::Sink);
    }

    out.edges.clear();
    for (const auto& e : instance.edges) {
        for (int a : out_manifs[e.tail])
            for (int b : in_manifs[e.head])
                out.edges.push_back({a, b, e.weight});
    }
    out.finalize();
    return out;
}

// ---- the dynamic program ----

namespace {

struct DpContext {
    const LinkageInstance& inst;
    Budget& budget;
    int n;
    int k;
    std::vector<std::vector<int>> out;  // edge ids per tail, input order
    std::vector<int> topo_pos;
    ReachMatrix reach;
    std::vector<bool> is_sink;
    // per link, per edge: largest remaining length that keeps the agent
    // motivated across this edge; -1 when the edge is never usable
    std::vector<std::vector<long long>> max_rem;
    std::unordered_map<std::string, bool> memo;

    DpContext(const LinkageInstance& instance, Budget& b)
        : inst(instance), budget(b), n(instance.vertex_count()),
          k(static_cast<int>(instance.links.size())), reach(instance.vertex_count()) {
        out.assign(n, {});
        for (int e = 0; e < static_cast<int>(inst.edges.size()); ++e)
            out[inst.edges[e].tail].push_back(e);

        is_sink.assign(n, false);
        for (const Link& l : inst.links) is_sink[l.sink] = true;

        // topological order via Kahn, delaying sink terminals so they come
        // last (they have no out-edges, so this is always possible)
        std::vector<int> indeg(n, 0);
        for (const auto& e : inst.edges) ++indeg[e.head];
        auto later = [&](int a, int b) {
            if (is_sink[a] != is_sink[b]) return is_sink[a] && !is_sink[b];
            return a > b;
        };
        std::priority_queue<int, std::vector<int>, decltype(later)> ready(later);
        for (int v = 0; v < n; ++v)
            if (indeg[v] == 0) ready.push(v);
        std::vector<int> order;
        while (!ready.empty()) {
            int v = ready.top();
            ready.pop();
            order.push_back(v);
            for (int e : out[v])
                if (--indeg[inst.edges[e].head] == 0) ready.push(inst.edges[e].head);
        }
        topo_pos.assign(n, -1);
        for (int i = 0; i < n; ++i) topo_pos[order[i]] = i;

        for (int i = n; i-- > 0;) {
            int u = order[i];
            for (int e : out[u]) {
                int v = inst.edges[e].head;
                reach.set(u, v);
                reach.merge_row(u, v);
            }
        }

        max_rem.assign(k, std::vector<long long>(inst.edges.size(), -1));
        for (int i = 0; i < k; ++i) {
            const Link& l = inst.links[i];
            Rational slack = l.salience - Rational(1);
            for (size_t e = 0; e < inst.edges.size(); ++e) {
                // (b-1)*w + rem <= r  =>  rem <= r - (b-1)*w
                Rational bound = l.reward - slack * Rational(inst.edges[e].weight);
                if (bound.is_negative()) continue;
                BigInt whole = bound.numerator() / bound.denominator();
                long long cap =
                    whole.fits_int64() ? whole.to_int64() : l.length;
                max_rem[i][e] = std::min(cap, l.length);
            }
        }
    }

    std::string key(const std::vector<int>& heads,
                    const std::vector<long long>& rem) const {
        std::string k8(heads.size() * 12, '\0');
        for (size_t i = 0; i < heads.size(); ++i) {
            std::memcpy(k8.data() + i * 12, &heads[i], 4);
            std::memcpy(k8.data() + i * 12 + 4, &rem[i], 8);
        }
        return k8;
    }

    // advancing head: topologically earliest one not parked at its sink
    int pick(const std::vector<int>& heads) const {
        int best = -1;
        for (int i = 0; i < k; ++i) {
            if (heads[i] == inst.links[i].sink) continue;
            if (best == -1 || topo_pos[heads[i]] < topo_pos[heads[best]])
                best = i;
        }
        return best;
    }

    bool solve(std::vector<int>& heads, std::vector<long long>& rem) {
        for (int i = 0; i < k; ++i)
            if (heads[i] == inst.links[i].sink && rem[i] != 0) return false;
        int i = pick(heads);
        if (i == -1) return true;  // every head parked with zero remaining

        std::string state = key(heads, rem);
        if (auto it = memo.find(state); it != memo.end()) return it->second;
        budget.charge();

        // the topologically earliest head is reachable from no other head;
        // cross-check the recurrence guard anyway
        for (int j = 0; j < k; ++j)
            if (j != i && reach.get(heads[j], heads[i]))
                throw std::logic_error(
                    "linkage: advancing head is reachable from another");

        bool ok = false;
        for (int e : out[heads[i]]) {
            const auto& edge = inst.edges[e];
            if (edge.weight > rem[i]) continue;
            if (rem[i] > max_rem[i][e]) continue;  // motivation guard
            bool collides = false;
            for (int j = 0; j < k; ++j)
                if (heads[j] == edge.head) collides = true;
            if (collides) continue;
            int prev_head = heads[i];
            heads[i] = edge.head;
            rem[i] -= edge.weight;
            ok = solve(heads, rem);
            heads[i] = prev_head;
            rem[i] += edge.weight;
            if (ok) break;
        }
        memo.emplace(std::move(state), ok);
        return ok;
    }
};

}  // namespace

std::optional<LinkageSolution> solve_linkage(const LinkageInstance& instance,
                                             Budget& budget) {
    LinkageSolution solution;
    solution.paths.resize(instance.links.size());
    if (instance.links.empty()) return solution;  // vacuously satisfiable

    DpContext ctx(instance, budget);
    std::vector<int> heads;
    std::vector<long long> rem;
    for (const Link& l : instance.links) {
        heads.push_back(l.source);
        rem.push_back(l.length);
    }
    if (!ctx.solve(heads, rem)) return std::nullopt;

    for (size_t i = 0; i < heads.size(); ++i)
        solution.paths[i].push_back(instance.links[i].source);
    while (true) {
        int i = ctx.pick(heads);
        if (i == -1) break;
        bool advanced = false;
        for (int e : ctx.out[heads[i]]) {
            const auto& edge = instance.edges[e];
            if (edge.weight > rem[i]) continue;
            if (rem[i] > ctx.max_rem[i][e]) continue;
            bool collides = false;
            for (size_t j = 0; j < heads.size(); ++j)
                if (heads[j] == edge.head) collides = true;
            if (collides) continue;
            heads[i] = edge.head;
            rem[i] -= edge.weight;
            if (ctx.solve(heads, rem)) {
                solution.paths[i].push_back(edge.head);
                advanced = true;
                break;
            }
            heads[i] = edge.tail;
            rem[i] += edge.weight;
        }
        if (!advanced)
            throw std::logic_error("linkage: reconstruction stalled");
    }
    return solution;
}

std::optional<std::string> check_linkage_solution(
    const LinkageInstance& instance, const LinkageSolution& solution) {
    if (solution.paths.size() != instance.links.size())
        return "wrong number of paths";
    std::vector<int> interior_of(instance.vertex_count(), -1);
    std::vector<int> member_of(instance.vertex_count(), -1);

    for (size_t i = 0; i < solution.paths.size(); ++i) {
        const auto& path = solution.paths[i];
        const Link& link = instance.links[i];
        if (path.empty()) return "empty path";
        if (path.front() != link.source || path.back() != link.sink)
            return "path endpoints do not match link terminals";
        long long total = 0;
        std::vector<long long> step(path.size() - 1);
        for (size_t j = 0; j + 1 < path.size(); ++j) {
            long long w = -1;
            for (const auto& e : instance.edges)
                if (e.tail == path[j] && e.head == path[j + 1]) w = e.weight;
            if (w < 0) return "path uses a missing edge";
            step[j] = w;
            total += w;
        }
        if (total != link.length) return "path weight differs from link length";
        long long remaining = total;
        for (size_t j = 0; j + 1 < path.size(); ++j) {
            // (b-1)*w + d <= r at every prefix vertex
            Rational lhs = (link.salience - Rational(1)) * Rational(step[j]) +
                           Rational(remaining);
            if (lhs > link.reward) return "motivation guard violated";
            remaining -= step[j];
        }
        for (size_t j = 0; j < path.size(); ++j) {
            int v = path[j];
            bool inner = j > 0 && j + 1 < path.size();
            if (member_of[v] != -1 && member_of[v] != static_cast<int>(i)) {
                if (inner || interior_of[v] != -1)
                    return "paths are not internally disjoint";
            }
            if (j > 0 && member_of[v] == static_cast<int>(i))
                return "path repeats a vertex";
            member_of[v] = static_cast<int>(i);
            if (inner) interior_of[v] = static_cast<int>(i);
        }
    }
    return std::nullopt;
}

}  // namespace motiv
