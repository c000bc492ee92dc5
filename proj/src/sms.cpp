#include "motiv/sms.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "motiv/motivating_path.hpp"

namespace motiv {

ReachGraph build_reachability_graph(const TaskGraph& graph,
                                    const GuessFrame& frame, int s, int t) {
    std::set<int> vert_set{s, t};
    vert_set.insert(frame.branch.begin(), frame.branch.end());
    vert_set.insert(frame.star.begin(), frame.star.end());
    vert_set.insert(frame.diamond.begin(), frame.diamond.end());
    vert_set.insert(frame.merge.begin(), frame.merge.end());

    ReachGraph h;
    h.verts.assign(vert_set.begin(), vert_set.end());
    std::sort(h.verts.begin(), h.verts.end(), [&](int a, int b) {
        return graph.topo_pos(a) < graph.topo_pos(b);
    });

    std::vector<bool> in_h(graph.vertex_count(), false);
    for (int v : h.verts) in_h[v] = true;

    for (int u : h.verts) {
        // all H vertices reachable from u without crossing another H vertex
        std::vector<bool> visited(graph.vertex_count(), false);
        std::set<int> hits;
        std::vector<int> stack{u};
        visited[u] = true;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int e : graph.out_edges(x)) {
                int y = graph.edge(e).head;
                if (in_h[y]) {
                    hits.insert(y);
                    continue;  // endpoints only, never pass through
                }
                if (!visited[y]) {
                    visited[y] = true;
                    stack.push_back(y);
                }
            }
        }
        for (int v : hits) h.edges.emplace_back(u, v);
    }
    std::sort(h.edges.begin(), h.edges.end(), [&](auto a, auto b) {
        int pa = graph.topo_pos(a.first), pb = graph.topo_pos(b.first);
        if (pa != pb) return pa < pb;
        return graph.topo_pos(a.second) < graph.topo_pos(b.second);
    });
    return h;
}

// ---- weighting enumeration ----

namespace {

// distances to t inside H' under a candidate weighting; -1 for unreachable
std::vector<long long> hp_distances(const ContractedGraph& hp,
                                    const std::vector<long long>& weights) {
    int m = static_cast<int>(hp.verts.size());
    std::vector<std::vector<int>> out(m);
    std::map<int, int> pos;
    for (int i = 0; i < m; ++i) pos[hp.verts[i]] = i;
    for (int e = 0; e < static_cast<int>(hp.edges.size()); ++e)
        out[pos[hp.edges[e].tail]].push_back(e);

    std::vector<long long> dist(m, -1);
    dist[m - 1] = 0;  // verts are topo-sorted, t is last
    for (int i = m - 1; i-- > 0;) {
        for (int e : out[i]) {
            long long d = dist[pos[hp.edges[e].head]];
            if (d < 0) continue;
            long long cand = weights[e] + d;
            if (dist[i] < 0 || cand < dist[i]) dist[i] = cand;
        }
    }
    return dist;
}

}  // namespace

bool enumerate_weightings(
    const ContractedGraph& hp, long long total_weight_bound,
    const Rational& salience,
    const std::function<bool(const std::vector<long long>&,
                             const std::vector<long long>&)>& yield) {
    int ne = static_cast<int>(hp.edges.size());
    std::vector<long long> weights(ne, 0);
    std::vector<int> free_edges;
    long long fixed_sum = 0;
    for (int e = 0; e < ne; ++e) {
        if (hp.edges[e].fixed) {
            weights[e] = hp.edges[e].fixed_weight;
            fixed_sum += weights[e];
        } else {
            free_edges.push_back(e);
        }
    }
    if (fixed_sum > total_weight_bound) return true;

    std::vector<std::vector<long long>> domains;
    for (int e : free_edges) {
        if (!hp.edges[e].domain.empty()) {
            domains.push_back(hp.edges[e].domain);
        } else {
            std::vector<long long> all(total_weight_bound + 1);
            for (long long w = 0; w <= total_weight_bound; ++w) all[w] = w;
            domains.push_back(std::move(all));
        }
    }
    // smallest admissible completion below each suffix, for sum pruning
    std::vector<long long> min_suffix(free_edges.size() + 1, 0);
    for (size_t i = free_edges.size(); i-- > 0;)
        min_suffix[i] = min_suffix[i + 1] + domains[i].front();

    std::map<int, int> pos;
    for (int i = 0; i < static_cast<int>(hp.verts.size()); ++i)
        pos[hp.verts[i]] = i;

    auto emit = [&]() -> bool {  // false stops the whole enumeration
        std::vector<long long> dist = hp_distances(hp, weights);
        for (auto [se, de] : hp.branch_edges) {
            long long ds = dist[pos.at(hp.edges[se].head)];
            long long dd = dist[pos.at(hp.edges[de].head)];
            if (ds < 0 || dd < 0) return true;
            // strict temptation: the star step must look strictly better
            Rational star_cost = salience * Rational(weights[se]) + Rational(ds);
            Rational shortcut = salience * Rational(weights[de]) + Rational(dd);
            if (!(star_cost < shortcut)) return true;
        }
        return yield(weights, dist);
    };

    // odometer over the free-edge domains with partial-sum pruning
    std::function<bool(size_t, long long)> rec = [&](size_t i,
                                                     long long sum) -> bool {
        if (i == free_edges.size()) return emit();
        for (long long value : domains[i]) {
            if (sum + value + min_suffix[i + 1] > total_weight_bound) break;
            weights[free_edges[i]] = value;
            if (!rec(i + 1, sum + value)) return false;
        }
        return true;
    };
    return rec(0, fixed_sum);
}

int count_branchings(const std::vector<std::pair<int, int>>& edges) {
    std::map<int, std::set<int>> out;
    for (auto [u, v] : edges) out[u].insert(v);
    int count = 0;
    for (const auto& [u, heads] : out)
        if (heads.size() >= 2) ++count;
    return count;
}

// ---- frame enumeration and the solver proper ----

namespace {

struct SolverContext {
    const ScaledInstance& scaled;
    const TaskGraph& g;
    std::vector<long long> w_int;  // per edge
    long long total_weight = 0;
    ReachMatrix reach;
    Budget budget;
    std::atomic<bool> stop{false};

    SolverContext(const ScaledInstance& sc, uint64_t budget_limit)
        : scaled(sc), g(sc.instance.graph),
          budget(budget_limit, Errc::InstanceTooLarge) {
        for (const Edge& e : g.edges()) {
            if (!e.weight.is_integer())
                fail(Errc::NonIntegerWeights,
                     "edge weight " + e.weight.to_string() + " is not integral");
            if (!e.weight.numerator().fits_int64())
                fail(Errc::InstanceTooLarge, "edge weight exceeds 64 bits");
            w_int.push_back(e.weight.numerator().to_int64());
        }
        if (!sc.total_weight.fits_int64())
            fail(Errc::InstanceTooLarge, "total weight exceeds 64 bits");
        total_weight = sc.total_weight.to_int64();
        reach = g.reachability();
    }
};

std::vector<int> sorted_out_neighbors(const TaskGraph& g, int u) {
    std::vector<int> heads;
    for (int e : g.out_edges(u)) heads.push_back(g.edge(e).head);
    std::sort(heads.begin(), heads.end(),
              [&](int a, int b) { return g.topo_pos(a) < g.topo_pos(b); });
    return heads;
}

std::vector<GuessFrame> enumerate_frames(SolverContext& ctx, int k) {
    const TaskGraph& g = ctx.g;
    std::vector<int> branch_cands, merge_cands;
    for (int v : g.topo_order()) {
        if (g.out_degree(v) >= 2) branch_cands.push_back(v);
        if (g.in_degree(v) >= 2) merge_cands.push_back(v);
    }

    std::vector<GuessFrame> frames;
    std::vector<int> branch(k), star(k), diamond(k);

    // merge sets: every subset of merge candidates of size 0..k (the
    // multiset of k merge vertices collapses to its distinct members)
    std::vector<std::vector<int>> merge_sets{{}};
    std::vector<int> chosen;
    std::function<void(size_t)> pick_merge = [&](size_t from) {
        for (size_t i = from; i < merge_cands.size(); ++i) {
            chosen.push_back(merge_cands[i]);
            merge_sets.push_back(chosen);
            if (static_cast<int>(chosen.size()) < k) pick_merge(i + 1);
            chosen.pop_back();
        }
    };
    pick_merge(0);

    std::function<void(int)> pick_diamond = [&](int i) {
        if (i == k) {
            for (const auto& merge : merge_sets) {
                ctx.budget.charge();
                frames.push_back({branch, star, diamond, merge});
            }
            return;
        }
        for (int v : sorted_out_neighbors(g, branch[i])) {
            if (v == star[i]) continue;
            diamond[i] = v;
            pick_diamond(i + 1);
        }
    };

    std::function<void(int)> pick_star = [&](int i) {
        if (i == k) {
            pick_diamond(0);
            return;
        }
        for (int v : sorted_out_neighbors(g, branch[i])) {
            bool dup = false;
            for (int j = 0; j < i; ++j)
                if (star[j] == v) dup = true;
            if (dup) continue;
            // the agent path must continue from star[i] to the next branch
            if (i + 1 < k && v != branch[i + 1] && !ctx.reach.get(v, branch[i + 1]))
                continue;
            star[i] = v;
            pick_star(i + 1);
        }
    };

    std::function<void(size_t, int)> pick_branch = [&](size_t from, int i) {
        if (i == k) {
            pick_star(0);
            return;
        }
        for (size_t c = from; c < branch_cands.size(); ++c) {
            int v = branch_cands[c];
            // members of B must form a reachability chain, otherwise no
            // path visits all of them and the guess can be skipped
            if (i > 0 && !ctx.reach.get(branch[i - 1], v)) continue;
            branch[i] = v;
            pick_branch(c + 1, i + 1);
        }
    };
    pick_branch(0, 0);
    return frames;
}

// achievable total weights of u->v paths in G that avoid every other H
// vertex; used to restrict free-edge domains before dispatching to the
// linkage DP (a value no u-v path attains can never be realized)
class AchievableSums {
public:
    AchievableSums(SolverContext& ctx, const std::vector<int>& h_verts)
        : ctx_(ctx), in_h_(ctx.g.vertex_count(), false) {
        for (int v : h_verts) in_h_[v] = true;
    }

    const std::vector<long long>& get(int u, int v) {
        auto key = std::make_pair(u, v);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        compute_from(u);
        return cache_.at(key);
    }

private:
    SolverContext& ctx_;
    std::vector<bool> in_h_;
    std::set<int> computed_;
    std::map<std::pair<int, int>, std::vector<long long>> cache_;

    void compute_from(int u) {
        if (!computed_.insert(u).second) return;
        const TaskGraph& g = ctx_.g;
        long long w_cap = ctx_.total_weight;
        size_t words = static_cast<size_t>(w_cap / 64 + 1);
        ctx_.budget.charge(words * g.vertex_count() / 8 + 1);

        // bitset of achievable prefix sums per interior vertex
        std::vector<std::vector<uint64_t>> sums(g.vertex_count());
        std::map<int, std::vector<uint64_t>> at_target;
        auto add_shifted = [&](std::vector<uint64_t>& dst,
                               const std::vector<uint64_t>& src, long long by) {
            if (dst.empty()) dst.assign(words, 0);
            size_t word_shift = static_cast<size_t>(by / 64);
            int bit_shift = static_cast<int>(by % 64);
            for (size_t i = words; i-- > word_shift;) {
                uint64_t chunk = src[i - word_shift] << bit_shift;
                if (bit_shift != 0 && i - word_shift > 0)
                    chunk |= src[i - word_shift - 1] >> (64 - bit_shift);
                dst[i] |= chunk;
            }
        };

        std::vector<uint64_t> base(words, 0);
        base[0] = 1;  // empty prefix at u
        for (int x : g.topo_order()) {
            const std::vector<uint64_t>* from = nullptr;
            if (x == u)
                from = &base;
            else if (!in_h_[x] && !sums[x].empty())
                from = &sums[x];
            else
                continue;
            for (int e : g.out_edges(x)) {
                int y = g.edge(e).head;
                long long w = ctx_.w_int[e];
                if (w > w_cap) continue;
                if (in_h_[y]) {
                    if (y != u) add_shifted(at_target[y], *from, w);
                } else {
                    add_shifted(sums[y], *from, w);
                }
            }
        }
        for (int v : g.topo_order()) {
            if (!in_h_[v] || v == u) continue;
            std::vector<long long> values;
            auto it = at_target.find(v);
            if (it != at_target.end()) {
                for (long long w = 0; w <= w_cap; ++w)
                    if (it->second[w / 64] >> (w % 64) & 1) values.push_back(w);
            }
            cache_[{u, v}] = std::move(values);
        }
    }
};

struct FrameOutcome {
    std::optional<SmsSolution> solution;
};

std::optional<SmsSolution> verify_and_package(
    SolverContext& ctx, int k, const std::set<std::pair<int, int>>& edge_set) {
    const TaskGraph& g = ctx.g;
    std::vector<int> edge_ids;
    for (auto [u, v] : edge_set) {
        auto e = g.edge_between(u, v);
        if (!e) return std::nullopt;
        edge_ids.push_back(*e);
    }
    PlanningInstance sub;
    sub.graph = g.edge_subgraph(edge_ids);
    sub.s = ctx.scaled.instance.s;
    sub.t = ctx.scaled.instance.t;
    sub.reward = ctx.scaled.instance.reward;
    sub.salience = ctx.scaled.instance.salience;
    PlanningInstance pruned;
    try {
        pruned = prune(sub);
    } catch (const Error&) {
        return std::nullopt;
    }

    // independent re-verification: the glued subgraph must be motivating
    // and within the branching bound
    MotivationReport report = is_motivating(pruned);
    if (!report.motivating) return std::nullopt;

    SmsSolution solution;
    for (const Edge& e : pruned.graph.edges())
        solution.edges.emplace_back(g.require(pruned.graph.name(e.tail)),
                                    g.require(pruned.graph.name(e.head)));
    solution.branching_count = count_branchings(solution.edges);
    if (solution.branching_count > k) return std::nullopt;

    CostTable table = cost_table(pruned);
    int u = pruned.s;
    solution.agent_path.push_back(g.require(pruned.graph.name(u)));
    while (u != pruned.t) {
        u = greedy_successors(pruned, table, u).front();
        solution.agent_path.push_back(g.require(pruned.graph.name(u)));
    }
    return solution;
}

std::optional<SmsSolution> process_frame(SolverContext& ctx, int k,
                                         const GuessFrame& frame) {
    const TaskGraph& g = ctx.g;
    int s = ctx.scaled.instance.s, t = ctx.scaled.instance.t;
    ReachGraph h = build_reachability_graph(g, frame, s, t);

    std::map<int, std::vector<int>> out_h;
    for (auto [u, v] : h.edges) out_h[u].push_back(v);

    std::map<int, int> branch_index;
    for (int i = 0; i < k; ++i) branch_index[frame.branch[i]] = i;

    // out-edge choices per H vertex: branches are forced to (star, diamond),
    // every other non-target vertex picks exactly one H out-neighbor
    std::vector<int> choosers;      // vertices with a free out-choice
    for (int v : h.verts) {
        if (v == t || branch_index.count(v)) continue;
        if (out_h[v].empty()) return std::nullopt;  // cannot reach t, dead
        choosers.push_back(v);
    }
    for (int i = 0; i < k; ++i) {
        auto& heads = out_h[frame.branch[i]];
        if (std::find(heads.begin(), heads.end(), frame.star[i]) == heads.end() ||
            std::find(heads.begin(), heads.end(), frame.diamond[i]) == heads.end())
            return std::nullopt;
    }

    AchievableSums achievable(ctx, h.verts);
    std::optional<SmsSolution> found;

    std::vector<size_t> choice(choosers.size(), 0);
    while (true) {
        if (ctx.stop.load(std::memory_order_relaxed)) return std::nullopt;
        ctx.budget.charge();

        // assemble H'
        ContractedGraph hp;
        hp.verts = h.verts;
        std::map<int, int> next_of;  // unique successor of non-branch verts
        for (size_t i = 0; i < choosers.size(); ++i)
            next_of[choosers[i]] = out_h[choosers[i]][choice[i]];
        std::vector<std::pair<int, int>> hp_edges;
        for (int v : h.verts) {
            if (auto it = branch_index.find(v); it != branch_index.end()) {
                hp_edges.emplace_back(v, frame.star[it->second]);
                hp_edges.emplace_back(v, frame.diamond[it->second]);
            } else if (v != t) {
                hp_edges.emplace_back(v, next_of.at(v));
            }
        }
        std::sort(hp_edges.begin(), hp_edges.end(), [&](auto a, auto b) {
            int pa = g.topo_pos(a.first), pb = g.topo_pos(b.first);
            if (pa != pb) return pa < pb;
            return g.topo_pos(a.second) < g.topo_pos(b.second);
        });

        // P': from s, follow star edges at branches and the unique
        // out-edge elsewhere; valid when every branch vertex is visited
        std::vector<int> pprime{s};
        std::set<int> visited_branches;
        int cur = s;
        while (cur != t) {
            int nxt;
            if (auto it = branch_index.find(cur); it != branch_index.end()) {
                visited_branches.insert(cur);
                nxt = frame.star[it->second];
            } else {
                nxt = next_of.at(cur);
            }
            pprime.push_back(nxt);
            cur = nxt;
        }
        bool pprime_ok =
            static_cast<int>(visited_branches.size()) == k;

        if (pprime_ok) {
            std::set<std::pair<int, int>> on_path;
            for (size_t i = 0; i + 1 < pprime.size(); ++i)
                on_path.emplace(pprime[i], pprime[i + 1]);

            for (auto [u, v] : hp_edges) {
                ContractedGraph::CEdge ce;
                ce.tail = u;
                ce.head = v;
                ce.on_agent_path = on_path.count({u, v}) > 0;
                if (auto e = g.edge_between(u, v)) {
                    ce.fixed = true;
                    ce.fixed_weight = ctx.w_int[*e];
                } else {
                    ce.domain = achievable.get(u, v);
                    if (ce.domain.empty()) {
                        pprime_ok = false;  // no realization can exist
                        break;
                    }
                }
                hp.edges.push_back(std::move(ce));
            }
            hp.agent_path = pprime;
        }

        if (pprime_ok) {
            for (int i = 0; i < k; ++i) {
                int se = -1, de = -1;
                for (int e = 0; e < static_cast<int>(hp.edges.size()); ++e) {
                    if (hp.edges[e].tail != frame.branch[i]) continue;
                    if (hp.edges[e].head == frame.star[i]) se = e;
                    if (hp.edges[e].head == frame.diamond[i]) de = e;
                }
                hp.branch_edges.emplace_back(se, de);
            }

            std::map<int, int> vert_pos;
            for (int i = 0; i < static_cast<int>(hp.verts.size()); ++i)
                vert_pos[hp.verts[i]] = i;
            std::set<int> branch_edge_ids;
            for (auto [se, de] : hp.branch_edges) {
                branch_edge_ids.insert(se);
                branch_edge_ids.insert(de);
            }

            enumerate_weightings(
                hp, ctx.total_weight, ctx.scaled.instance.salience,
                [&](const std::vector<long long>& weights,
                    const std::vector<long long>& dist) -> bool {
                    if (ctx.stop.load(std::memory_order_relaxed)) return false;
                    ctx.budget.charge();

                    // the agent must be motivated to take each star edge:
                    // b*w'(u_i u*_i) + Dist(u*_i, t) <= r
                    const Rational& b = ctx.scaled.instance.salience;
                    const Rational& r = ctx.scaled.instance.reward;
                    for (auto [se, de] : hp.branch_edges) {
                        long long dstar = dist[vert_pos.at(hp.edges[se].head)];
                        if (b * Rational(weights[se]) + Rational(dstar) > r)
                            return true;
                    }

                    // linkage instance: one link per contracted edge; the
                    // 2k branch edges are literal G edges and stay fixed
                    LinkageInstance li;
                    for (int v = 0; v < g.vertex_count(); ++v)
                        li.names.push_back(g.name(v));
                    for (int e = 0; e < g.edge_count(); ++e)
                        li.edges.push_back({g.edge(e).tail, g.edge(e).head,
                                            ctx.w_int[e]});
                    std::vector<int> link_edge;  // hp edge per link
                    for (int e = 0; e < static_cast<int>(hp.edges.size()); ++e) {
                        if (branch_edge_ids.count(e)) continue;
                        const auto& ce = hp.edges[e];
                        Link link;
                        link.source = ce.tail;
                        link.sink = ce.head;
                        link.length = weights[e];
                        if (ce.on_agent_path) {
                            link.salience = b;
                            link.reward =
                                r - Rational(dist[vert_pos.at(ce.head)]);
                        } else {
                            link.salience = Rational(1);
                            link.reward = Rational(weights[e]);
                        }
                        li.links.push_back(link);
                        link_edge.push_back(e);
                    }
                    li.finalize();

                    LinkageInstance normalized = normalize_terminals(li);
                    auto linkage_solution = solve_linkage(normalized, ctx.budget);
                    if (!linkage_solution) return true;

                    std::set<std::pair<int, int>> edge_set;
                    for (int id : branch_edge_ids)
                        edge_set.emplace(hp.edges[id].tail, hp.edges[id].head);
                    for (const auto& path : linkage_solution->paths)
                        for (size_t i = 0; i + 1 < path.size(); ++i)
                            edge_set.emplace(normalized.origin[path[i]],
                                             normalized.origin[path[i + 1]]);

                    auto solution = verify_and_package(ctx, k, edge_set);
                    if (!solution) return true;
                    found = std::move(solution);
                    return false;
                });
            if (found) return found;
        }

        // bump the odometer
        size_t pos = 0;
        while (pos < choice.size()) {
            if (++choice[pos] < out_h[choosers[pos]].size()) break;
            choice[pos] = 0;
            ++pos;
        }
        if (pos == choice.size()) break;
    }
    return std::nullopt;
}

std::optional<SmsSolution> solve_exact_k(SolverContext& ctx, int k,
                                         const SolveOptions& options) {
    std::vector<GuessFrame> frames = enumerate_frames(ctx, k);
    if (options.threads <= 1) {
        for (const GuessFrame& frame : frames)
            if (auto solution = process_frame(ctx, k, frame)) return solution;
        return std::nullopt;
    }

    std::atomic<size_t> next{0};
    std::mutex lock;
    std::optional<SmsSolution> found;
    std::exception_ptr error;
    auto worker = [&]() {
        try {
            while (!ctx.stop.load(std::memory_order_relaxed)) {
                size_t i = next.fetch_add(1);
                if (i >= frames.size()) break;
                if (auto solution = process_frame(ctx, k, frames[i])) {
                    std::lock_guard guard(lock);
                    if (!found) found = std::move(solution);
                    ctx.stop.store(true);
                }
            }
        } catch (...) {
            std::lock_guard guard(lock);
            if (!error) error = std::current_exception();
            ctx.stop.store(true);
        }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < options.threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    ctx.stop.store(false);
    if (found) return found;
    if (error) std::rethrow_exception(error);
    return std::nullopt;
}

}  // namespace

std::optional<SmsSolution> solve_sms(const ScaledInstance& scaled, int k,
                                     const SolveOptions& options) {
    if (!is_pruned(scaled.instance))
        fail(Errc::FormatError, "solve_sms requires a pruned instance");
    SolverContext ctx(scaled, options.budget);

    for (int round = 0; round <= k; ++round) {
        if (round == 0) {
            PathResult path = solve_motivating_path(scaled.instance);
            if (path.found()) {
                SmsSolution solution;
                for (size_t i = 0; i + 1 < path.path.size(); ++i)
                    solution.edges.emplace_back(path.path[i], path.path[i + 1]);
                solution.branching_count = 0;
                solution.agent_path = path.path;
                return solution;
            }
            continue;
        }
        if (auto solution = solve_exact_k(ctx, round, options)) return solution;
    }
    return std::nullopt;
}

}  // namespace motiv
