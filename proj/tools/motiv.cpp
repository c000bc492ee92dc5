#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "motiv/agent.hpp"
#include "motiv/io.hpp"
#include "motiv/motivating_path.hpp"
#include "motiv/oracle.hpp"
#include "motiv/reduction.hpp"
#include "motiv/sms.hpp"

using namespace motiv;

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

int exit_code_for(const Error& error) {
    switch (error.code()) {
        case Errc::BudgetExceeded:
        case Errc::InstanceTooLarge:
            return kExitBudget;
        default:
            return kExitUsage;
    }
}

PlanningInstance load_pruned(const std::string& path) {
    return prune(parse_instance(read_file(path)));
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty())
        std::cout << text;
    else
        write_file(out_path, text);
}

int run_validate(const std::string& file) {
    PlanningInstance instance = parse_instance(read_file(file));
    const TaskGraph& g = instance.graph;
    std::cout << "ok: " << g.vertex_count() << " vertices, " << g.edge_count()
              << " edges\ntopological order:";
    for (int v : g.topo_order()) std::cout << " " << g.name(v);
    std::cout << "\n";
    return kExitYes;
}

int run_simulate(const std::string& file, bool all_traces, uint64_t budget) {
    PlanningInstance instance = load_pruned(file);
    const TaskGraph& g = instance.graph;
    MotivationReport report = is_motivating(instance);
    std::cout << "motivating: " << (report.motivating ? "yes" : "no") << "\n";
    std::cout << "greedy-reachable:";
    for (int v : report.reachable) std::cout << " " << g.name(v);
    std::cout << "\n";
    if (report.witness)
        std::cout << "abandons at: " << g.name(*report.witness)
                  << " (perceived " << report.table.perceived[*report.witness].to_string()
                  << " > r = " << instance.reward.to_string() << ")\n";
    bool truncated = false;
    if (all_traces) {
        TraceSet traces = enumerate_traces(instance, budget);
        truncated = traces.truncated;
        for (const AgentTrace& trace : traces.traces) {
            std::cout << "trace:";
            for (int v : trace.walk) std::cout << " " << g.name(v);
            if (trace.reached_target)
                std::cout << " -> target\n";
            else
                std::cout << " -> abandoned (perceived "
                          << trace.abandoned_cost.to_string() << ")\n";
        }
        if (truncated)
            std::cout << "(trace budget of " << budget << " exceeded)\n";
    }
    if (truncated) return kExitBudget;
    return report.motivating ? kExitYes : kExitNo;
}

int run_min_reward(const std::string& file) {
    PlanningInstance instance = load_pruned(file);
    std::cout << min_reward(instance).to_string() << "\n";
    return kExitYes;
}

int run_path(const std::string& file) {
    PlanningInstance instance = load_pruned(file);
    PathResult result = solve_motivating_path(instance);
    if (!result.found()) {
        std::cout << "none\n";
        return kExitNo;
    }
    std::cout << "length: " << result.length->to_string() << "\npath:";
    for (int v : result.path) std::cout << " " << instance.graph.name(v);
    std::cout << "\n";
    return kExitYes;
}

int emit_solution(const PlanningInstance& instance,
                  const std::optional<SmsSolution>& solution,
                  const std::string& subgraph_out, const std::string& dot_out) {
    if (!solution) {
        std::cout << "no solution\n";
        return kExitNo;
    }
    std::string text = serialize_solution(instance.graph, *solution);
    std::cout << text;
    if (!subgraph_out.empty()) write_file(subgraph_out, text);
    if (!dot_out.empty())
        write_file(dot_out, export_dot(instance, &*solution));
    return kExitYes;
}

int run_solve(const std::string& file, int k, uint64_t budget, int threads,
              const std::string& subgraph_out, const std::string& dot_out) {
    PlanningInstance instance = load_pruned(file);
    ScaledInstance scaled = scale_to_integers(instance);
    SolveOptions options;
    options.budget = budget;
    options.threads = threads;
    auto solution = solve_sms(scaled, k, options);
    return emit_solution(scaled.instance, solution, subgraph_out, dot_out);
}

int run_oracle(const std::string& file, int k, uint64_t budget,
               const std::string& subgraph_out, const std::string& dot_out) {
    PlanningInstance instance = load_pruned(file);
    auto solution = brute_force_sms(instance, k, 32, budget);
    return emit_solution(instance, solution, subgraph_out, dot_out);
}

int run_linkage(const std::string& file, uint64_t budget) {
    LinkageInstance raw = parse_linkage(read_file(file));
    LinkageInstance normalized = normalize_terminals(raw);
    Budget steps(budget, Errc::InstanceTooLarge);
    auto solution = solve_linkage(normalized, steps);
    if (!solution) {
        std::cout << "{\"found\": false}\n";
        return kExitNo;
    }
    std::cout << serialize_linkage_solution(normalized, *solution);
    return kExitYes;
}

int run_gen_subset_sum(const std::string& set_csv, long long target,
                       const std::string& b_text, const std::string& eps_text,
                       const std::string& out_path) {
    SubsetSumInstance ss;
    std::string item;
    std::istringstream stream(set_csv);
    while (std::getline(stream, item, ',')) {
        try {
            ss.values.push_back(std::stoll(item));
        } catch (const std::exception&) {
            fail(Errc::FormatError, "bad set element '" + item + "'");
        }
    }
    ss.target = target;
    std::optional<Rational> eps;
    if (!eps_text.empty()) eps = Rational::parse(eps_text);
    ReductionOutput reduction =
        subset_sum_to_sms(ss, Rational::parse(b_text), eps);
    emit(serialize_instance(reduction.instance), out_path);
    std::cerr << "epsilon = " << reduction.epsilon.to_string() << "\n";
    return kExitYes;
}

int run_gen_random(int n, int m, long long max_w, uint64_t seed,
                   const std::string& r_text, const std::string& b_text,
                   const std::string& out_path) {
    if (n < 2) fail(Errc::FormatError, "need at least 2 vertices");
    std::mt19937_64 rng(seed);
    GraphData data;
    for (int v = 0; v < n; ++v) data.vertices.push_back("v" + std::to_string(v));

    // random spine from v0 to v(n-1), then extra forward edges
    std::set<std::pair<int, int>> picked;
    std::vector<int> spine{0};
    for (int v = 1; v + 1 < n; ++v)
        if (rng() % 2) spine.push_back(v);
    spine.push_back(n - 1);
    for (size_t i = 0; i + 1 < spine.size(); ++i)
        picked.emplace(spine[i], spine[i + 1]);
    std::uniform_int_distribution<int> vdist(0, n - 1);
    for (int tries = 0; tries < 20 * m; ++tries) {
        if (static_cast<int>(picked.size()) >= m) break;
        int a = vdist(rng), b = vdist(rng);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        picked.emplace(a, b);
    }
    std::uniform_int_distribution<long long> wdist(0, max_w);
    for (auto [a, b] : picked)
        data.edges.push_back({"v" + std::to_string(a), "v" + std::to_string(b),
                              Rational(wdist(rng))});

    PlanningInstance instance = PlanningInstance::make(
        TaskGraph::validate(data), "v0", "v" + std::to_string(n - 1),
        Rational::parse(r_text), Rational::parse(b_text));
    emit(serialize_instance(instance), out_path);
    return kExitYes;
}

int run_export_dot(const std::string& file, const std::string& solution_path,
                   const std::string& out_path) {
    PlanningInstance instance = parse_instance(read_file(file));
    std::optional<SmsSolution> solution;
    if (!solution_path.empty())
        solution = parse_solution(instance.graph, read_file(solution_path));
    emit(export_dot(instance, solution ? &*solution : nullptr), out_path);
    return kExitYes;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact solvers for time-inconsistent planning: agent "
                 "simulation, motivating paths, and simple motivating "
                 "subgraphs"};
    app.require_subcommand(1);

    std::string file, out_path, subgraph_out, dot_out, solution_path;
    std::string b_text = "2", r_text = "10", eps_text, set_csv;
    int k = 0, n = 6, m = 8, threads = 1;
    long long target = 0, max_w = 4;
    uint64_t budget = 100'000'000, trace_budget = 1000, seed = 1;
    bool all_traces = false;

    auto* validate = app.add_subcommand("validate", "check an instance file");
    validate->add_option("file", file)->required();

    auto* simulate = app.add_subcommand("simulate", "run the agent");
    simulate->add_option("file", file)->required();
    simulate->add_flag("--all-traces", all_traces, "list every greedy walk");
    simulate->add_option("--budget", trace_budget, "max trace count");

    auto* minr = app.add_subcommand("min-reward", "minimum motivating reward");
    minr->add_option("file", file)->required();

    auto* path = app.add_subcommand("path", "shortest motivating path");
    path->add_option("file", file)->required();

    auto* solve = app.add_subcommand("solve", "simple motivating subgraph");
    solve->add_option("file", file)->required();
    solve->add_option("-k", k, "max branching vertices")->required();
    solve->add_option("--budget", budget, "step budget");
    solve->add_option("--threads", threads, "frame workers");
    solve->add_option("--emit-subgraph", subgraph_out, "write solution JSON");
    solve->add_option("--dot", dot_out, "write solution DOT");

    auto* oracle = app.add_subcommand("oracle", "brute-force reference solver");
    oracle->add_option("file", file)->required();
    oracle->add_option("-k", k, "max branching vertices")->required();
    oracle->add_option("--budget", budget, "step budget");
    oracle->add_option("--emit-subgraph", subgraph_out, "write solution JSON");
    oracle->add_option("--dot", dot_out, "write solution DOT");

    auto* linkage = app.add_subcommand("linkage", "exact motivating k-linkage");
    linkage->group("");  // debugging surface, hidden from help
    linkage->add_option("file", file)->required();
    linkage->add_option("--budget", budget, "step budget");

    auto* gen = app.add_subcommand("gen", "instance generators");
    gen->require_subcommand(1);
    auto* gen_ss = gen->add_subcommand("subset-sum", "Subset-Sum reduction");
    gen_ss->add_option("--set", set_csv, "comma-separated integers")->required();
    gen_ss->add_option("--target", target, "target sum W")->required();
    gen_ss->add_option("--b", b_text, "salience factor > 1");
    gen_ss->add_option("--epsilon", eps_text, "explicit epsilon p/q");
    gen_ss->add_option("-o,--out", out_path, "output file");
    auto* gen_rand = gen->add_subcommand("random", "random pruned DAG");
    gen_rand->add_option("--n", n, "vertex count");
    gen_rand->add_option("--edges", m, "edge count target");
    gen_rand->add_option("--max-w", max_w, "max integer weight");
    gen_rand->add_option("--seed", seed, "rng seed");
    gen_rand->add_option("--r", r_text, "reward");
    gen_rand->add_option("--b", b_text, "salience");
    gen_rand->add_option("-o,--out", out_path, "output file");

    auto* dot = app.add_subcommand("export-dot", "Graphviz export");
    dot->add_option("file", file)->required();
    dot->add_option("--solution", solution_path, "solution JSON to highlight");
    dot->add_option("-o,--out", out_path, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*validate) return run_validate(file);
        if (*simulate) return run_simulate(file, all_traces, trace_budget);
        if (*minr) return run_min_reward(file);
        if (*path) return run_path(file);
        if (*solve) return run_solve(file, k, budget, threads, subgraph_out, dot_out);
        if (*oracle) return run_oracle(file, k, budget, subgraph_out, dot_out);
        if (*linkage) return run_linkage(file, budget);
        if (*gen_ss) return run_gen_subset_sum(set_csv, target, b_text, eps_text, out_path);
        if (*gen_rand) return run_gen_random(n, m, max_w, seed, r_text, b_text, out_path);
        if (*dot) return run_export_dot(file, solution_path, out_path);
    } catch (const Error& error) {
        std::cerr << "error: " << error.what() << "\n";
        return exit_code_for(error);
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
