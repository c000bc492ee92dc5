#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "helpers.hpp"
#include "motiv/io.hpp"

using namespace motiv;
using namespace motiv::testing;

namespace {

namespace fs = std::filesystem;

struct CliRun {
    int exit_code;
    std::string output;
};

CliRun run_cli(const std::string& args) {
    static const std::string binary = MOTIV_CLI_PATH;
    fs::path out = fs::temp_directory_path() / "motiv_cli_out.txt";
    std::string cmd = binary + " " + args + " > " + out.string() + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    std::ifstream in(out);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return {WEXITSTATUS(status), text};
}

fs::path write_temp(const std::string& name, const std::string& text) {
    fs::path path = fs::temp_directory_path() / name;
    std::ofstream out(path);
    out << text;
    return path;
}

}  // namespace

TEST_CASE("cli exit-code contract") {
    fs::path example = write_temp("motiv_example.json",
                               serialize_instance(example_reduction().instance));
    fs::path cyclic = write_temp("motiv_cyclic.json", R"({
        "vertices": ["s", "t"],
        "edges": [{"from": "s", "to": "t", "w": "1"},
                  {"from": "t", "to": "s", "w": "1"}],
        "s": "s", "t": "t", "r": "1", "b": "2"
    })");

    SUBCASE("validate") {
        CHECK(run_cli("validate " + example.string()).exit_code == 0);
        CHECK(run_cli("validate " + cyclic.string()).exit_code == 2);
        CHECK(run_cli("validate /nonexistent.json").exit_code == 2);
    }
    SUBCASE("solve yes and no") {
        CliRun yes = run_cli("solve " + example.string() + " -k 1");
        CHECK(yes.exit_code == 0);
        CHECK(yes.output.find("\"branching_count\": 1") != std::string::npos);
        CHECK(run_cli("solve " + example.string() + " -k 0").exit_code == 1);
    }
    SUBCASE("oracle mirrors solve") {
        CHECK(run_cli("oracle " + example.string() + " -k 1").exit_code == 0);
        CHECK(run_cli("oracle " + example.string() + " -k 0").exit_code == 1);
    }
    SUBCASE("path and simulate") {
        CHECK(run_cli("path " + example.string()).exit_code == 1);
        CliRun sim = run_cli("simulate " + example.string());
        CHECK(sim.exit_code == 1);  // not motivating
        CHECK(sim.output.find("abandons at: c5") != std::string::npos);
    }
    SUBCASE("min-reward") {
        CliRun run = run_cli("min-reward " + example.string());
        CHECK(run.exit_code == 0);
        CHECK(run.output == "81/80\n");
    }
    SUBCASE("budget exhaustion maps to exit 3") {
        CHECK(run_cli("solve " + example.string() + " -k 1 --budget 10")
                  .exit_code == 3);
    }
    SUBCASE("usage errors map to exit 2") {
        CHECK(run_cli("solve").exit_code == 2);
        CHECK(run_cli("frobnicate x").exit_code == 2);
    }
}

TEST_CASE("cli generation round-trip") {
    fs::path out = fs::temp_directory_path() / "motiv_gen.json";
    CliRun gen = run_cli("gen subset-sum --set 3,6,7 --target 10 --b 2 "
                         "--epsilon 1/160 -o " + out.string());
    CHECK(gen.exit_code == 0);
    PlanningInstance parsed = parse_instance(read_file(out.string()));
    ReductionOutput example = example_reduction();
    CHECK(serialize_instance(parsed) == serialize_instance(example.instance));

    CliRun solve = run_cli("solve " + out.string() + " -k 1");
    CHECK(solve.exit_code == 0);

    CliRun bad = run_cli("gen subset-sum --set 1,2 --target 0 --b 2");
    CHECK(bad.exit_code == 2);  // ZeroTarget
}

TEST_CASE("cli random generator is reproducible and prunable") {
    fs::path a = fs::temp_directory_path() / "motiv_rand_a.json";
    fs::path b = fs::temp_directory_path() / "motiv_rand_b.json";
    CHECK(run_cli("gen random --n 7 --edges 10 --max-w 3 --seed 42 -o " +
                  a.string()).exit_code == 0);
    CHECK(run_cli("gen random --n 7 --edges 10 --max-w 3 --seed 42 -o " +
                  b.string()).exit_code == 0);
    CHECK(read_file(a.string()) == read_file(b.string()));
    CHECK(run_cli("validate " + a.string()).exit_code == 0);
    CHECK(run_cli("simulate " + a.string() + " --all-traces").exit_code <= 1);
}

TEST_CASE("cli dot export is byte-identical across runs") {
    fs::path example = write_temp("motiv_example_dot.json",
                               serialize_instance(example_reduction().instance));
    CliRun first = run_cli("export-dot " + example.string());
    CliRun second = run_cli("export-dot " + example.string());
    CHECK(first.exit_code == 0);
    CHECK(first.output == second.output);
    CHECK(first.output.find("digraph") != std::string::npos);
}

TEST_CASE("cli linkage subcommand") {
    fs::path link = write_temp("motiv_linkage.json", R"({
        "vertices": ["a", "b"],
        "edges": [{"from": "a", "to": "b", "w": 2}],
        "links": [{"source": "a", "sink": "b", "length": 2,
                   "b": "1", "r": "2"}]
    })");
    CliRun yes = run_cli("linkage " + link.string());
    CHECK(yes.exit_code == 0);
    CHECK(yes.output.find("\"found\": true") != std::string::npos);

    fs::path none = write_temp("motiv_linkage_no.json", R"({
        "vertices": ["a", "b"],
        "edges": [{"from": "a", "to": "b", "w": 2}],
        "links": [{"source": "a", "sink": "b", "length": 2,
                   "b": "1", "r": "0"}]
    })");
    CHECK(run_cli("linkage " + none.string()).exit_code == 1);
}
