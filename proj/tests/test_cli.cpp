#include "cli.hpp"

#include "capital/io.hpp"

#include <doctest.h>

#include <cstdlib>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace capital;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "capital");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    const int code = cli::cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("capital_cli_" + std::to_string(std::rand()) + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void write(const fs::path& p, const std::string& body) { std::ofstream(p) << body; }

const char* kConfig = R"({"schema_version": 1, "n_agents": 4, "processes": [{"beta": 0.3}, {"beta": 0.7}], "n_steps": 100})";

const char* kGrid = R"({"schema_version": 1, "n_values": [3, 5], "k_values": [1, 2], "elasticity_draws": 2,
  "alpha_values": [0.3], "gamma_values": [0.1], "epsilon_values": [0.02], "repetitions": 2, "n_steps": 40})";

} // namespace

TEST_CASE("cli: usage errors exit 1") {
    CHECK(run_cli({}).code == cli::kExitUsage);
    CHECK(run_cli({"frobnicate"}).code == cli::kExitUsage);
    CHECK(run_cli({"analyze", "--no-such-flag"}).code == cli::kExitUsage);
    CHECK(run_cli({"--help"}).code == cli::kExitOk);
}

TEST_CASE("cli: analyze") {
    const auto r = run_cli({"analyze"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    const auto pts = read_curves_csv(in);
    CHECK(pts.size() == 297);

    const auto bad = run_cli({"analyze", "--ratios", "1:0"});
    CHECK(bad.code == cli::kExitValidation);
    CHECK(bad.err.find("1:0") != std::string::npos);

    const auto swapped = run_cli({"analyze", "--ratios", "1:20", "--paper-formulas"});
    REQUIRE(swapped.code == 0);
    CHECK(swapped.out != run_cli({"analyze", "--ratios", "1:20"}).out);
}

TEST_CASE("cli: run") {
    TempDir tmp;
    write(tmp.path / "game.json", kConfig);
    const auto cfg = (tmp.path / "game.json").string();

    CHECK(run_cli({"run", cfg}).code == cli::kExitValidation); // no seed

    REQUIRE(run_cli({"run", cfg, "--seed", "5", "--out", (tmp.path / "a.json").string()}).code == 0);
    REQUIRE(run_cli({"--seed", "5", "run", cfg, "--out", (tmp.path / "b.json").string()}).code == 0);
    CHECK(slurp(tmp.path / "a.json") == slurp(tmp.path / "b.json"));

    const auto rec = run_record_from_json(read_json_file(tmp.path / "a.json"));
    CHECK(rec.config.seed == 5);
    CHECK(rec.traces.size() == 100);

    write(tmp.path / "bad.json", R"({"schema_version": 1, "n_agents": 4, "processes": [{"beta": 0.3}], "extra": 1})");
    const auto bad = run_cli({"run", (tmp.path / "bad.json").string(), "--seed", "1"});
    CHECK(bad.code == cli::kExitValidation);
    CHECK(bad.err.find("extra") != std::string::npos);
    CHECK(run_cli({"run", (tmp.path / "bad.json").string(), "--seed", "1", "--permissive"}).code == 0);

    write(tmp.path / "broken.json", "{not json");
    CHECK(run_cli({"run", (tmp.path / "broken.json").string(), "--seed", "1"}).code == cli::kExitValidation);
    CHECK(run_cli({"run", (tmp.path / "missing.json").string(), "--seed", "1"}).code == cli::kExitValidation);
}

TEST_CASE("cli: sweep and aggregate") {
    TempDir tmp;
    write(tmp.path / "grid.json", kGrid);
    const auto grid = (tmp.path / "grid.json").string();
    const auto a = tmp.path / "a", b = tmp.path / "b";

    CHECK(run_cli({"sweep", grid, "--out", a.string()}).code == cli::kExitValidation);
    REQUIRE(run_cli({"sweep", grid, "--seed", "9", "--out", a.string(), "--parallelism", "1"}).code == 0);
    REQUIRE(run_cli({"sweep", grid, "--seed", "9", "--out", b.string(), "--parallelism", "4"}).code == 0);
    for (const char* f : {"results.csv", "processes.csv", "aggregates.csv", "elasticity_bins.csv", "summary.json"})
        CHECK(slurp(a / f) == slurp(b / f));

    const auto agg = run_cli({"aggregate", (a / "results.csv").string()});
    REQUIRE(agg.code == 0);
    CHECK(agg.out == slurp(a / "aggregates.csv"));

    const auto by_alpha = run_cli({"aggregate", (a / "results.csv").string(), "--group-by", "alpha"});
    REQUIRE(by_alpha.code == 0);
    CHECK(by_alpha.out.rfind("alpha,runs,", 0) == 0);
    CHECK(run_cli({"aggregate", (a / "results.csv").string(), "--group-by", "beta"}).code == cli::kExitValidation);

    std::ifstream in(a / "results.csv");
    const auto rows = read_results_csv(in);
    CHECK(rows.size() == 16);

    write(tmp.path / "seeded.json", std::string(kGrid).replace(1, 0, R"("master_seed": 3, )"));
    const auto conflict = run_cli({"sweep", (tmp.path / "seeded.json").string(), "--seed", "9", "--out", a.string()});
    CHECK(conflict.code == cli::kExitValidation);
    CHECK(conflict.err.find("master_seed") != std::string::npos);
}

TEST_CASE("cli: strict sweeps abort on failed runs, permissive ones exclude them") {
    TempDir tmp;
    write(tmp.path / "grid.json", R"({"schema_version": 1, "n_values": [4], "k_values": [1], "elasticity_draws": 1,
      "beta_range": [0.9, 0.9], "alpha_values": [0.3], "gamma_values": [0.1], "epsilon_values": [0.02],
      "repetitions": 3, "n_steps": 200, "multiplier": 1e300})");
    const auto grid = (tmp.path / "grid.json").string();
    const auto strict = run_cli({"sweep", grid, "--seed", "1", "--out", (tmp.path / "s").string()});
    CHECK(strict.code == cli::kExitRuntime);
    const auto permissive = run_cli({"sweep", grid, "--seed", "1", "--out", (tmp.path / "p").string(), "--permissive"});
    CHECK(permissive.code == 0);
    CHECK(permissive.err.find("excluded") != std::string::npos);
    const auto summary = read_json_file(tmp.path / "p" / "summary.json");
    CHECK(summary["excluded_runs"].get<int>() > 0);
}

TEST_CASE("cli: parallelism from the environment") {
    TempDir tmp;
    write(tmp.path / "grid.json", kGrid);
    ::setenv(cli::kParallelismEnv, "0", 1);
    CHECK(run_cli({"sweep", (tmp.path / "grid.json").string(), "--seed", "2", "--out", (tmp.path / "o").string()}).code ==
          cli::kExitValidation);
    ::setenv(cli::kParallelismEnv, "3", 1);
    CHECK(run_cli({"sweep", (tmp.path / "grid.json").string(), "--seed", "2", "--out", (tmp.path / "o").string()}).code == 0);
    ::unsetenv(cli::kParallelismEnv);
}
