#include "cli.hpp"

#include "capital/analysis.hpp"
#include "capital/experiments.hpp"
#include "capital/io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace capital::cli {

namespace fs = std::filesystem;

namespace {

struct GlobalOptions {
    std::optional<std::uint64_t> seed;
    std::string out;
    std::optional<std::size_t> parallelism;
    bool permissive = false;
    bool paper_formulas = false;
};

struct AnalyzeOptions {
    std::vector<std::string> ratios{"1:1", "20:1", "1:20"};
    std::size_t beta_points = 99;
    double multiplier = 1.0;
};

struct RunOptions {
    std::string config;
    std::optional<std::size_t> trace_stride;
};

struct SweepOptionsCli {
    std::string grid;
    std::string group_by = "n,k";
    bool wall_time = false;
};

struct AggregateOptions {
    std::string results;
    std::string group_by = "n,k";
};

/// Writes to --out when given, otherwise to the provided stream.
template <typename F>
void emit(const std::string& path, std::ostream& fallback, F&& write) {
    if (path.empty()) {
        write(fallback);
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
    write(file);
    if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

void write_file(const fs::path& path, const std::string& body) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    file << body;
    if (!file) throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::vector<GroupKey> parse_group_by(const std::string& text) {
    std::vector<GroupKey> keys;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) keys.push_back(parse_group_key(item));
    return keys;
}

std::uint64_t require_seed(const GlobalOptions& g, const char* command) {
    if (!g.seed) throw ValidationError(std::string("--seed is required for '") + command + "'");
    return *g.seed;
}

std::size_t resolve_parallelism(const GlobalOptions& g) {
    if (g.parallelism) {
        if (*g.parallelism < 1) throw ValidationError("--parallelism must be >= 1");
        return *g.parallelism;
    }
    if (const char* env = std::getenv(kParallelismEnv); env && *env) {
        const auto v = parse_uint(env, kParallelismEnv);
        if (v < 1) throw ValidationError(std::string(kParallelismEnv) + " must be >= 1");
        return v;
    }
    return 1;
}

int do_analyze(const GlobalOptions& g, const AnalyzeOptions& a, std::ostream& out) {
    CurveRequest request;
    request.ratios.clear();
    for (const auto& r : a.ratios) request.ratios.push_back(parse_ratio(r));
    request.beta_points = a.beta_points;
    request.multiplier = a.multiplier;
    request.mode = g.paper_formulas ? FormulaMode::Swapped : FormulaMode::TrueDerivatives;
    const auto points = analyze(request);
    emit(g.out, out, [&](std::ostream& os) { write_curves_csv(os, points); });
    return kExitOk;
}

int do_run(const GlobalOptions& g, const RunOptions& r, std::ostream& out) {
    const std::uint64_t seed = require_seed(g, "run");
    GameConfig config = game_config_from_json(read_json_file(r.config), !g.permissive);
    config.seed = seed;
    if (r.trace_stride) config.trace_stride = r.trace_stride;
    const RunRecord record = run_game(config);
    emit(g.out, out, [&](std::ostream& os) { os << to_json(record).dump(1) << '\n'; });
    return kExitOk;
}

int do_sweep(const GlobalOptions& g, const SweepOptionsCli& s, std::ostream& out, std::ostream& err) {
    const std::uint64_t seed = require_seed(g, "sweep");
    if (g.out.empty()) throw ValidationError("--out <directory> is required for 'sweep'");
    const auto doc = read_json_file(s.grid);
    SweepGrid grid = sweep_grid_from_json(doc, !g.permissive);
    if (doc.contains("master_seed") && grid.master_seed != seed)
        throw ValidationError("field 'master_seed' (" + std::to_string(grid.master_seed) +
                              ") conflicts with --seed (" + std::to_string(seed) + ")");
    grid.master_seed = seed;
    const auto keys = parse_group_by(s.group_by);

    SweepOptions options;
    options.parallelism = resolve_parallelism(g);
    options.strict = !g.permissive;
    options.record_wall_time = s.wall_time;
    const SweepResult result = run_sweep(grid, options);

    const fs::path dir(g.out);
    fs::create_directories(dir);
    std::ostringstream results, processes, aggregates, bins;
    write_results_csv(results, result.rows);
    write_processes_csv(processes, result.processes);
    write_aggregate_csv(aggregates, aggregate(result.rows, keys));
    write_bins_csv(bins, bin_by_elasticity(result.processes, 9, grid.beta_min, grid.beta_max));
    write_file(dir / "results.csv", results.str());
    write_file(dir / "processes.csv", processes.str());
    write_file(dir / "aggregates.csv", aggregates.str());
    write_file(dir / "elasticity_bins.csv", bins.str());

    nlohmann::ordered_json summary;
    summary["schema_version"] = kSchemaVersion;
    summary["kind"] = "sweep_summary";
    summary["grid"] = to_json(grid);
    summary["group_by"] = s.group_by;
    summary["planned_runs"] = grid.size();
    summary["completed_runs"] = result.rows.size();
    summary["excluded_runs"] = result.failures.size();
    summary["failures"] = nlohmann::ordered_json::array();
    for (const auto& f : result.failures) summary["failures"].push_back({{"index", f.index}, {"message", f.message}});
    write_file(dir / "summary.json", summary.dump(1) + "\n");

    if (!result.failures.empty())
        err << "sweep: excluded " << result.failures.size() << " failed run(s) from aggregates\n";
    out << "sweep: " << result.rows.size() << " runs written to " << dir.string() << '\n';
    return kExitOk;
}

int do_aggregate(const GlobalOptions& g, const AggregateOptions& a, std::ostream& out) {
    std::ifstream in(a.results);
    if (!in) throw ValidationError("cannot open '" + a.results + "'");
    const auto rows = read_results_csv(in);
    const auto table = aggregate(rows, parse_group_by(a.group_by));
    emit(g.out, out, [&](std::ostream& os) { write_aggregate_csv(os, table); });
    return kExitOk;
}

} // namespace

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Capital-labour production game: analytic curves, single runs and parameter sweeps", "capital"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    app.add_option("--seed", g.seed, "Master seed; required for run and sweep");
    app.add_option("--out", g.out, "Output file (analyze, run, aggregate) or directory (sweep)");
    app.add_option("--parallelism", g.parallelism, std::string("Sweep workers (default: $") + kParallelismEnv + " or 1)");
    app.add_flag("--strict,!--permissive", [&g](std::int64_t v) { g.permissive = v < 0; },
                 "Reject unknown fields and abort sweeps on failed runs (default), or relax both");
    app.add_flag("--paper-formulas", g.paper_formulas,
                 "analyze: emit the swapped marginal-productivity expressions instead of the true derivatives");

    AnalyzeOptions analyze_opts;
    auto* analyze_cmd = app.add_subcommand("analyze", "Marginal productivity curves over elasticity");
    analyze_cmd->add_option("--ratios", analyze_opts.ratios, "Labour:capital ratios")->delimiter(',');
    analyze_cmd->add_option("--beta-points", analyze_opts.beta_points, "Interior elasticity grid points");
    analyze_cmd->add_option("--multiplier", analyze_opts.multiplier, "Output multiplier M");

    RunOptions run_opts;
    auto* run_cmd = app.add_subcommand("run", "Play one game and emit its run record (JSON)");
    run_cmd->add_option("config", run_opts.config, "Game configuration file")->required();
    run_cmd->add_option("--trace-stride", run_opts.trace_stride, "Record every Nth step (0 disables traces)");

    SweepOptionsCli sweep_opts;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run a parameter grid and write results and aggregates");
    sweep_cmd->add_option("grid", sweep_opts.grid, "Grid definition file")->required();
    sweep_cmd->add_option("--group-by", sweep_opts.group_by, "Aggregate keys, comma separated");
    sweep_cmd->add_flag("--wall-time", sweep_opts.wall_time, "Fill the wall_time_ms column (non-reproducible)");

    AggregateOptions agg_opts;
    auto* agg_cmd = app.add_subcommand("aggregate", "Recompute aggregates from a results file");
    agg_cmd->add_option("results", agg_opts.results, "Per-run results file")->required();
    agg_cmd->add_option("--group-by", agg_opts.group_by, "Aggregate keys, comma separated");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "capital: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*analyze_cmd) return do_analyze(g, analyze_opts, out);
        if (*run_cmd) return do_run(g, run_opts, out);
        if (*sweep_cmd) return do_sweep(g, sweep_opts, out, err);
        if (*agg_cmd) return do_aggregate(g, agg_opts, out);
    } catch (const ValidationError& e) {
        err << "capital: " << e.what() << '\n';
        return kExitValidation;
    } catch (const DomainError& e) {
        err << "capital: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "capital: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitUsage;
}

} // namespace capital::cli
