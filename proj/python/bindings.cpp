#include "capital/analysis.hpp"
#include "capital/experiments.hpp"
#include "capital/game.hpp"
#include "capital/io.hpp"
#include "capital/production.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace py = pybind11;
using namespace capital;

namespace {

using ShareList = std::vector<std::pair<AgentId, double>>;

ProcessSpec spec_of(double beta, double multiplier) {
    ProcessSpec s{beta, multiplier};
    validate(s);
    return s;
}

std::vector<Share> to_shares(const ShareList& list) {
    std::vector<Share> out;
    out.reserve(list.size());
    for (const auto& [id, amount] : list) out.push_back({id, amount});
    return out;
}

std::string run_game_json(const std::string& config_json, std::uint64_t seed, std::optional<std::size_t> trace_stride) {
    GameConfig config = game_config_from_json(nlohmann::json::parse(config_json));
    config.seed = seed;
    if (trace_stride) config.trace_stride = trace_stride;
    RunRecord record;
    {
        py::gil_scoped_release release;
        record = run_game(config);
    }
    return to_json(record).dump();
}

py::dict run_sweep_csv(const std::string& grid_json, std::uint64_t seed, std::size_t parallelism, bool strict,
                       const std::vector<std::string>& group_by) {
    SweepGrid grid = sweep_grid_from_json(nlohmann::json::parse(grid_json), strict);
    grid.master_seed = seed;
    std::vector<GroupKey> keys;
    for (const auto& k : group_by) keys.push_back(parse_group_key(k));

    SweepOptions options;
    options.parallelism = parallelism;
    options.strict = strict;
    SweepResult result;
    {
        py::gil_scoped_release release;
        result = run_sweep(grid, options);
    }
    std::ostringstream results, processes, aggregates, bins;
    write_results_csv(results, result.rows);
    write_processes_csv(processes, result.processes);
    write_aggregate_csv(aggregates, aggregate(result.rows, keys));
    write_bins_csv(bins, bin_by_elasticity(result.processes, 9, grid.beta_min, grid.beta_max));

    py::list failures;
    for (const auto& f : result.failures) failures.append(py::make_tuple(f.index, f.message));
    py::dict out;
    out["results"] = results.str();
    out["processes"] = processes.str();
    out["aggregates"] = aggregates.str();
    out["elasticity_bins"] = bins.str();
    out["failures"] = failures;
    return out;
}

std::string analyze_csv(const std::vector<std::string>& ratios, std::size_t beta_points, double multiplier,
                        bool paper_formulas) {
    CurveRequest request;
    if (!ratios.empty()) {
        request.ratios.clear();
        for (const auto& r : ratios) request.ratios.push_back(parse_ratio(r));
    }
    request.beta_points = beta_points;
    request.multiplier = multiplier;
    request.mode = paper_formulas ? FormulaMode::Swapped : FormulaMode::TrueDerivatives;
    std::ostringstream os;
    write_curves_csv(os, analyze(request));
    return os.str();
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Capital/labour production game core";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<SimulationError>(m, "SimulationError", PyExc_RuntimeError);

    m.def("production", [](double beta, double multiplier, double capital, double labour) {
        ProcessInput in{capital, labour};
        validate(in);
        return production(spec_of(beta, multiplier), in);
    }, py::arg("beta"), py::arg("multiplier"), py::arg("capital"), py::arg("labour"));

    m.def("marginal_productivity_capital", [](double beta, double multiplier, double capital, double labour) {
        return marginal_productivity_capital(spec_of(beta, multiplier), {capital, labour});
    }, py::arg("beta"), py::arg("multiplier"), py::arg("capital"), py::arg("labour"));

    m.def("marginal_productivity_labour", [](double beta, double multiplier, double capital, double labour) {
        return marginal_productivity_labour(spec_of(beta, multiplier), {capital, labour});
    }, py::arg("beta"), py::arg("multiplier"), py::arg("capital"), py::arg("labour"));

    m.def("redistribute", [](double beta, double multiplier, const ShareList& capital, const ShareList& labour) {
        const auto r = redistribute(spec_of(beta, multiplier), Shares{to_shares(capital), to_shares(labour)});
        ShareList rewards;
        for (const auto& w : r.rewards) rewards.emplace_back(w.agent, w.amount);
        return std::make_pair(r.output, rewards);
    }, py::arg("beta"), py::arg("multiplier"), py::arg("capital_shares"), py::arg("labour_shares"),
       "Returns (output, [(agent, reward), ...]) with capital providers first.");

    m.def("run_game_json", &run_game_json, py::arg("config_json"), py::arg("seed"),
          py::arg("trace_stride") = py::none());
    m.def("run_sweep_csv", &run_sweep_csv, py::arg("grid_json"), py::arg("seed"), py::arg("parallelism") = 1,
          py::arg("strict") = true, py::arg("group_by") = std::vector<std::string>{"n", "k"});
    m.def("analyze_csv", &analyze_csv, py::arg("ratios") = std::vector<std::string>{}, py::arg("beta_points") = 99,
          py::arg("multiplier") = 1.0, py::arg("paper_formulas") = false);
}
