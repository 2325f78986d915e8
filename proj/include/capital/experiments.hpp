#pragma once

#include "capital/game.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace capital {

/// Equidistant values from lo to hi inclusive; a single point gives lo.
std::vector<double> linspace(double lo, double hi, std::size_t count);

/// Cross-product of game and learning parameters with repetitions.
struct SweepGrid {
    std::vector<std::size_t> n_values{4};
    std::vector<std::size_t> k_values{2};
    /// k == 1: equidistant elasticities over [beta_min, beta_max], one per draw.
    /// k > 1: each draw is an array of k elasticities sampled uniformly.
    std::size_t elasticity_draws = 9;
    double beta_min = 0.1;
    double beta_max = 0.9;
    std::vector<double> alpha_values{0.3};
    std::vector<double> gamma_values{0.1};
    std::vector<double> epsilon_values{0.02};
    std::size_t repetitions = 4;
    std::size_t n_steps = 5000;
    double initial_capital = 100.0;
    double timenergy_per_turn = 100.0;
    double multiplier = 1.0;
    bool consume_invested_capital = false;
    MaxProductionMode max_production_mode = MaxProductionMode::StepTotal;
    std::uint64_t master_seed = 0;

    /// The full experimental grid: k = 2..256, n = 4..1024 (powers of two), ten
    /// equidistant values for each learning parameter, 9 draws, 4 repetitions.
    static SweepGrid full_scale(std::uint64_t master_seed);

    std::size_t size() const;
    void validate() const;
};

struct GridPoint {
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t elasticity_draw = 0;
    std::size_t alpha_index = 0;
    std::size_t gamma_index = 0;
    std::size_t epsilon_index = 0;
    std::size_t repetition = 0;

    friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

struct RunPlan {
    GridPoint point;
    GameConfig config;
};

/// Random-access view of a grid in canonical order (n, k, draw, alpha, gamma,
/// epsilon, repetition; repetition fastest). Elasticity arrays are drawn once
/// per (k, draw) from the master seed and shared by every cell using them.
class GridEnumerator {
public:
    explicit GridEnumerator(SweepGrid grid);

    std::size_t size() const { return size_; }
    RunPlan operator[](std::size_t index) const;
    const SweepGrid& grid() const { return grid_; }
    const std::vector<double>& elasticities(std::size_t k_index, std::size_t draw) const;

private:
    SweepGrid grid_;
    std::size_t size_ = 0;
    std::vector<std::vector<std::vector<double>>> elasticities_; // [k index][draw]
};

std::uint64_t run_seed(std::uint64_t master_seed, const GridPoint& point);

/// One row per completed run.
struct ResultRow {
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t elasticity_draw_index = 0;
    double alpha = 0.0;
    double gamma = 0.0;
    double epsilon = 0.0;
    std::size_t repetition = 0;
    std::uint64_t seed = 0;
    RunMetrics metrics;
    std::optional<double> wall_time_ms;

    friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

/// One row per (run, process), the raw material for elasticity binning.
struct ProcessRow {
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t elasticity_draw_index = 0;
    double alpha = 0.0;
    double gamma = 0.0;
    double epsilon = 0.0;
    std::size_t repetition = 0;
    std::size_t process_index = 0;
    double beta = 0.0;
    double average_output = 0.0;
    std::optional<double> labour_share;

    friend bool operator==(const ProcessRow&, const ProcessRow&) = default;
};

struct RunFailure {
    std::size_t index = 0;
    GridPoint point;
    std::string message;
};

/// A strict-mode sweep hit a failing run.
class SweepAborted : public std::runtime_error {
public:
    explicit SweepAborted(RunFailure failure);
    const RunFailure& failure() const { return failure_; }

private:
    RunFailure failure_;
};

struct SweepOptions {
    std::size_t parallelism = 1;
    bool strict = true;
    bool record_wall_time = false;
};

struct SweepResult {
    std::vector<ResultRow> rows;         ///< grid order
    std::vector<ProcessRow> processes;   ///< grid order, then process index
    std::vector<RunFailure> failures;    ///< permissive mode only
};

ResultRow make_result_row(const RunPlan& plan, const RunRecord& record);

SweepResult run_sweep(const SweepGrid& grid, const SweepOptions& options);

enum class GroupKey { N, K, ElasticityDraw, Alpha, Gamma, Epsilon };

std::string to_string(GroupKey key);
GroupKey parse_group_key(const std::string& name);

struct MetricStats {
    double mean = 0.0;
    double std = 0.0; ///< sample standard deviation, 0 for a single run
    std::size_t count = 0;

    friend bool operator==(const MetricStats&, const MetricStats&) = default;
};

MetricStats summarize(std::span<const double> values);

struct AggregateRow {
    std::vector<double> keys;
    std::size_t runs = 0;
    MetricStats average_production;
    MetricStats max_production;
    MetricStats labour_ratio;
    MetricStats capital_strength; ///< runs with k == 1 do not contribute

    friend bool operator==(const AggregateRow&, const AggregateRow&) = default;
};

struct AggregateTable {
    std::vector<GroupKey> keys;
    std::vector<AggregateRow> rows; ///< ascending by key values

    friend bool operator==(const AggregateTable&, const AggregateTable&) = default;
};

/// Groups by the given keys; the reduction order is fixed by grid coordinates,
/// so the result does not depend on the order of `rows`.
AggregateTable aggregate(std::span<const ResultRow> rows, std::span<const GroupKey> keys);

struct ElasticityBin {
    double lo = 0.0;
    double hi = 0.0;
    MetricStats average_output;
    MetricStats labour_share;

    friend bool operator==(const ElasticityBin&, const ElasticityBin&) = default;
};

/// Pools per-process observations into equal-width elasticity bins over [lo, hi];
/// a degenerate range puts everything in the first bin.
std::vector<ElasticityBin> bin_by_elasticity(std::span<const ProcessRow> processes, std::size_t bins = 9,
                                             double lo = 0.1, double hi = 0.9);

} // namespace capital
