#include "capital/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

namespace capital {

namespace {

// Domain tag separating elasticity streams from run seeds.
constexpr std::uint64_t kElasticityTag = 0x656c617374696369ULL;

auto coordinates(const ResultRow& r) {
    return std::make_tuple(r.n, r.k, r.elasticity_draw_index, r.alpha, r.gamma, r.epsilon, r.repetition, r.seed);
}

double key_value(const ResultRow& r, GroupKey key) {
    switch (key) {
    case GroupKey::N: return static_cast<double>(r.n);
    case GroupKey::K: return static_cast<double>(r.k);
    case GroupKey::ElasticityDraw: return static_cast<double>(r.elasticity_draw_index);
    case GroupKey::Alpha: return r.alpha;
    case GroupKey::Gamma: return r.gamma;
    case GroupKey::Epsilon: return r.epsilon;
    }
    return 0.0;
}

template <typename T>
void require_nonempty(const std::vector<T>& v, const char* name) {
    if (v.empty()) throw DomainError(std::string(name) + " must not be empty");
}

} // namespace

std::vector<double> linspace(double lo, double hi, std::size_t count) {
    if (count == 0) return {};
    if (count == 1) return {lo};
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    out.back() = hi;
    return out;
}

SweepGrid SweepGrid::full_scale(std::uint64_t master_seed) {
    SweepGrid g;
    g.k_values.clear();
    g.n_values.clear();
    for (std::size_t e = 1; e <= 8; ++e) g.k_values.push_back(std::size_t{1} << e);
    for (std::size_t e = 2; e <= 10; ++e) g.n_values.push_back(std::size_t{1} << e);
    g.elasticity_draws = 9;
    g.alpha_values = linspace(0.01, 1.0, 10);
    g.gamma_values = linspace(0.0, 0.99, 10);
    g.epsilon_values = linspace(0.0, 0.1, 10);
    g.repetitions = 4;
    g.n_steps = 5000;
    g.master_seed = master_seed;
    return g;
}

std::size_t SweepGrid::size() const {
    return n_values.size() * k_values.size() * elasticity_draws * alpha_values.size() * gamma_values.size() *
           epsilon_values.size() * repetitions;
}

void SweepGrid::validate() const {
    require_nonempty(n_values, "n_values");
    require_nonempty(k_values, "k_values");
    require_nonempty(alpha_values, "alpha_values");
    require_nonempty(gamma_values, "gamma_values");
    require_nonempty(epsilon_values, "epsilon_values");
    for (auto n : n_values)
        if (n < 1) throw DomainError("n_values entries must be >= 1");
    for (auto k : k_values)
        if (k < 1) throw DomainError("k_values entries must be >= 1");
    if (elasticity_draws < 1) throw DomainError("elasticity_draws must be >= 1");
    if (repetitions < 1) throw DomainError("repetitions must be >= 1");
    if (n_steps < 1) throw DomainError("n_steps must be >= 1");
    if (!(beta_min > 0.0 && beta_min <= beta_max && beta_max < 1.0))
        throw DomainError("beta_min and beta_max must satisfy 0 < beta_min <= beta_max < 1");
    if (!(multiplier >= 1.0) || !std::isfinite(multiplier)) throw DomainError("multiplier must be finite and >= 1");
    for (double a : alpha_values) LearningParams{a, 0.0, 0.0}.validate();
    for (double g : gamma_values) LearningParams{1.0, g, 0.0}.validate();
    for (double e : epsilon_values) LearningParams{1.0, 0.0, e}.validate();
}

GridEnumerator::GridEnumerator(SweepGrid grid) : grid_(std::move(grid)) {
    grid_.validate();
    size_ = grid_.size();
    elasticities_.resize(grid_.k_values.size());
    const auto equidistant = linspace(grid_.beta_min, grid_.beta_max, grid_.elasticity_draws);
    for (std::size_t ki = 0; ki < grid_.k_values.size(); ++ki) {
        const std::size_t k = grid_.k_values[ki];
        auto& draws = elasticities_[ki];
        draws.resize(grid_.elasticity_draws);
        for (std::size_t d = 0; d < grid_.elasticity_draws; ++d) {
            if (k == 1) {
                draws[d] = {equidistant[d]};
                continue;
            }
            Rng rng(derive_seed(grid_.master_seed, {kElasticityTag, k, d}));
            draws[d].resize(k);
            for (auto& b : draws[d]) b = rng.uniform(grid_.beta_min, grid_.beta_max);
        }
    }
}

const std::vector<double>& GridEnumerator::elasticities(std::size_t k_index, std::size_t draw) const {
    return elasticities_.at(k_index).at(draw);
}

std::uint64_t run_seed(std::uint64_t master_seed, const GridPoint& p) {
    return derive_seed(master_seed, {p.n, p.k, p.elasticity_draw, p.alpha_index, p.gamma_index, p.epsilon_index,
                                     p.repetition});
}

RunPlan GridEnumerator::operator[](std::size_t index) const {
    if (index >= size_) throw std::out_of_range("grid index out of range");
    const auto& g = grid_;
    std::size_t rest = index;
    auto take = [&rest](std::size_t extent) {
        const std::size_t i = rest % extent;
        rest /= extent;
        return i;
    };
    RunPlan plan;
    GridPoint& p = plan.point;
    p.repetition = take(g.repetitions);
    p.epsilon_index = take(g.epsilon_values.size());
    p.gamma_index = take(g.gamma_values.size());
    p.alpha_index = take(g.alpha_values.size());
    p.elasticity_draw = take(g.elasticity_draws);
    const std::size_t ki = take(g.k_values.size());
    const std::size_t ni = take(g.n_values.size());
    p.k = g.k_values[ki];
    p.n = g.n_values[ni];

    GameConfig& c = plan.config;
    c.n_agents = p.n;
    c.processes.clear();
    for (double b : elasticities(ki, p.elasticity_draw)) c.processes.push_back({b, g.multiplier});
    c.initial_capital = g.initial_capital;
    c.timenergy_per_turn = g.timenergy_per_turn;
    c.n_steps = g.n_steps;
    c.learning = {g.alpha_values[p.alpha_index], g.gamma_values[p.gamma_index], g.epsilon_values[p.epsilon_index]};
    c.seed = run_seed(g.master_seed, p);
    c.trace_stride = 0;
    c.consume_invested_capital = g.consume_invested_capital;
    c.max_production_mode = g.max_production_mode;
    return plan;
}

SweepAborted::SweepAborted(RunFailure failure)
    : std::runtime_error("run " + std::to_string(failure.index) + " failed: " + failure.message),
      failure_(std::move(failure)) {}

ResultRow make_result_row(const RunPlan& plan, const RunRecord& record) {
    ResultRow row;
    row.n = plan.point.n;
    row.k = plan.point.k;
    row.elasticity_draw_index = plan.point.elasticity_draw;
    row.alpha = plan.config.learning.alpha;
    row.gamma = plan.config.learning.gamma;
    row.epsilon = plan.config.learning.epsilon;
    row.repetition = plan.point.repetition;
    row.seed = plan.config.seed;
    row.metrics = record.metrics;
    return row;
}

SweepResult run_sweep(const SweepGrid& grid, const SweepOptions& options) {
    const GridEnumerator runs(grid);
    const std::size_t total = runs.size();

    struct Slot {
        std::optional<ResultRow> row;
        std::vector<ProcessRow> processes;
        std::optional<RunFailure> failure;
    };
    std::vector<Slot> slots(total);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};

    auto worker = [&] {
        for (;;) {
            if (stop.load(std::memory_order_relaxed)) return;
            const std::size_t i = next.fetch_add(1);
            if (i >= total) return;
            const RunPlan plan = runs[i];
            Slot& slot = slots[i];
            try {
                const auto start = std::chrono::steady_clock::now();
                const RunRecord record = run_game(plan.config);
                const auto stop_time = std::chrono::steady_clock::now();
                const RunMetrics& m = record.metrics;
                if (!std::isfinite(m.average_production) || !std::isfinite(m.max_production) ||
                    !std::isfinite(m.labour_ratio))
                    throw SimulationError("non-finite aggregate metric");
                ResultRow row = make_result_row(plan, record);
                if (options.record_wall_time)
                    row.wall_time_ms = std::chrono::duration<double, std::milli>(stop_time - start).count();
                slot.processes.reserve(record.processes.size());
                for (std::size_t p = 0; p < record.processes.size(); ++p) {
                    const auto& s = record.processes[p];
                    slot.processes.push_back({row.n, row.k, row.elasticity_draw_index, row.alpha, row.gamma,
                                              row.epsilon, row.repetition, p, s.beta, s.average_output,
                                              s.labour_share()});
                }
                slot.row = std::move(row);
            } catch (const std::exception& e) {
                slot.failure = RunFailure{i, plan.point, e.what()};
                if (options.strict) stop.store(true, std::memory_order_relaxed);
            }
        }
    };

    const std::size_t workers = std::max<std::size_t>(1, std::min(options.parallelism, total));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    }

    SweepResult result;
    result.rows.reserve(total);
    for (auto& slot : slots) {
        if (slot.failure) {
            if (options.strict) throw SweepAborted(*slot.failure);
            result.failures.push_back(std::move(*slot.failure));
            continue;
        }
        if (!slot.row) continue;
        result.rows.push_back(std::move(*slot.row));
        for (auto& p : slot.processes) result.processes.push_back(std::move(p));
    }
    return result;
}

std::string to_string(GroupKey key) {
    switch (key) {
    case GroupKey::N: return "n";
    case GroupKey::K: return "k";
    case GroupKey::ElasticityDraw: return "elasticity_draw_index";
    case GroupKey::Alpha: return "alpha";
    case GroupKey::Gamma: return "gamma";
    case GroupKey::Epsilon: return "epsilon";
    }
    return "";
}

GroupKey parse_group_key(const std::string& name) {
    for (auto key : {GroupKey::N, GroupKey::K, GroupKey::ElasticityDraw, GroupKey::Alpha, GroupKey::Gamma,
                     GroupKey::Epsilon})
        if (to_string(key) == name) return key;
    throw DomainError("unknown group key '" + name + "'");
}

MetricStats summarize(std::span<const double> values) {
    MetricStats s;
    s.count = values.size();
    if (values.empty()) return s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double sq = 0.0;
        for (double v : values) sq += (v - s.mean) * (v - s.mean);
        s.std = std::sqrt(sq / static_cast<double>(values.size() - 1));
    }
    return s;
}

AggregateTable aggregate(std::span<const ResultRow> rows, std::span<const GroupKey> keys) {
    std::vector<const ResultRow*> ordered;
    ordered.reserve(rows.size());
    for (const auto& r : rows) ordered.push_back(&r);
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const ResultRow* a, const ResultRow* b) { return coordinates(*a) < coordinates(*b); });

    std::map<std::vector<double>, std::vector<const ResultRow*>> groups;
    for (const auto* r : ordered) {
        std::vector<double> k;
        k.reserve(keys.size());
        for (auto key : keys) k.push_back(key_value(*r, key));
        groups[std::move(k)].push_back(r);
    }

    AggregateTable table;
    table.keys.assign(keys.begin(), keys.end());
    for (const auto& [key_values, members] : groups) {
        std::vector<double> avg, mx, lr, cs;
        for (const auto* r : members) {
            avg.push_back(r->metrics.average_production);
            mx.push_back(r->metrics.max_production);
            lr.push_back(r->metrics.labour_ratio);
            if (r->metrics.capital_strength) cs.push_back(*r->metrics.capital_strength);
        }
        AggregateRow row;
        row.keys = key_values;
        row.runs = members.size();
        row.average_production = summarize(avg);
        row.max_production = summarize(mx);
        row.labour_ratio = summarize(lr);
        row.capital_strength = summarize(cs);
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::vector<ElasticityBin> bin_by_elasticity(std::span<const ProcessRow> processes, std::size_t bins, double lo,
                                             double hi) {
    if (bins < 1 || !(hi >= lo)) throw DomainError("elasticity binning needs bins >= 1 and hi >= lo");
    std::vector<std::vector<double>> outputs(bins), shares(bins);
    for (const auto& p : processes) {
        const double t = hi == lo ? 0.0 : (p.beta - lo) / (hi - lo) * static_cast<double>(bins);
        const auto b = static_cast<std::size_t>(std::clamp(std::floor(t), 0.0, static_cast<double>(bins - 1)));
        outputs[b].push_back(p.average_output);
        if (p.labour_share) shares[b].push_back(*p.labour_share);
    }
    std::vector<ElasticityBin> out(bins);
    for (std::size_t b = 0; b < bins; ++b) {
        out[b].lo = lo + (hi - lo) * static_cast<double>(b) / static_cast<double>(bins);
        out[b].hi = lo + (hi - lo) * static_cast<double>(b + 1) / static_cast<double>(bins);
        out[b].average_output = summarize(outputs[b]);
        out[b].labour_share = summarize(shares[b]);
    }
    return out;
}

} // namespace capital
