#include "capital/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace capital {

namespace {

void require_traces(std::span<const StepTrace> traces) {
    if (traces.empty()) throw std::invalid_argument("metric requires at least one step trace");
}

double labour_fraction(const StepTrace& t) {
    const auto n = t.labourer_count + t.capitalist_count;
    return n == 0 ? 0.0 : static_cast<double>(t.labourer_count) / static_cast<double>(n);
}

} // namespace

std::optional<double> ProcessSummary::labour_share() const {
    if (occupied_turns == 0) return std::nullopt;
    return static_cast<double>(labourer_turns) / static_cast<double>(occupied_turns);
}

double average_production(std::span<const StepTrace> traces) {
    require_traces(traces);
    double sum = 0.0;
    std::size_t cells = 0;
    for (const auto& t : traces) {
        for (double y : t.process_output) sum += y;
        cells += t.process_output.size();
    }
    if (cells == 0) throw std::invalid_argument("traces carry no process outputs");
    return sum / static_cast<double>(cells);
}

double labour_ratio(std::span<const StepTrace> traces) {
    require_traces(traces);
    double sum = 0.0;
    for (const auto& t : traces) sum += labour_fraction(t);
    return sum / static_cast<double>(traces.size());
}

double max_production(std::span<const StepTrace> traces, MaxProductionMode mode) {
    require_traces(traces);
    double best = 0.0;
    for (const auto& t : traces) {
        if (mode == MaxProductionMode::StepTotal) {
            double total = 0.0;
            for (double y : t.process_output) total += y;
            best = std::max(best, total);
        } else {
            for (double y : t.process_output) best = std::max(best, y);
        }
    }
    return best;
}

std::optional<double> capital_strength(std::span<const double> betas, std::span<const double> total_outputs) {
    if (betas.size() != total_outputs.size()) throw std::invalid_argument("capital_strength: size mismatch");
    if (betas.size() < 2) return std::nullopt;

    const auto [lo, hi] = std::minmax_element(betas.begin(), betas.end());
    if (*hi == *lo) return std::nullopt;

    std::size_t winner = 0;
    for (std::size_t p = 1; p < betas.size(); ++p) {
        if (total_outputs[p] > total_outputs[winner] ||
            (total_outputs[p] == total_outputs[winner] && betas[p] > betas[winner]))
            winner = p;
    }
    return (betas[winner] - *lo) / (*hi - *lo);
}

MetricAccumulator::MetricAccumulator(std::span<const double> betas, MaxProductionMode mode)
    : mode_(mode), betas_(betas.begin(), betas.end()), totals_(betas.size(), 0.0),
      labourers_(betas.size(), 0), occupied_(betas.size(), 0) {}

void MetricAccumulator::add(const StepTrace& trace) {
    if (trace.process_output.size() != totals_.size())
        throw std::invalid_argument("trace process count does not match accumulator");
    double step_total = 0.0;
    for (std::size_t p = 0; p < totals_.size(); ++p) {
        const double y = trace.process_output[p];
        totals_[p] += y;
        step_total += y;
        if (mode_ == MaxProductionMode::SingleProcess) max_ = std::max(max_, y);
    }
    if (mode_ == MaxProductionMode::StepTotal) max_ = std::max(max_, step_total);
    output_sum_ += step_total;
    labour_fraction_sum_ += labour_fraction(trace);

    for (auto index : trace.agent_action) {
        const auto a = ActionId::from_index(index);
        ++occupied_[a.process];
        if (a.resource == Resource::Labour) ++labourers_[a.process];
    }
    ++steps_;
}

RunMetrics MetricAccumulator::metrics() const {
    if (steps_ == 0) throw std::invalid_argument("metric requires at least one step trace");
    RunMetrics m;
    m.average_production = output_sum_ / static_cast<double>(steps_ * totals_.size());
    m.max_production = max_;
    m.labour_ratio = labour_fraction_sum_ / static_cast<double>(steps_);
    m.capital_strength = capital_strength(betas_, totals_);
    return m;
}

std::vector<ProcessSummary> MetricAccumulator::processes() const {
    std::vector<ProcessSummary> out(totals_.size());
    for (std::size_t p = 0; p < totals_.size(); ++p) {
        out[p].beta = betas_[p];
        out[p].total_output = totals_[p];
        out[p].average_output = steps_ == 0 ? 0.0 : totals_[p] / static_cast<double>(steps_);
        out[p].labourer_turns = labourers_[p];
        out[p].occupied_turns = occupied_[p];
    }
    return out;
}

} // namespace capital
