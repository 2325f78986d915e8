#pragma once

#include "capital/agents.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace capital {

/// Everything observed in one turn.
struct StepTrace {
    std::size_t step = 0;
    std::vector<double> process_output;   ///< Y_p per process
    std::vector<double> agent_reward;     ///< by agent id
    std::vector<std::uint32_t> agent_action; ///< ActionId::index() by agent id
    std::size_t labourer_count = 0;
    std::size_t capitalist_count = 0;
    double total_output = 0.0;
};

enum class MaxProductionMode {
    StepTotal,     ///< max over steps of the summed output across processes
    SingleProcess, ///< max over steps and processes of one process's output
};

struct RunMetrics {
    double average_production = 0.0;
    double max_production = 0.0;
    double labour_ratio = 0.0;
    std::optional<double> capital_strength; ///< empty when k == 1

    friend bool operator==(const RunMetrics&, const RunMetrics&) = default;
};

struct ProcessSummary {
    double beta = 0.0;
    double total_output = 0.0;
    double average_output = 0.0; ///< total_output / n_steps
    std::size_t labourer_turns = 0;
    std::size_t occupied_turns = 0; ///< agent-turns committed to this process
    /// labourer_turns / occupied_turns; empty if nobody ever used the process.
    std::optional<double> labour_share() const;
};

// Reference reductions over recorded traces. All throw std::invalid_argument on
// empty input.
double average_production(std::span<const StepTrace> traces);
double labour_ratio(std::span<const StepTrace> traces);
double max_production(std::span<const StepTrace> traces, MaxProductionMode mode = MaxProductionMode::StepTotal);

/// (beta* - beta_min) / (beta_max - beta_min) where beta* is the elasticity of the
/// process with the largest total output; ties go to the higher elasticity.
/// Empty for k < 2 or when every process has the same elasticity.
std::optional<double> capital_strength(std::span<const double> betas, std::span<const double> total_outputs);

/// Streaming version used by the engine so that metrics never depend on trace
/// thinning.
class MetricAccumulator {
public:
    MetricAccumulator(std::span<const double> betas, MaxProductionMode mode);

    void add(const StepTrace& trace);

    RunMetrics metrics() const;
    std::vector<ProcessSummary> processes() const;
    std::size_t steps() const { return steps_; }

private:
    MaxProductionMode mode_;
    std::vector<double> betas_;
    std::vector<double> totals_;
    std::vector<std::size_t> labourers_;
    std::vector<std::size_t> occupied_;
    std::size_t steps_ = 0;
    double output_sum_ = 0.0;
    double labour_fraction_sum_ = 0.0;
    double max_ = 0.0;
};

} // namespace capital
