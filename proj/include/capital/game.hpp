#pragma once

#include "capital/agents.hpp"
#include "capital/metrics.hpp"
#include "capital/production.hpp"
#include "capital/random.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace capital {

/// A run produced a non-finite quantity; the trajectory is not usable as data.
class SimulationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GameConfig {
    std::size_t n_agents = 4;
    std::vector<ProcessSpec> processes{ProcessSpec{}};
    double initial_capital = 100.0;
    double timenergy_per_turn = 100.0;
    std::size_t n_steps = 5000;
    std::uint64_t seed = 0;
    LearningParams learning;

    /// Record every stride-th step; 0 disables traces. Unset means 1 up to 5000
    /// steps and ceil(n_steps / 5000) beyond.
    std::optional<std::size_t> trace_stride;
    /// Capital committed to a process is used up instead of retained.
    bool consume_invested_capital = false;
    MaxProductionMode max_production_mode = MaxProductionMode::StepTotal;

    std::size_t k() const { return processes.size(); }
    std::size_t effective_trace_stride() const;
    std::vector<double> betas() const;

    /// Throws DomainError naming the offending field.
    void validate() const;
};

/// Agents with fresh q-tables, each drawn from the agent's own stream.
std::vector<AgentState> make_agents(const GameConfig& config, std::span<Rng> streams);

/// One independent stream per agent, derived from (seed, agent id).
std::vector<Rng> make_streams(const GameConfig& config);

/// Applies a fixed action profile: commit, produce, redistribute, accumulate,
/// learn, replenish timenergy.
StepTrace resolve_turn(std::vector<AgentState>& agents, const GameConfig& config,
                       std::span<const ActionId> actions, std::size_t step);

/// Agents choose in id order, then the turn is resolved.
StepTrace play_turn(std::vector<AgentState>& agents, const GameConfig& config, std::span<Rng> streams,
                    std::size_t step);

struct RunRecord {
    GameConfig config;
    RunMetrics metrics;
    std::vector<ProcessSummary> processes;
    std::vector<double> final_capital;
    std::vector<StepTrace> traces;
};

RunRecord run_game(const GameConfig& config);

} // namespace capital
