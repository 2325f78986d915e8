#include "capital/game.hpp"

#include <cmath>
#include <string>

namespace capital {

std::size_t GameConfig::effective_trace_stride() const {
    if (trace_stride) return *trace_stride;
    return n_steps <= 5000 ? 1 : (n_steps + 4999) / 5000;
}

std::vector<double> GameConfig::betas() const {
    std::vector<double> b;
    b.reserve(processes.size());
    for (const auto& p : processes) b.push_back(p.beta);
    return b;
}

void GameConfig::validate() const {
    if (n_agents < 1) throw DomainError("n_agents must be >= 1");
    if (processes.empty()) throw DomainError("processes must contain at least one process");
    if (n_steps < 1) throw DomainError("n_steps must be >= 1");
    if (!std::isfinite(initial_capital) || initial_capital < 0.0)
        throw DomainError("initial_capital must be finite and >= 0");
    if (!std::isfinite(timenergy_per_turn) || timenergy_per_turn <= 0.0)
        throw DomainError("timenergy_per_turn must be finite and > 0");
    for (std::size_t p = 0; p < processes.size(); ++p) {
        try {
            capital::validate(processes[p]);
        } catch (const DomainError& e) {
            throw DomainError("processes[" + std::to_string(p) + "]: " + e.what());
        }
    }
    learning.validate();
}

std::vector<Rng> make_streams(const GameConfig& config) {
    std::vector<Rng> streams;
    streams.reserve(config.n_agents);
    for (std::size_t i = 0; i < config.n_agents; ++i) streams.emplace_back(derive_seed(config.seed, {i}));
    return streams;
}

std::vector<AgentState> make_agents(const GameConfig& config, std::span<Rng> streams) {
    std::vector<AgentState> agents(config.n_agents);
    for (std::size_t i = 0; i < config.n_agents; ++i) {
        agents[i].id = i;
        agents[i].capital_stock = config.initial_capital;
        agents[i].timenergy = config.timenergy_per_turn;
        agents[i].qtable = init_qtable(config.k(), streams[i]);
        agents[i].params = config.learning;
    }
    return agents;
}

StepTrace resolve_turn(std::vector<AgentState>& agents, const GameConfig& config,
                       std::span<const ActionId> actions, std::size_t step) {
    const std::size_t k = config.k();
    if (actions.size() != agents.size()) throw std::invalid_argument("one action per agent required");

    StepTrace trace;
    trace.step = step;
    trace.process_output.assign(k, 0.0);
    trace.agent_reward.assign(agents.size(), 0.0);
    trace.agent_action.resize(agents.size());

    std::vector<Shares> shares(k);
    for (std::size_t i = 0; i < agents.size(); ++i) {
        const ActionId a = actions[i];
        if (a.process >= k) throw std::invalid_argument("action refers to a process that does not exist");
        trace.agent_action[i] = static_cast<std::uint32_t>(a.index());
        if (a.resource == Resource::Capital) {
            shares[a.process].capital.push_back({i, agents[i].capital_stock});
            ++trace.capitalist_count;
        } else {
            shares[a.process].labour.push_back({i, agents[i].timenergy});
            ++trace.labourer_count;
        }
    }

    for (std::size_t p = 0; p < k; ++p) {
        const Redistribution r = redistribute(config.processes[p], shares[p]);
        trace.process_output[p] = r.output;
        trace.total_output += r.output;
        for (const auto& reward : r.rewards) trace.agent_reward[reward.agent] += reward.amount;
    }
    if (!std::isfinite(trace.total_output))
        throw SimulationError("non-finite production at step " + std::to_string(step));

    for (std::size_t i = 0; i < agents.size(); ++i) {
        auto& agent = agents[i];
        if (config.consume_invested_capital && actions[i].resource == Resource::Capital) agent.capital_stock = 0.0;
        agent.capital_stock += trace.agent_reward[i];
        update_q(agent, actions[i], trace.agent_reward[i]);
        agent.timenergy = config.timenergy_per_turn;
    }
    return trace;
}

StepTrace play_turn(std::vector<AgentState>& agents, const GameConfig& config, std::span<Rng> streams,
                    std::size_t step) {
    std::vector<ActionId> actions(agents.size());
    for (std::size_t i = 0; i < agents.size(); ++i) actions[i] = select_action(agents[i], streams[i]);
    return resolve_turn(agents, config, actions, step);
}

RunRecord run_game(const GameConfig& config) {
    config.validate();

    auto streams = make_streams(config);
    auto agents = make_agents(config, streams);
    const auto betas = config.betas();
    MetricAccumulator acc(betas, config.max_production_mode);
    const std::size_t stride = config.effective_trace_stride();

    RunRecord record;
    record.config = config;
    if (stride > 0) record.traces.reserve(config.n_steps / stride + 1);

    for (std::size_t step = 0; step < config.n_steps; ++step) {
        StepTrace trace = play_turn(agents, config, streams, step);
        acc.add(trace);
        if (stride > 0 && step % stride == 0) record.traces.push_back(std::move(trace));
    }

    record.metrics = acc.metrics();
    record.processes = acc.processes();
    record.final_capital.reserve(agents.size());
    for (const auto& a : agents) record.final_capital.push_back(a.capital_stock);
    return record;
}

} // namespace capital
