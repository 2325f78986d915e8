#include "capital/agents.hpp"

#include "capital/production.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace capital {

QTable::QTable(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty() || values_.size() % 2 != 0)
        throw std::invalid_argument("q-table needs a positive even number of entries");
    for (double v : values_)
        if (!std::isfinite(v)) throw std::invalid_argument("q-table values must be finite");
}

double QTable::max() const { return *std::max_element(values_.begin(), values_.end()); }

void LearningParams::validate() const {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in (0, 1], got " + std::to_string(alpha));
    if (!(gamma >= 0.0 && gamma < 1.0)) throw DomainError("gamma must lie in [0, 1), got " + std::to_string(gamma));
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw DomainError("epsilon must lie in [0, 1], got " + std::to_string(epsilon));
}

QTable init_qtable(std::size_t k, Rng& rng) {
    if (k < 1) throw std::invalid_argument("init_qtable requires at least one process");
    std::vector<double> values(2 * k);
    for (auto& v : values) v = 100.0 * rng.uniform();
    return QTable(std::move(values));
}

ActionId select_action(const AgentState& agent, Rng& rng) {
    const double u = rng.uniform();
    const std::uint64_t word = rng.next_u64();
    const auto q = agent.qtable.values();

    if (u < agent.params.epsilon) return ActionId::from_index(Rng::scale_below(word, q.size()));

    const double best = agent.qtable.max();
    const auto ties = static_cast<std::uint64_t>(std::count(q.begin(), q.end(), best));
    std::uint64_t pick = Rng::scale_below(word, ties);
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i] != best) continue;
        if (pick == 0) return ActionId::from_index(i);
        --pick;
    }
    return ActionId::from_index(0); // unreachable
}

void update_q(AgentState& agent, ActionId action, double reward) {
    if (!std::isfinite(reward)) throw std::invalid_argument("reward must be finite");
    const double bootstrap = agent.qtable.max();
    double& q = agent.qtable[action];
    q = q + agent.params.alpha * (reward + agent.params.gamma * bootstrap - q);
}

} // namespace capital
