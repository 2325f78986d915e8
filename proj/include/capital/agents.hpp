#pragma once

#include "capital/production.hpp"
#include "capital/random.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace capital {

enum class Resource : std::uint8_t { Capital = 0, Labour = 1 };

/// One process-resource combination. Index layout is 2*process + resource.
struct ActionId {
    std::size_t process = 0;
    Resource resource = Resource::Capital;

    std::size_t index() const { return 2 * process + static_cast<std::size_t>(resource); }
    static ActionId from_index(std::size_t i) { return {i / 2, static_cast<Resource>(i % 2)}; }

    friend bool operator==(const ActionId&, const ActionId&) = default;
};

/// Q-values over all 2k actions of a single-state learner.
class QTable {
public:
    QTable() = default;
    /// Throws std::invalid_argument unless values.size() is a positive even number
    /// and every value is finite.
    explicit QTable(std::vector<double> values);

    std::size_t processes() const { return values_.size() / 2; }
    std::size_t size() const { return values_.size(); }

    double operator[](ActionId a) const { return values_.at(a.index()); }
    double& operator[](ActionId a) { return values_.at(a.index()); }

    double max() const;
    std::span<const double> values() const { return values_; }

private:
    std::vector<double> values_;
};

struct LearningParams {
    double alpha = 0.3;   ///< learning rate, (0, 1]
    double gamma = 0.1;   ///< discount, [0, 1)
    double epsilon = 0.02; ///< exploration probability, [0, 1]

    void validate() const;
};

struct AgentState {
    AgentId id = 0;
    double capital_stock = 100.0;
    double timenergy = 100.0;
    QTable qtable;
    LearningParams params;
};

/// Draws 2k q-values i.i.d. uniform on [0, 100]. Throws std::invalid_argument for k < 1.
QTable init_qtable(std::size_t k, Rng& rng);

/// Epsilon-greedy choice. Always consumes exactly two words from rng: the first
/// decides explore vs exploit, the second picks either the explored action
/// (uniform over 2k) or one of the tied maximizers (uniform over ties).
ActionId select_action(const AgentState& agent, Rng& rng);

/// Q(a) += alpha * (r + gamma * max_a' Q(a') - Q(a)), with the max taken over the
/// table before the update. Throws std::invalid_argument on non-finite reward.
void update_q(AgentState& agent, ActionId action, double reward);

} // namespace capital
