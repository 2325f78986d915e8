#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace capital {

/// Raised when an argument lies outside the domain of a kernel operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

using AgentId = std::size_t;

/// A Cobb-Douglas production process: Y = M * C^beta * L^(1 - beta).
struct ProcessSpec {
    double beta = 0.5;       ///< elasticity of capital, in (0, 1)
    double multiplier = 1.0; ///< total-factor scale M, >= 1
};

struct ProcessInput {
    double capital = 0.0;
    double labour = 0.0;
};

struct Share {
    AgentId agent = 0;
    double amount = 0.0;
};

/// Per-agent contributions to one process.
struct Shares {
    std::vector<Share> capital;
    std::vector<Share> labour;

    ProcessInput totals() const;
};

struct Reward {
    AgentId agent = 0;
    double amount = 0.0;
};

struct Redistribution {
    double output = 0.0;
    /// Capital providers first, then labourers, each in input order.
    std::vector<Reward> rewards;
};

void validate(const ProcessSpec& spec);
void validate(const ProcessInput& input);

double production(const ProcessSpec& spec, const ProcessInput& input);

/// dY/dC = beta * M * (L/C)^(1 - beta). Requires C > 0 and L > 0.
double marginal_productivity_capital(const ProcessSpec& spec, const ProcessInput& input);

/// dY/dL = (1 - beta) * M * (C/L)^beta. Requires C > 0 and L > 0.
double marginal_productivity_labour(const ProcessSpec& spec, const ProcessInput& input);

/// Pays beta*Y to capital providers pro rata to capital and (1 - beta)*Y to
/// labourers pro rata to labour, where Y is the production of the share totals.
/// An empty side gives Y = 0 and all-zero rewards.
Redistribution redistribute(const ProcessSpec& spec, const Shares& shares);

/// The marginal-productivity expressions with the capital and labour
/// right-hand sides exchanged, i.e. mpC = (1 - beta) M (C/L)^beta and
/// mpL = beta M (L/C)^(1 - beta). Only used to regenerate comparison curves.
double swapped_marginal_productivity_capital(const ProcessSpec& spec, const ProcessInput& input);
double swapped_marginal_productivity_labour(const ProcessSpec& spec, const ProcessInput& input);

} // namespace capital
