#include "capital/production.hpp"

#include <cmath>
#include <string>

namespace capital {

namespace {

void require_interior(const ProcessInput& input) {
    validate(input);
    if (input.capital <= 0.0 || input.labour <= 0.0)
        throw DomainError("marginal productivity requires capital > 0 and labour > 0");
}

} // namespace

ProcessInput Shares::totals() const {
    ProcessInput in;
    for (const auto& s : capital) in.capital += s.amount;
    for (const auto& s : labour) in.labour += s.amount;
    return in;
}

void validate(const ProcessSpec& spec) {
    if (!(spec.beta > 0.0 && spec.beta < 1.0))
        throw DomainError("beta must lie in (0, 1), got " + std::to_string(spec.beta));
    if (!(spec.multiplier >= 1.0) || !std::isfinite(spec.multiplier))
        throw DomainError("multiplier must be finite and >= 1, got " + std::to_string(spec.multiplier));
}

void validate(const ProcessInput& input) {
    if (!std::isfinite(input.capital) || input.capital < 0.0)
        throw DomainError("capital must be finite and >= 0, got " + std::to_string(input.capital));
    if (!std::isfinite(input.labour) || input.labour < 0.0)
        throw DomainError("labour must be finite and >= 0, got " + std::to_string(input.labour));
}

double production(const ProcessSpec& spec, const ProcessInput& input) {
    validate(spec);
    validate(input);
    if (input.capital == 0.0 || input.labour == 0.0) return 0.0;
    return spec.multiplier * std::pow(input.capital, spec.beta) * std::pow(input.labour, 1.0 - spec.beta);
}

double marginal_productivity_capital(const ProcessSpec& spec, const ProcessInput& input) {
    validate(spec);
    require_interior(input);
    return spec.beta * spec.multiplier * std::pow(input.labour / input.capital, 1.0 - spec.beta);
}

double marginal_productivity_labour(const ProcessSpec& spec, const ProcessInput& input) {
    validate(spec);
    require_interior(input);
    return (1.0 - spec.beta) * spec.multiplier * std::pow(input.capital / input.labour, spec.beta);
}

double swapped_marginal_productivity_capital(const ProcessSpec& spec, const ProcessInput& input) {
    validate(spec);
    require_interior(input);
    return (1.0 - spec.beta) * spec.multiplier * std::pow(input.capital / input.labour, spec.beta);
}

double swapped_marginal_productivity_labour(const ProcessSpec& spec, const ProcessInput& input) {
    validate(spec);
    require_interior(input);
    return spec.beta * spec.multiplier * std::pow(input.labour / input.capital, 1.0 - spec.beta);
}

Redistribution redistribute(const ProcessSpec& spec, const Shares& shares) {
    for (const auto& s : shares.capital)
        if (!std::isfinite(s.amount) || s.amount < 0.0) throw DomainError("capital share must be finite and >= 0");
    for (const auto& s : shares.labour)
        if (!std::isfinite(s.amount) || s.amount < 0.0) throw DomainError("labour share must be finite and >= 0");

    const ProcessInput total = shares.totals();
    Redistribution out;
    out.output = production(spec, total);
    out.rewards.reserve(shares.capital.size() + shares.labour.size());

    const double capital_pool = spec.beta * out.output;
    const double labour_pool = (1.0 - spec.beta) * out.output;
    for (const auto& s : shares.capital)
        out.rewards.push_back({s.agent, out.output == 0.0 ? 0.0 : capital_pool * (s.amount / total.capital)});
    for (const auto& s : shares.labour)
        out.rewards.push_back({s.agent, out.output == 0.0 ? 0.0 : labour_pool * (s.amount / total.labour)});
    return out;
}

} // namespace capital
