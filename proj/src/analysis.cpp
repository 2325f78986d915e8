#include "capital/analysis.hpp"

#include "capital/production.hpp"

#include <charconv>
#include <cmath>

namespace capital {

namespace {

double parse_positive(const std::string& text, const std::string& whole) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v) || v <= 0.0)
        throw DomainError("invalid ratio '" + whole + "': parts must be positive numbers");
    return v;
}

std::string trim_number(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

} // namespace

std::string LabourCapitalRatio::label() const { return trim_number(labour) + ":" + trim_number(capital); }

LabourCapitalRatio parse_ratio(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw DomainError("invalid ratio '" + text + "': expected L:C");
    return {parse_positive(text.substr(0, colon), text), parse_positive(text.substr(colon + 1), text)};
}

void CurveRequest::validate() const {
    if (ratios.empty()) throw DomainError("at least one ratio is required");
    for (const auto& r : ratios)
        if (!(r.labour > 0.0 && r.capital > 0.0) || !std::isfinite(r.labour) || !std::isfinite(r.capital))
            throw DomainError("ratio parts must be positive and finite");
    if (beta_points < 1) throw DomainError("beta grid needs at least one point");
    if (!(multiplier >= 1.0) || !std::isfinite(multiplier)) throw DomainError("multiplier must be finite and >= 1");
}

std::vector<double> beta_grid(std::size_t points) {
    std::vector<double> grid(points);
    for (std::size_t i = 0; i < points; ++i)
        grid[i] = static_cast<double>(i + 1) / static_cast<double>(points + 1);
    return grid;
}

std::vector<CurvePoint> analyze(const CurveRequest& request) {
    request.validate();
    const auto betas = beta_grid(request.beta_points);
    std::vector<CurvePoint> out;
    out.reserve(request.ratios.size() * betas.size());
    for (const auto& ratio : request.ratios) {
        const ProcessInput input{ratio.capital, ratio.labour};
        for (double beta : betas) {
            const ProcessSpec spec{beta, request.multiplier};
            CurvePoint pt{ratio, beta, 0.0, 0.0};
            if (request.mode == FormulaMode::TrueDerivatives) {
                pt.mpc = marginal_productivity_capital(spec, input);
                pt.mpl = marginal_productivity_labour(spec, input);
            } else {
                pt.mpc = swapped_marginal_productivity_capital(spec, input);
                pt.mpl = swapped_marginal_productivity_labour(spec, input);
            }
            out.push_back(pt);
        }
    }
    return out;
}

} // namespace capital
