#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace capital {

enum class FormulaMode {
    TrueDerivatives, ///< partial derivatives of the production function
    Swapped,         ///< capital and labour right-hand sides exchanged (--paper-formulas)
};

/// Labour units to capital units, written "L:C".
struct LabourCapitalRatio {
    double labour = 1.0;
    double capital = 1.0;

    std::string label() const;
    friend bool operator==(const LabourCapitalRatio&, const LabourCapitalRatio&) = default;
};

/// Parses "L:C" with positive finite parts; throws DomainError otherwise.
LabourCapitalRatio parse_ratio(const std::string& text);

struct CurveRequest {
    std::vector<LabourCapitalRatio> ratios{{1, 1}, {20, 1}, {1, 20}};
    std::size_t beta_points = 99;
    double multiplier = 1.0;
    FormulaMode mode = FormulaMode::TrueDerivatives;

    void validate() const;
};

struct CurvePoint {
    LabourCapitalRatio ratio;
    double beta = 0.0;
    double mpc = 0.0;
    double mpl = 0.0;
};

/// i / (points + 1) for i = 1..points, strictly inside (0, 1).
std::vector<double> beta_grid(std::size_t points);

/// Marginal productivity curves, ratio-major then ascending beta.
std::vector<CurvePoint> analyze(const CurveRequest& request);

} // namespace capital
