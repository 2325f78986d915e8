#pragma once

#include "capital/analysis.hpp"
#include "capital/experiments.hpp"
#include "capital/game.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace capital {

/// A file or document does not match its schema. The message names the field.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kSchemaVersion = 1;

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);
double parse_double(std::string_view text, std::string_view field);
std::uint64_t parse_uint(std::string_view text, std::string_view field);

// Game configuration. Seeds are not part of the document; callers set
// GameConfig::seed. Unknown fields are rejected when strict.
GameConfig game_config_from_json(const nlohmann::json& doc, bool strict = true);
nlohmann::ordered_json to_json(const GameConfig& config);

// Sweep grid. Axes are either explicit lists or generators:
// {"linspace": [lo, hi, count]} for reals, {"powers_of_two": [lo_exp, hi_exp]} for integers.
SweepGrid sweep_grid_from_json(const nlohmann::json& doc, bool strict = true);
nlohmann::ordered_json to_json(const SweepGrid& grid);

nlohmann::ordered_json to_json(const RunRecord& record);
RunRecord run_record_from_json(const nlohmann::json& doc);

nlohmann::json read_json_file(const std::filesystem::path& path);

void write_results_csv(std::ostream& out, std::span<const ResultRow> rows);
std::vector<ResultRow> read_results_csv(std::istream& in);

void write_processes_csv(std::ostream& out, std::span<const ProcessRow> rows);
std::vector<ProcessRow> read_processes_csv(std::istream& in);

void write_aggregate_csv(std::ostream& out, const AggregateTable& table);
AggregateTable read_aggregate_csv(std::istream& in);

void write_bins_csv(std::ostream& out, std::span<const ElasticityBin> bins);
std::vector<ElasticityBin> read_bins_csv(std::istream& in);

void write_curves_csv(std::ostream& out, std::span<const CurvePoint> points);
std::vector<CurvePoint> read_curves_csv(std::istream& in);

} // namespace capital
