#include "capital/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace capital {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// Tracks which keys of an object were consumed so leftovers can be reported.
class ObjectReader {
public:
    ObjectReader(const json& doc, std::string path) : doc_(doc), path_(std::move(path)) {
        if (!doc_.is_object()) throw ValidationError(where() + "expected an object");
    }

    bool has(const std::string& key) const { return doc_.contains(key); }

    const json& at(const std::string& key) {
        seen_.insert(key);
        if (!doc_.contains(key)) throw ValidationError("missing field '" + field(key) + "'");
        return doc_.at(key);
    }

    double number(const std::string& key) {
        const json& v = at(key);
        if (!v.is_number()) throw ValidationError("field '" + field(key) + "' must be a number");
        return v.get<double>();
    }

    double number_or(const std::string& key, double fallback) { return has(key) ? number(key) : fallback; }

    std::uint64_t count(const std::string& key) {
        const json& v = at(key);
        if (!v.is_number_unsigned()) throw ValidationError("field '" + field(key) + "' must be a non-negative integer");
        return v.get<std::uint64_t>();
    }

    std::uint64_t count_or(const std::string& key, std::uint64_t fallback) { return has(key) ? count(key) : fallback; }

    bool boolean_or(const std::string& key, bool fallback) {
        if (!has(key)) return fallback;
        const json& v = at(key);
        if (!v.is_boolean()) throw ValidationError("field '" + field(key) + "' must be a boolean");
        return v.get<bool>();
    }

    std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    void finish(bool strict) const {
        if (!strict) return;
        for (const auto& [key, value] : doc_.items())
            if (!seen_.count(key)) throw ValidationError("unknown field '" + field(key) + "'");
    }

private:
    std::string where() const { return path_.empty() ? "" : "'" + path_ + "': "; }

    const json& doc_;
    std::string path_;
    std::set<std::string> seen_;
};

void check_schema_version(ObjectReader& r) {
    const auto v = r.count("schema_version");
    if (v != kSchemaVersion)
        throw ValidationError("field 'schema_version' must be " + std::to_string(kSchemaVersion) + ", got " +
                              std::to_string(v));
}

MaxProductionMode parse_max_mode(const json& v, const std::string& field) {
    if (v == "step_total") return MaxProductionMode::StepTotal;
    if (v == "single_process") return MaxProductionMode::SingleProcess;
    throw ValidationError("field '" + field + "' must be \"step_total\" or \"single_process\"");
}

const char* max_mode_name(MaxProductionMode m) {
    return m == MaxProductionMode::StepTotal ? "step_total" : "single_process";
}

// Re-throws kernel domain errors as validation errors.
template <typename F>
void validated(F&& f) {
    try {
        f();
    } catch (const DomainError& e) {
        throw ValidationError(e.what());
    }
}

std::vector<double> real_axis(ObjectReader& r, const std::string& key) {
    const json& v = r.at(key);
    if (v.is_array()) {
        std::vector<double> out;
        for (const auto& x : v) {
            if (!x.is_number()) throw ValidationError("field '" + r.field(key) + "' must contain numbers");
            out.push_back(x.get<double>());
        }
        return out;
    }
    if (v.is_object() && v.size() == 1 && v.contains("linspace")) {
        const json& s = v.at("linspace");
        if (!s.is_array() || s.size() != 3 || !s[0].is_number() || !s[1].is_number() || !s[2].is_number_unsigned())
            throw ValidationError("field '" + r.field(key) + ".linspace' must be [lo, hi, count]");
        return linspace(s[0].get<double>(), s[1].get<double>(), s[2].get<std::size_t>());
    }
    throw ValidationError("field '" + r.field(key) + "' must be a list or {\"linspace\": [lo, hi, count]}");
}

std::vector<std::size_t> integer_axis(ObjectReader& r, const std::string& key) {
    const json& v = r.at(key);
    if (v.is_array()) {
        std::vector<std::size_t> out;
        for (const auto& x : v) {
            if (!x.is_number_unsigned())
                throw ValidationError("field '" + r.field(key) + "' must contain non-negative integers");
            out.push_back(x.get<std::size_t>());
        }
        return out;
    }
    if (v.is_object() && v.size() == 1 && v.contains("powers_of_two")) {
        const json& s = v.at("powers_of_two");
        if (!s.is_array() || s.size() != 2 || !s[0].is_number_unsigned() || !s[1].is_number_unsigned() ||
            s[0].get<std::size_t>() > s[1].get<std::size_t>() || s[1].get<std::size_t>() > 30)
            throw ValidationError("field '" + r.field(key) + ".powers_of_two' must be [lo_exp, hi_exp] with lo <= hi <= 30");
        std::vector<std::size_t> out;
        for (auto e = s[0].get<std::size_t>(); e <= s[1].get<std::size_t>(); ++e) out.push_back(std::size_t{1} << e);
        return out;
    }
    throw ValidationError("field '" + r.field(key) + "' must be a list or {\"powers_of_two\": [lo, hi]}");
}

ordered_json metrics_json(const RunMetrics& m) {
    ordered_json j;
    j["average_production"] = m.average_production;
    j["max_production"] = m.max_production;
    j["labour_ratio"] = m.labour_ratio;
    j["capital_strength"] = m.capital_strength ? ordered_json(*m.capital_strength) : ordered_json(nullptr);
    return j;
}

// --- delimited text ---------------------------------------------------------

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

template <std::size_t N>
std::string join(const std::array<const char*, N>& cols) {
    std::string s;
    for (std::size_t i = 0; i < N; ++i) {
        if (i) s += ',';
        s += cols[i];
    }
    return s;
}

// Reads a table with an exact header; returns data rows split into cells.
std::vector<std::vector<std::string>> read_table(std::istream& in, const std::string& header) {
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("table is empty; expected header: " + header);
    if (strip_cr(line) != header) throw ValidationError("unexpected header '" + strip_cr(line) + "'; expected: " + header);
    const auto width = split(header).size();
    std::vector<std::vector<std::string>> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty()) continue;
        auto cells = split(line);
        if (cells.size() != width)
            throw ValidationError("line " + std::to_string(lineno) + ": expected " + std::to_string(width) +
                                  " fields, got " + std::to_string(cells.size()));
        rows.push_back(std::move(cells));
    }
    return rows;
}

std::string optional_cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::optional<double> parse_optional(const std::string& cell, std::string_view field) {
    if (cell.empty()) return std::nullopt;
    return parse_double(cell, field);
}

constexpr std::array kResultColumns{"n",           "k",           "elasticity_draw_index", "alpha",
                                    "gamma",       "epsilon",     "repetition",            "seed",
                                    "average_production", "max_production", "labour_ratio", "capital_strength",
                                    "wall_time_ms"};

constexpr std::array kProcessColumns{"n",          "k",          "elasticity_draw_index", "alpha",
                                     "gamma",      "epsilon",    "repetition",            "process_index",
                                     "beta",       "average_output", "labour_share"};

constexpr std::array kBinColumns{"beta_lo",           "beta_hi",          "average_output_mean",
                                 "average_output_std", "average_output_count", "labour_share_mean",
                                 "labour_share_std",  "labour_share_count"};

constexpr std::array kCurveColumns{"ratio", "labour", "capital", "beta", "mpc", "mpl"};

constexpr std::array kMetricNames{"average_production", "max_production", "labour_ratio", "capital_strength"};

bool is_integer_key(GroupKey k) { return k == GroupKey::N || k == GroupKey::K || k == GroupKey::ElasticityDraw; }

std::string stats_cells(const MetricStats& s) {
    if (s.count == 0) return ",,0";
    return format_double(s.mean) + "," + format_double(s.std) + "," + std::to_string(s.count);
}

MetricStats parse_stats(const std::vector<std::string>& cells, std::size_t at, const std::string& name) {
    MetricStats s;
    s.count = parse_uint(cells[at + 2], name + "_count");
    if (s.count == 0) return s;
    s.mean = parse_double(cells[at], name + "_mean");
    s.std = parse_double(cells[at + 1], name + "_std");
    return s;
}

} // namespace

std::string format_double(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("cannot format a non-finite value");
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

double parse_double(std::string_view text, std::string_view field) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v))
        throw ValidationError("field '" + std::string(field) + "': '" + std::string(text) + "' is not a finite number");
    return v;
}

std::uint64_t parse_uint(std::string_view text, std::string_view field) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw ValidationError("field '" + std::string(field) + "': '" + std::string(text) +
                              "' is not a non-negative integer");
    return v;
}

GameConfig game_config_from_json(const json& doc, bool strict) {
    ObjectReader r(doc, "");
    check_schema_version(r);
    GameConfig c;
    c.n_agents = r.count("n_agents");

    const json& procs = r.at("processes");
    if (!procs.is_array()) throw ValidationError("field 'processes' must be a list");
    c.processes.clear();
    for (std::size_t i = 0; i < procs.size(); ++i) {
        ObjectReader p(procs[i], "processes[" + std::to_string(i) + "]");
        ProcessSpec spec{p.number("beta"), p.number_or("multiplier", 1.0)};
        p.finish(strict);
        c.processes.push_back(spec);
    }

    c.initial_capital = r.number_or("initial_capital", c.initial_capital);
    c.timenergy_per_turn = r.number_or("timenergy_per_turn", c.timenergy_per_turn);
    c.n_steps = r.count_or("n_steps", c.n_steps);

    if (r.has("learning")) {
        ObjectReader l(r.at("learning"), "learning");
        c.learning.alpha = l.number_or("alpha", c.learning.alpha);
        c.learning.gamma = l.number_or("gamma", c.learning.gamma);
        c.learning.epsilon = l.number_or("epsilon", c.learning.epsilon);
        l.finish(strict);
    }
    if (r.has("trace_stride")) c.trace_stride = r.count("trace_stride");
    c.consume_invested_capital = r.boolean_or("consume_invested_capital", false);
    if (r.has("max_production_mode")) c.max_production_mode = parse_max_mode(r.at("max_production_mode"), "max_production_mode");
    r.finish(strict);

    validated([&] { c.validate(); });
    return c;
}

ordered_json to_json(const GameConfig& c) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["n_agents"] = c.n_agents;
    j["processes"] = ordered_json::array();
    for (const auto& p : c.processes) j["processes"].push_back({{"beta", p.beta}, {"multiplier", p.multiplier}});
    j["initial_capital"] = c.initial_capital;
    j["timenergy_per_turn"] = c.timenergy_per_turn;
    j["n_steps"] = c.n_steps;
    j["learning"] = {{"alpha", c.learning.alpha}, {"gamma", c.learning.gamma}, {"epsilon", c.learning.epsilon}};
    if (c.trace_stride) j["trace_stride"] = *c.trace_stride;
    j["consume_invested_capital"] = c.consume_invested_capital;
    j["max_production_mode"] = max_mode_name(c.max_production_mode);
    return j;
}

SweepGrid sweep_grid_from_json(const json& doc, bool strict) {
    ObjectReader r(doc, "");
    check_schema_version(r);
    SweepGrid g;
    g.n_values = integer_axis(r, "n_values");
    g.k_values = integer_axis(r, "k_values");
    g.elasticity_draws = r.count("elasticity_draws");
    if (r.has("beta_range")) {
        const json& b = r.at("beta_range");
        if (!b.is_array() || b.size() != 2 || !b[0].is_number() || !b[1].is_number())
            throw ValidationError("field 'beta_range' must be [lo, hi]");
        g.beta_min = b[0].get<double>();
        g.beta_max = b[1].get<double>();
    }
    g.alpha_values = real_axis(r, "alpha_values");
    g.gamma_values = real_axis(r, "gamma_values");
    g.epsilon_values = real_axis(r, "epsilon_values");
    g.repetitions = r.count("repetitions");
    g.n_steps = r.count("n_steps");
    g.initial_capital = r.number_or("initial_capital", g.initial_capital);
    g.timenergy_per_turn = r.number_or("timenergy_per_turn", g.timenergy_per_turn);
    g.multiplier = r.number_or("multiplier", g.multiplier);
    g.consume_invested_capital = r.boolean_or("consume_invested_capital", false);
    if (r.has("max_production_mode")) g.max_production_mode = parse_max_mode(r.at("max_production_mode"), "max_production_mode");
    g.master_seed = r.count_or("master_seed", 0);
    r.finish(strict);
    validated([&] { g.validate(); });
    return g;
}

ordered_json to_json(const SweepGrid& g) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["n_values"] = g.n_values;
    j["k_values"] = g.k_values;
    j["elasticity_draws"] = g.elasticity_draws;
    j["beta_range"] = {g.beta_min, g.beta_max};
    j["alpha_values"] = g.alpha_values;
    j["gamma_values"] = g.gamma_values;
    j["epsilon_values"] = g.epsilon_values;
    j["repetitions"] = g.repetitions;
    j["n_steps"] = g.n_steps;
    j["initial_capital"] = g.initial_capital;
    j["timenergy_per_turn"] = g.timenergy_per_turn;
    j["multiplier"] = g.multiplier;
    j["consume_invested_capital"] = g.consume_invested_capital;
    j["max_production_mode"] = max_mode_name(g.max_production_mode);
    j["master_seed"] = g.master_seed;
    return j;
}

ordered_json to_json(const RunRecord& rec) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = "run_record";
    j["seed"] = rec.config.seed;
    j["config"] = to_json(rec.config);
    j["metrics"] = metrics_json(rec.metrics);
    j["processes"] = ordered_json::array();
    for (const auto& p : rec.processes) {
        ordered_json pj;
        pj["beta"] = p.beta;
        pj["total_output"] = p.total_output;
        pj["average_output"] = p.average_output;
        pj["labourer_turns"] = p.labourer_turns;
        pj["occupied_turns"] = p.occupied_turns;
        j["processes"].push_back(std::move(pj));
    }
    j["final_capital"] = rec.final_capital;
    j["trace_stride"] = rec.config.effective_trace_stride();
    j["traces"] = ordered_json::array();
    for (const auto& t : rec.traces) {
        ordered_json tj;
        tj["step"] = t.step;
        tj["process_output"] = t.process_output;
        tj["agent_reward"] = t.agent_reward;
        tj["agent_action"] = t.agent_action;
        tj["labourer_count"] = t.labourer_count;
        tj["capitalist_count"] = t.capitalist_count;
        tj["total_output"] = t.total_output;
        j["traces"].push_back(std::move(tj));
    }
    return j;
}

RunRecord run_record_from_json(const json& doc) {
    try {
        if (doc.at("kind") != "run_record") throw ValidationError("field 'kind' must be \"run_record\"");
        if (doc.at("schema_version") != kSchemaVersion) throw ValidationError("unsupported 'schema_version'");
        RunRecord rec;
        rec.config = game_config_from_json(doc.at("config"), true);
        rec.config.seed = doc.at("seed").get<std::uint64_t>();
        const json& m = doc.at("metrics");
        rec.metrics.average_production = m.at("average_production").get<double>();
        rec.metrics.max_production = m.at("max_production").get<double>();
        rec.metrics.labour_ratio = m.at("labour_ratio").get<double>();
        if (!m.at("capital_strength").is_null()) rec.metrics.capital_strength = m.at("capital_strength").get<double>();
        for (const auto& p : doc.at("processes")) {
            ProcessSummary s;
            s.beta = p.at("beta").get<double>();
            s.total_output = p.at("total_output").get<double>();
            s.average_output = p.at("average_output").get<double>();
            s.labourer_turns = p.at("labourer_turns").get<std::size_t>();
            s.occupied_turns = p.at("occupied_turns").get<std::size_t>();
            rec.processes.push_back(s);
        }
        rec.final_capital = doc.at("final_capital").get<std::vector<double>>();
        for (const auto& t : doc.at("traces")) {
            StepTrace s;
            s.step = t.at("step").get<std::size_t>();
            s.process_output = t.at("process_output").get<std::vector<double>>();
            s.agent_reward = t.at("agent_reward").get<std::vector<double>>();
            s.agent_action = t.at("agent_action").get<std::vector<std::uint32_t>>();
            s.labourer_count = t.at("labourer_count").get<std::size_t>();
            s.capitalist_count = t.at("capitalist_count").get<std::size_t>();
            s.total_output = t.at("total_output").get<double>();
            rec.traces.push_back(std::move(s));
        }
        return rec;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed run record: ") + e.what());
    }
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path.string() + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError("'" + path.string() + "' is not valid JSON: " + e.what());
    }
}

void write_results_csv(std::ostream& out, std::span<const ResultRow> rows) {
    out << join(kResultColumns) << '\n';
    for (const auto& r : rows) {
        out << r.n << ',' << r.k << ',' << r.elasticity_draw_index << ',' << format_double(r.alpha) << ','
            << format_double(r.gamma) << ',' << format_double(r.epsilon) << ',' << r.repetition << ',' << r.seed << ','
            << format_double(r.metrics.average_production) << ',' << format_double(r.metrics.max_production) << ','
            << format_double(r.metrics.labour_ratio) << ',' << optional_cell(r.metrics.capital_strength) << ','
            << optional_cell(r.wall_time_ms) << '\n';
    }
}

std::vector<ResultRow> read_results_csv(std::istream& in) {
    std::vector<ResultRow> rows;
    for (const auto& c : read_table(in, join(kResultColumns))) {
        ResultRow r;
        r.n = parse_uint(c[0], "n");
        r.k = parse_uint(c[1], "k");
        r.elasticity_draw_index = parse_uint(c[2], "elasticity_draw_index");
        r.alpha = parse_double(c[3], "alpha");
        r.gamma = parse_double(c[4], "gamma");
        r.epsilon = parse_double(c[5], "epsilon");
        r.repetition = parse_uint(c[6], "repetition");
        r.seed = parse_uint(c[7], "seed");
        r.metrics.average_production = parse_double(c[8], "average_production");
        r.metrics.max_production = parse_double(c[9], "max_production");
        r.metrics.labour_ratio = parse_double(c[10], "labour_ratio");
        r.metrics.capital_strength = parse_optional(c[11], "capital_strength");
        r.wall_time_ms = parse_optional(c[12], "wall_time_ms");
        if (r.k == 1 && r.metrics.capital_strength)
            throw ValidationError("field 'capital_strength' must be empty when k = 1");
        rows.push_back(r);
    }
    return rows;
}

void write_processes_csv(std::ostream& out, std::span<const ProcessRow> rows) {
    out << join(kProcessColumns) << '\n';
    for (const auto& r : rows) {
        out << r.n << ',' << r.k << ',' << r.elasticity_draw_index << ',' << format_double(r.alpha) << ','
            << format_double(r.gamma) << ',' << format_double(r.epsilon) << ',' << r.repetition << ','
            << r.process_index << ',' << format_double(r.beta) << ',' << format_double(r.average_output) << ','
            << optional_cell(r.labour_share) << '\n';
    }
}

std::vector<ProcessRow> read_processes_csv(std::istream& in) {
    std::vector<ProcessRow> rows;
    for (const auto& c : read_table(in, join(kProcessColumns))) {
        ProcessRow r;
        r.n = parse_uint(c[0], "n");
        r.k = parse_uint(c[1], "k");
        r.elasticity_draw_index = parse_uint(c[2], "elasticity_draw_index");
        r.alpha = parse_double(c[3], "alpha");
        r.gamma = parse_double(c[4], "gamma");
        r.epsilon = parse_double(c[5], "epsilon");
        r.repetition = parse_uint(c[6], "repetition");
        r.process_index = parse_uint(c[7], "process_index");
        r.beta = parse_double(c[8], "beta");
        r.average_output = parse_double(c[9], "average_output");
        r.labour_share = parse_optional(c[10], "labour_share");
        rows.push_back(r);
    }
    return rows;
}

void write_aggregate_csv(std::ostream& out, const AggregateTable& table) {
    for (auto key : table.keys) out << to_string(key) << ',';
    out << "runs";
    for (const char* m : kMetricNames) out << ',' << m << "_mean," << m << "_std," << m << "_count";
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < table.keys.size(); ++i) {
            if (is_integer_key(table.keys[i]))
                out << static_cast<std::uint64_t>(row.keys[i]) << ',';
            else
                out << format_double(row.keys[i]) << ',';
        }
        out << row.runs << ',' << stats_cells(row.average_production) << ',' << stats_cells(row.max_production) << ','
            << stats_cells(row.labour_ratio) << ',' << stats_cells(row.capital_strength) << '\n';
    }
}

AggregateTable read_aggregate_csv(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw ValidationError("aggregate table is empty");
    header = strip_cr(header);
    const auto cols = split(header);
    AggregateTable table;
    std::size_t i = 0;
    while (i < cols.size() && cols[i] != "runs") table.keys.push_back(parse_group_key(cols[i++]));

    std::ostringstream expected;
    for (auto key : table.keys) expected << to_string(key) << ',';
    expected << "runs";
    for (const char* m : kMetricNames) expected << ',' << m << "_mean," << m << "_std," << m << "_count";
    if (header != expected.str()) throw ValidationError("unexpected aggregate header '" + header + "'");

    std::istringstream body(header + "\n" + std::string(std::istreambuf_iterator<char>(in), {}));
    for (const auto& c : read_table(body, header)) {
        AggregateRow row;
        const std::size_t nk = table.keys.size();
        for (std::size_t k = 0; k < nk; ++k) row.keys.push_back(parse_double(c[k], to_string(table.keys[k])));
        row.runs = parse_uint(c[nk], "runs");
        row.average_production = parse_stats(c, nk + 1, kMetricNames[0]);
        row.max_production = parse_stats(c, nk + 4, kMetricNames[1]);
        row.labour_ratio = parse_stats(c, nk + 7, kMetricNames[2]);
        row.capital_strength = parse_stats(c, nk + 10, kMetricNames[3]);
        table.rows.push_back(std::move(row));
    }
    return table;
}

void write_bins_csv(std::ostream& out, std::span<const ElasticityBin> bins) {
    out << join(kBinColumns) << '\n';
    for (const auto& b : bins)
        out << format_double(b.lo) << ',' << format_double(b.hi) << ',' << stats_cells(b.average_output) << ','
            << stats_cells(b.labour_share) << '\n';
}

std::vector<ElasticityBin> read_bins_csv(std::istream& in) {
    std::vector<ElasticityBin> bins;
    for (const auto& c : read_table(in, join(kBinColumns))) {
        ElasticityBin b;
        b.lo = parse_double(c[0], "beta_lo");
        b.hi = parse_double(c[1], "beta_hi");
        b.average_output = parse_stats(c, 2, "average_output");
        b.labour_share = parse_stats(c, 5, "labour_share");
        bins.push_back(b);
    }
    return bins;
}

void write_curves_csv(std::ostream& out, std::span<const CurvePoint> points) {
    out << join(kCurveColumns) << '\n';
    for (const auto& p : points)
        out << p.ratio.label() << ',' << format_double(p.ratio.labour) << ',' << format_double(p.ratio.capital) << ','
            << format_double(p.beta) << ',' << format_double(p.mpc) << ',' << format_double(p.mpl) << '\n';
}

std::vector<CurvePoint> read_curves_csv(std::istream& in) {
    std::vector<CurvePoint> points;
    for (const auto& c : read_table(in, join(kCurveColumns))) {
        CurvePoint p;
        p.ratio = {parse_double(c[1], "labour"), parse_double(c[2], "capital")};
        if (p.ratio.label() != c[0]) throw ValidationError("field 'ratio': '" + c[0] + "' does not match labour:capital");
        p.beta = parse_double(c[3], "beta");
        p.mpc = parse_double(c[4], "mpc");
        p.mpl = parse_double(c[5], "mpl");
        points.push_back(p);
    }
    return points;
}

} // namespace capital
