#include "capital/experiments.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

using namespace capital;

namespace {

SweepGrid tiny_grid() {
    SweepGrid g;
    g.n_values = {3, 6};
    g.k_values = {1, 3};
    g.elasticity_draws = 2;
    g.alpha_values = {0.2, 0.8};
    g.gamma_values = {0.1};
    g.epsilon_values = {0.0, 0.05};
    g.repetitions = 2;
    g.n_steps = 60;
    g.master_seed = 31;
    return g;
}

} // namespace

TEST_CASE("linspace") {
    const auto v = linspace(0.01, 1.0, 10);
    REQUIRE(v.size() == 10);
    CHECK(v.front() == 0.01);
    CHECK(v.back() == 1.0);
    CHECK(v[1] == doctest::Approx(0.12));
    CHECK(linspace(0, 0.99, 10)[9] == 0.99);
    CHECK(linspace(0.3, 0.9, 1) == std::vector<double>{0.3});
}

TEST_CASE("full-scale grid cardinality") {
    const auto g = SweepGrid::full_scale(0);
    CHECK(g.size() == 2592000);
    CHECK(g.k_values.front() == 2);
    CHECK(g.k_values.back() == 256);
    CHECK(g.n_values.front() == 4);
    CHECK(g.n_values.back() == 1024);
    CHECK(g.epsilon_values[2] == doctest::Approx(0.0222222));
    const GridEnumerator e(g);
    CHECK(e.size() == 2592000);
    const auto last = e[e.size() - 1];
    CHECK(last.point.n == 1024);
    CHECK(last.point.k == 256);
    CHECK(last.config.processes.size() == 256);
    CHECK(last.config.n_steps == 5000);
}

TEST_CASE("grid enumeration is complete and deterministic") {
    const auto g = tiny_grid();
    const GridEnumerator a(g), b(g);
    REQUIRE(a.size() == 2 * 2 * 2 * 2 * 1 * 2 * 2);
    std::set<std::uint64_t> seeds;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto pa = a[i], pb = b[i];
        CHECK(pa.point == pb.point);
        CHECK(pa.config.seed == pb.config.seed);
        CHECK(pa.config.betas() == pb.config.betas());
        seeds.insert(pa.config.seed);
        for (double beta : pa.config.betas()) CHECK((beta >= 0.1 && beta <= 0.9));
    }
    CHECK(seeds.size() == a.size());
}

TEST_CASE("single-process cells use equidistant elasticities") {
    auto g = tiny_grid();
    g.elasticity_draws = 9;
    const GridEnumerator e(g);
    for (std::size_t d = 0; d < 9; ++d)
        CHECK(e.elasticities(0, d)[0] == doctest::Approx(0.1 + 0.1 * static_cast<double>(d)));
}

TEST_CASE("elasticity arrays are shared across cells with the same k and draw") {
    const GridEnumerator e(tiny_grid());
    std::map<std::pair<std::size_t, std::size_t>, std::vector<double>> seen;
    for (std::size_t i = 0; i < e.size(); ++i) {
        const auto plan = e[i];
        auto [it, inserted] = seen.emplace(std::pair{plan.point.k, plan.point.elasticity_draw}, plan.config.betas());
        if (!inserted) CHECK(it->second == plan.config.betas());
    }
}

TEST_CASE("seed isolation") {
    const GridPoint p{4, 2, 1, 0, 0, 0, 0};
    GridPoint q = p;
    q.repetition = 1;
    CHECK(run_seed(5, p) != run_seed(5, q));
    CHECK(run_seed(5, p) == run_seed(5, p));

    // Changing the repetition count leaves earlier runs untouched.
    auto g = tiny_grid();
    g.n_values = {3};
    g.k_values = {3};
    const auto two = run_sweep(g, {});
    g.repetitions = 3;
    const auto three = run_sweep(g, {});
    for (const auto& row : two.rows) {
        const auto it = std::find_if(three.rows.begin(), three.rows.end(), [&](const ResultRow& r) {
            return r.seed == row.seed;
        });
        REQUIRE(it != three.rows.end());
        CHECK(*it == row);
    }
}

TEST_CASE("parallel and sequential sweeps are identical") {
    const auto g = tiny_grid();
    SweepOptions one, many;
    many.parallelism = 8;
    const auto a = run_sweep(g, one);
    const auto b = run_sweep(g, many);
    CHECK(a.rows == b.rows);
    CHECK(a.processes == b.processes);
    const std::vector<GroupKey> keys{GroupKey::N, GroupKey::K};
    CHECK(aggregate(a.rows, keys) == aggregate(b.rows, keys));
}

TEST_CASE("repetitions produce one row each") {
    auto g = tiny_grid();
    g.repetitions = 4;
    const auto r = run_sweep(g, {});
    CHECK(r.rows.size() == g.size());
    const auto table = aggregate(r.rows, std::vector<GroupKey>{GroupKey::N, GroupKey::K, GroupKey::ElasticityDraw,
                                                               GroupKey::Alpha, GroupKey::Gamma, GroupKey::Epsilon});
    for (const auto& row : table.rows) CHECK(row.runs == 4);
}

TEST_CASE("metric bounds hold across a sweep") {
    const auto r = run_sweep(tiny_grid(), {});
    for (const auto& row : r.rows) {
        CHECK(row.metrics.average_production >= 0.0);
        CHECK(row.metrics.max_production >= 0.0);
        CHECK((row.metrics.labour_ratio >= 0.0 && row.metrics.labour_ratio <= 1.0));
        if (row.k == 1) {
            CHECK_FALSE(row.metrics.capital_strength.has_value());
        } else {
            REQUIRE(row.metrics.capital_strength.has_value());
            CHECK((*row.metrics.capital_strength >= 0.0 && *row.metrics.capital_strength <= 1.0));
        }
        CHECK_FALSE(row.wall_time_ms.has_value());
    }
    for (const auto& p : r.processes)
        if (p.labour_share) CHECK((*p.labour_share >= 0.0 && *p.labour_share <= 1.0));
}

TEST_CASE("aggregation") {
    ResultRow a;
    a.n = 4;
    a.k = 2;
    a.metrics = {10, 20, 0.5, 0.25};
    ResultRow b = a;
    b.repetition = 1;
    b.metrics = {30, 40, 0.7, 0.75};
    ResultRow c = a;
    c.n = 8;
    c.k = 1;
    c.metrics = {5, 6, 0.1, std::nullopt};

    const std::vector<ResultRow> rows{c, b, a};
    const auto t = aggregate(rows, std::vector<GroupKey>{GroupKey::N});
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0].keys == std::vector<double>{4});
    CHECK(t.rows[0].runs == 2);
    CHECK(t.rows[0].average_production.mean == 20.0);
    CHECK(t.rows[0].average_production.std == doctest::Approx(14.142135623730951));
    CHECK(t.rows[0].capital_strength.mean == 0.5);

    // one-run group
    CHECK(t.rows[1].runs == 1);
    CHECK(t.rows[1].labour_ratio.std == 0.0);
    CHECK(t.rows[1].labour_ratio.count == 1);
    CHECK(t.rows[1].capital_strength.count == 0);

    std::size_t total = 0;
    for (const auto& r : t.rows) total += r.runs;
    CHECK(total == rows.size());

    // input order does not matter
    const std::vector<ResultRow> reordered{a, c, b};
    CHECK(aggregate(reordered, std::vector<GroupKey>{GroupKey::N}) == t);

    const auto all = aggregate(rows, {});
    REQUIRE(all.rows.size() == 1);
    CHECK(all.rows[0].runs == 3);
}

TEST_CASE("group key names") {
    for (auto k : {GroupKey::N, GroupKey::K, GroupKey::ElasticityDraw, GroupKey::Alpha, GroupKey::Gamma, GroupKey::Epsilon})
        CHECK(parse_group_key(to_string(k)) == k);
    CHECK_THROWS_AS(parse_group_key("beta"), DomainError);
}

TEST_CASE("elasticity binning") {
    std::vector<ProcessRow> rows;
    for (double beta : {0.1, 0.15, 0.5, 0.9, 0.89}) {
        ProcessRow p;
        p.beta = beta;
        p.average_output = beta * 10;
        p.labour_share = 1 - beta;
        rows.push_back(p);
    }
    rows.back().labour_share.reset();
    const auto bins = bin_by_elasticity(rows, 4, 0.1, 0.9);
    REQUIRE(bins.size() == 4);
    CHECK(bins[0].average_output.count == 2);
    CHECK(bins[0].average_output.mean == doctest::Approx(1.25));
    CHECK(bins[2].average_output.count == 1);
    CHECK(bins[3].average_output.count == 2);
    CHECK(bins[3].labour_share.count == 1);
    CHECK(bins[1].average_output.count == 0);
    CHECK(bins[3].hi == doctest::Approx(0.9));
}

TEST_CASE("failure policy") {
    auto g = tiny_grid();
    g.n_values = {4};
    g.k_values = {1};
    g.elasticity_draws = 1;
    g.beta_min = g.beta_max = 0.9;
    g.multiplier = 1e300;
    g.n_steps = 200;
    CHECK_THROWS_AS(run_sweep(g, {}), SweepAborted);

    SweepOptions permissive;
    permissive.strict = false;
    const auto r = run_sweep(g, permissive);
    CHECK(r.failures.size() + r.rows.size() == g.size());
    CHECK(r.failures.size() > 0);
}

TEST_CASE("grid validation") {
    auto g = tiny_grid();
    g.alpha_values = {0.0};
    CHECK_THROWS_AS(g.validate(), DomainError);
    g = tiny_grid();
    g.k_values.clear();
    CHECK_THROWS_AS(g.validate(), DomainError);
    g = tiny_grid();
    g.beta_min = 0.0;
    CHECK_THROWS_AS(GridEnumerator{g}, DomainError);
}
