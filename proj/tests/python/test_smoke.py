import math

import pytest

import capital_labour as cl

GAME = {
    "schema_version": 1,
    "n_agents": 4,
    "processes": [{"beta": 0.3, "multiplier": 1}, {"beta": 0.7, "multiplier": 1}],
    "n_steps": 50,
}

GRID = {
    "schema_version": 1,
    "n_values": [4],
    "k_values": [1, 2],
    "elasticity_draws": 1,
    "alpha_values": [0.3],
    "gamma_values": [0.1],
    "epsilon_values": [0.02],
    "repetitions": 2,
    "n_steps": 40,
}


def test_production_and_marginals():
    assert cl.production(0.5, 1.0, 4.0, 9.0) == pytest.approx(6.0)
    assert cl.production(0.5, 1.0, 0.0, 9.0) == 0.0
    c, l, beta = 3.0, 7.0, 0.35
    y = cl.production(beta, 2.0, c, l)
    mpc = cl.marginal_productivity_capital(beta, 2.0, c, l)
    mpl = cl.marginal_productivity_labour(beta, 2.0, c, l)
    assert c * mpc + l * mpl == pytest.approx(y, rel=1e-12)


def test_domain_errors():
    with pytest.raises(ValueError):
        cl.production(1.5, 1.0, 1.0, 1.0)
    with pytest.raises(cl.DomainError):
        cl.marginal_productivity_capital(0.5, 1.0, 0.0, 1.0)


def test_redistribute_conserves_output():
    output, rewards = cl.redistribute(0.5, 1.0, [(0, 10.0), (1, 30.0)], [(2, 40.0)])
    assert output == pytest.approx(40.0)
    assert [a for a, _ in rewards] == [0, 1, 2]
    assert sum(r for _, r in rewards) == pytest.approx(output)
    assert rewards[0][1] == pytest.approx(5.0)


def test_run_game_is_deterministic():
    a = cl.run_game(GAME, seed=3)
    b = cl.run_game(GAME, seed=3)
    assert a == b
    assert a["seed"] == 3
    m = a["metrics"]
    assert 0.0 <= m["labour_ratio"] <= 1.0
    assert math.isfinite(m["average_production"])
    assert len(a["traces"]) == 50
    assert cl.run_game(GAME, seed=4) != a


def test_run_game_rejects_unknown_field():
    with pytest.raises(cl.ValidationError):
        cl.run_game({**GAME, "bogus": 1}, seed=1)


def test_run_sweep_tables():
    out = cl.run_sweep(GRID, seed=5, parallelism=2)
    assert len(out["results"]) == 4
    assert out["failures"] == []
    k1 = [r for r in out["results"] if r["k"] == "1"]
    assert all(r["capital_strength"] == "" for r in k1)
    assert {r["k"] for r in out["aggregates"]} == {"1", "2"}
    assert len(out["elasticity_bins"]) == 9
    assert out == cl.run_sweep(GRID, seed=5, parallelism=1)


def test_analyze_default_ratios():
    pts = cl.analyze()
    assert len(pts) == 3 * 99
    one = [p for p in pts if p["ratio"] == "1:1"]
    assert all(p["mpc"] == p["beta"] and p["mpl"] == 1.0 - p["beta"] for p in one)
    swapped = cl.analyze(ratios=["20:1"], beta_points=9, paper_formulas=True)
    assert len(swapped) == 9
