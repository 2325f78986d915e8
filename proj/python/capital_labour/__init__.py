"""Python access to the capital/labour production game."""

import csv
import io
import json

from ._core import (
    DomainError,
    SimulationError,
    ValidationError,
    marginal_productivity_capital,
    marginal_productivity_labour,
    production,
    redistribute,
)
from . import _core

__all__ = [
    "DomainError",
    "SimulationError",
    "ValidationError",
    "analyze",
    "marginal_productivity_capital",
    "marginal_productivity_labour",
    "production",
    "redistribute",
    "run_game",
    "run_sweep",
]


def _rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def run_game(config, seed, trace_stride=None):
    """Play one game. `config` is a dict in the game-config file format; returns the run record as a dict."""
    return json.loads(_core.run_game_json(json.dumps(config), seed, trace_stride))


def run_sweep(grid, seed, parallelism=1, strict=True, group_by=("n", "k")):
    """Run a sweep grid (dict in the grid file format). Tables come back as lists of dicts with string cells."""
    raw = _core.run_sweep_csv(json.dumps(grid), seed, parallelism, strict, list(group_by))
    out = {name: _rows(raw[name]) for name in ("results", "processes", "aggregates", "elasticity_bins")}
    out["failures"] = list(raw["failures"])
    return out


def analyze(ratios=(), beta_points=99, multiplier=1.0, paper_formulas=False):
    """Marginal productivity curves; each point is a dict with ratio, labour, capital, beta, mpc, mpl."""
    rows = _rows(_core.analyze_csv(list(ratios), beta_points, multiplier, paper_formulas))
    for r in rows:
        for key in ("labour", "capital", "beta", "mpc", "mpl"):
            r[key] = float(r[key])
    return rows
