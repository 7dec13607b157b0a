"""Concentration functions of weighted sums, least common denominators and
Littlewood-Offord bounds."""

import json as _json

from ._core import (
    CapacityError,
    FiniteDist,
    PreconditionError,
    QuadratureError,
    atom_survival,
    dist_to_lattice,
    family_ids,
    lcd,
    optimal_bound,
    q_exact,
    q_monte_carlo,
    q_sum,
    solve_tau0,
    spread,
    symmetrize,
    weighted_sum,
)
from . import _core


def calibrate(bound, family, L=2.0, eps_points=40, seed=1):
    """Calibration report as a dict (ratio_sup, rows, fixture, pass, ...)."""
    return _json.loads(_core.calibrate(bound, family, L, eps_points, seed))


def lower_binomial(s, p, eps_points=40):
    return _json.loads(_core.lower_binomial(list(s), list(p), eps_points))


__all__ = [
    "CapacityError",
    "FiniteDist",
    "PreconditionError",
    "QuadratureError",
    "atom_survival",
    "calibrate",
    "dist_to_lattice",
    "family_ids",
    "lcd",
    "lower_binomial",
    "optimal_bound",
    "q_exact",
    "q_monte_carlo",
    "q_sum",
    "solve_tau0",
    "spread",
    "symmetrize",
    "weighted_sum",
]
