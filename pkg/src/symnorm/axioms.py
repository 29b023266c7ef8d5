"""Randomized checks of the gauge-norm axioms for a single spec."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .grid import Grid, GridFunction, indicator, rotate
from .norms import NormSpec, eval_norm
from .sampling import random_function

AXIOMS = (
    "monotonicity",
    "multiplier_bound",
    "l1_lower_bound",
    "sup_upper_bound",
    "triangle",
    "homogeneity",
    "symmetry",
    "small_set_decay",
)


@dataclass
class AxiomReport:
    spec: NormSpec
    trials: int
    tol: float
    worst_slack: dict = field(default_factory=dict)

    @property
    def failures(self) -> list[str]:
        return [k for k, v in self.worst_slack.items() if not v >= -self.tol]

    @property
    def passed(self) -> bool:
        return not self.failures


def _rel(lhs: float, rhs: float) -> float:
    """Slack ``rhs - lhs`` scaled by ``max(1, |rhs|)``."""
    return (rhs - lhs) / max(1.0, abs(rhs))


def verify_axioms(spec: NormSpec, grid: Grid, trials: int = 100, seed: int = 0,
                  tol: float = 1e-12) -> AxiomReport:
    """Run randomized checks and report the worst slack of each property.

    Slacks are ``rhs - lhs`` of each inequality divided by ``max(1, |rhs|)``;
    equalities contribute minus their absolute error.  A property passes when
    its worst slack is at least ``-tol``.  Failures are reported, not raised.
    """
    rng = np.random.default_rng(seed)
    n = grid.n
    worst = {k: math.inf for k in AXIOMS}

    def note(key, slack):
        worst[key] = min(worst[key], slack)

    def a(f):
        return eval_norm(spec, f)

    for _ in range(max(1, trials)):
        f = random_function(grid, rng)
        g = random_function(grid, rng)
        af, ag = a(f), a(g)
        sup_g = float(np.max(np.abs(g.samples)))

        shrink = rng.random(n) * np.exp(2j * np.pi * rng.random(n))
        note("monotonicity", _rel(a(g * shrink), ag))
        note("multiplier_bound", _rel(a(f * g), af * sup_g))
        note("l1_lower_bound", _rel(float(np.mean(np.abs(f.samples))), af))
        note("sup_upper_bound", _rel(af, float(np.max(np.abs(f.samples)))))
        note("triangle", _rel(a(f + g), af + ag))
        lam = complex(rng.normal(), rng.normal()) * 10.0 ** rng.uniform(-3, 3)
        note("homogeneity", -abs(a(f * lam) - abs(lam) * af) / max(1.0, abs(lam) * af))

        r = int(rng.integers(n))
        note("symmetry", -abs(a(rotate(f, r)) - af))
        if spec.fully_symmetric:
            perm = rng.permutation(n)
            note("symmetry", -abs(a(GridFunction(grid, f.samples[perm])) - af))

        # alpha(g chi_E) <= ||g||_inf alpha(chi_E) along shrinking nested sets,
        # and alpha(chi_E) itself does not grow as E shrinks
        order = rng.permutation(n)
        k, prev = n, math.inf
        while k >= 1:
            chi = indicator(grid, order[:k])
            a_chi = a(chi)
            note("small_set_decay", _rel(a(g * chi), sup_g * a_chi))
            note("small_set_decay", _rel(a_chi, prev) if math.isfinite(prev) else 0.0)
            prev = a_chi
            k //= 2

    # the identity multiplier leaves the norm unchanged
    e = indicator(grid, [0])
    note("multiplier_bound", -abs(a(e * np.ones(n)) - a(e)))
    return AxiomReport(spec, trials, tol, worst)
