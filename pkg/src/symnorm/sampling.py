"""Random test functions and the fixture sets used by the property suites."""

from __future__ import annotations

import numpy as np

from .grid import Grid, GridFunction
from .hardy import blaschke
from .norms import (
    Combo,
    KyFan,
    Lp,
    Marcinkiewicz,
    NormSpec,
    PermutationWeighted,
    RotationWeighted,
    SupFamily,
)

GENERATOR = "numpy.random.PCG64"


def random_function(grid: Grid, rng: np.random.Generator) -> GridFunction:
    """A random grid function drawn from a mix of shapes (dense, sparse, heavy-tailed, indicator)."""
    n = grid.n
    kind = rng.integers(5)
    if kind == 0:
        s = rng.normal(size=n) + 1j * rng.normal(size=n)
    elif kind == 1:
        s = np.zeros(n, dtype=complex)
        k = rng.integers(1, max(2, n // 8) + 1)
        s[rng.choice(n, size=k, replace=False)] = rng.normal(size=k) + 1j * rng.normal(size=k)
    elif kind == 2:
        s = np.exp(2.0 * rng.normal(size=n)) * np.exp(2j * np.pi * rng.random(n))
    elif kind == 3:
        s = (rng.random(n) < rng.uniform(0.05, 0.9)).astype(complex) * rng.uniform(0.5, 3.0)
    else:
        s = rng.random(n).astype(complex)
    if not np.any(s):
        s[rng.integers(n)] = 1.0
    return GridFunction(grid, s)


def band_limited(grid: Grid, degree: int, rng: np.random.Generator,
                 analytic: bool = False) -> GridFunction:
    """Trigonometric polynomial with random coefficients on ``|k| <= degree`` (``0..degree`` if analytic)."""
    k = np.arange(0 if analytic else -degree, degree + 1)
    c = (rng.normal(size=k.size) + 1j * rng.normal(size=k.size)) / np.sqrt(1.0 + np.abs(k))
    z = grid.points
    return GridFunction(grid, (c[None, :] * z[:, None] ** k[None, :]).sum(axis=1))


def builtin_specs(n: int) -> dict[str, NormSpec]:
    """The named specs exercised by the suites; weights sized for a grid of ``n`` points."""
    ramp = np.linspace(2.0, 0.0, n, endpoint=False)
    ramp = ramp / ramp.mean()
    bump = 1.0 + 0.5 * np.cos(2 * np.pi * np.arange(n) / n)
    return {
        "l1": Lp(1),
        "l2": Lp(2),
        "l3": Lp(3),
        "linf": Lp(np.inf),
        "kyfan_1/4": KyFan(0.25),
        "kyfan_1/2": KyFan(0.5),
        "kyfan_1/3": KyFan(1 / 3),
        "marcinkiewicz_sqrt": Marcinkiewicz.from_function(np.sqrt, n),
        "marcinkiewicz_coarse": Marcinkiewicz([0.3, 1.0, 0.8, 0.9]),
        "combo": Combo([0.5, 0.5], [Lp(1), Lp(np.inf)]),
        "combo_mixed": Combo([0.25, 0.75], [Lp(2), KyFan(0.125)]),
        "sup": SupFamily([KyFan(0.5), Combo([0.5, 0.5], [Lp(1), KyFan(0.25)])]),
        "permutation_weighted": PermutationWeighted(ramp),
        "rotation_weighted": RotationWeighted(bump),
        "rotation_combo": Combo([0.5, 0.5], [RotationWeighted(bump), KyFan(0.25)]),
    }


def factorization_fixtures(grid: Grid) -> dict[str, tuple[GridFunction, float | None]]:
    """Analytic functions with known inner part.

    Values are ``(f, blaschke_zero_product)``: the product of the moduli of
    the Blaschke zeros, so that ``-log`` of it is the expected Jensen defect
    (``None`` for outer functions, ``0`` for a zero at the origin).
    """
    z = grid.points

    def gf(x):
        return GridFunction(grid, x)

    b5 = blaschke(grid, 0.5).samples
    b8 = blaschke(grid, -0.8j).samples
    b6 = blaschke(grid, 0.3 + 0.6j).samples
    return {
        "z": (gf(z), 0.0),
        "z^3": (gf(z ** 3), 0.0),
        "2+z": (gf(2 + z), None),
        "exp(z)": (gf(np.exp(z)), None),
        "1+z/2+z^2/4": (gf(1 + z / 2 + z ** 2 / 4), None),
        "b(0.5)": (gf(b5), 0.5),
        "b(0.5)(2+z)": (gf(b5 * (2 + z)), 0.5),
        "b(-0.8i)(3-z)": (gf(b8 * (3 - z)), 0.8),
        "b(0.5)b(0.3+0.6i)exp(z)": (gf(b5 * b6 * np.exp(z)), 0.5 * abs(0.3 + 0.6j)),
        "z^2 b(-0.8i)(2+z)": (gf(z ** 2 * b8 * (2 + z)), 0.0),
    }


def smirnov_fixtures(grid: Grid) -> dict[str, tuple[GridFunction, GridFunction]]:
    """Pairs ``(f1, f2)`` of analytic functions for the quotient decomposition."""
    z = grid.points

    def gf(x):
        return GridFunction(grid, x)

    b5 = blaschke(grid, 0.5).samples
    return {
        "1/1": (gf(np.ones(grid.n)), gf(np.ones(grid.n))),
        "z/(2-z)": (gf(z), gf(2 - z)),
        "b(0.5)/1": (gf(b5), gf(np.ones(grid.n))),
        "(3+z^2)/(b(0.5)(2+z))": (gf(3 + z ** 2), gf(b5 * (2 + z))),
        "b(-0.7)exp(z)/(z b(0.6i))": (
            gf(blaschke(grid, -0.7).samples * np.exp(z)),
            gf(z * blaschke(grid, 0.6j).samples),
        ),
        "(2+z)/(2+z)": (gf(2 + z), gf(2 + z)),
        "z^2/b(0.5)": (gf(z ** 2), gf(b5)),
        "exp(z)/(3-z^2)": (gf(np.exp(z)), gf(3 - z ** 2)),
        "b(0.5)(2+z)/(b(0.5)(3+z))": (gf(b5 * (2 + z)), gf(b5 * (3 + z))),
        "(1+z/2+z^2/4)/(z^3 b(-0.8i))": (gf(1 + z / 2 + z ** 2 / 4), gf(z ** 3 * blaschke(grid, -0.8j).samples)),
    }
