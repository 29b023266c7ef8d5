"""Dual norms and the pairing ``mean(f g)``.

For a fully symmetric norm the dual is evaluated over nonincreasing
nonnegative ``g`` against the rearrangement of ``|f|`` (the rearrangement
inequality makes this exact).  Rotation-only norms are maximized over the
whole nonnegative orthant.  See :mod:`symnorm._lp` for the formulations.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import ClassVar

import numpy as np

from . import _lp
from .errors import DomainError
from .grid import GridFunction, rearrange
from .norms import Lp, NormSpec, SymmetryClass, eval_magnitudes, eval_norm, spec_from_dict

__all__ = [
    "DualMethod",
    "DualEvaluation",
    "DualNorm",
    "BidualResult",
    "pairing",
    "dual_norm",
    "bidual_check",
    "hardy_lower_bound",
    "multiplication_operator_norm",
]

DUAL_TOL = 1e-8


class DualMethod(enum.Enum):
    CLOSED_FORM = "closed_form"
    LP = "lp"
    CUTTING_PLANE = "cutting_plane"


@dataclass(frozen=True, eq=False)
class DualEvaluation:
    value: float
    witness: GridFunction
    gap: float
    method: DualMethod
    iterations: int = 0

    @property
    def certified(self) -> bool:
        return self.gap <= DUAL_TOL * max(1.0, self.value)


def pairing(f: GridFunction, g: GridFunction) -> complex:
    """``mean(f * g)``, the integral of the product against arc length."""
    if f.n != g.n:
        raise DomainError(f"grid mismatch: {f.n} vs {g.n}")
    return complex(np.mean(f.samples * g.samples))


@dataclass(frozen=True)
class DualNorm(NormSpec):
    """The dual norm ``sup{mean|f h| : inner(h) <= 1}`` as a spec node."""

    inner: NormSpec
    kind: ClassVar[str] = "dual"

    @property
    def symmetry(self) -> SymmetryClass:
        return self.inner.symmetry

    def check_grid(self, n):
        self.inner.check_grid(n)

    def _evaluate(self, m):
        return _dual_magnitudes(self.inner, m.mags)[0]

    def support(self, g: np.ndarray):
        value, witness, *_ = _dual_magnitudes(self.inner, g)
        return value, witness / g.shape[0]

    def _to_dict(self):
        return {"kind": self.kind, "of": self.inner._to_dict()}

    @classmethod
    def _from_dict(cls, d):
        return cls(spec_from_dict(d["of"]))


def _closed_form_dual(spec: NormSpec):
    """The ``L^q`` norm that is dual to ``spec``, when there is one."""
    if isinstance(spec, Lp):
        return spec.conjugate_exponent
    if isinstance(spec, DualNorm) and isinstance(spec.inner, Lp):
        return spec.inner.p
    return None


def _lq_dual(q: float, a: np.ndarray):
    n = a.shape[0]
    if math.isinf(q):
        k = int(np.argmax(a))
        w = np.zeros(n)
        w[k] = n
        return float(a[k]), w
    if q == 1.0:
        return float(np.sum(a) / n), np.ones(n)
    val = eval_magnitudes(Lp(q), a)
    return val, (a / val) ** (q - 1.0)


def _dual_magnitudes(spec: NormSpec, a: np.ndarray, tol: float = DUAL_TOL, max_iter=None):
    """Dual norm at the nonnegative vector ``a``: (value, witness, gap, method, iterations)."""
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    spec.check_grid(n)
    if not np.any(a > 0):
        return 0.0, np.ones(n), 0.0, DualMethod.CLOSED_FORM, 0
    q = _closed_form_dual(spec)
    if q is not None:
        val, w = _lq_dual(q, a)
        return val, w, 0.0, DualMethod.CLOSED_FORM, 0
    if spec.fully_symmetric:
        perm = np.argsort(-a, kind="stable")
        prof = a[perm]
        seeds = [np.arange(n) < k for k in range(1, n + 1)]
        sol = _lp.maximize_over_ball(spec, prof, "cone", tol=tol, max_iter=max_iter, seeds=seeds)
        w = np.empty(n)
        w[perm] = sol.witness
    else:
        order = np.argsort(-a, kind="stable")
        seeds = []
        for k in range(1, n + 1):
            s = np.zeros(n)
            s[order[:k]] = 1.0
            seeds.append(s)
        sol = _lp.maximize_over_ball(spec, a, "orthant", tol=tol, max_iter=max_iter, seeds=seeds)
        w = sol.witness
    method = DualMethod.LP if sol.polyhedral else DualMethod.CUTTING_PLANE
    return sol.value, w, sol.gap, method, sol.iterations


def dual_norm(spec: NormSpec, f: GridFunction, tol: float = DUAL_TOL,
              max_iter: int | None = None) -> DualEvaluation:
    """Evaluate ``sup{mean|f h| : spec(h) <= 1}`` with a maximizing ``h``.

    ``L^p`` norms use Hölder's closed form.  Polyhedral norms are solved
    exactly as one LP; anything else goes through supporting-hyperplane cuts
    with the remaining upper/lower bound difference reported as ``gap``.
    Check ``certified`` before trusting a cutting-plane value.
    """
    val, w, gap, method, it = _dual_magnitudes(spec, np.abs(f.samples), tol, max_iter)
    return DualEvaluation(val, GridFunction(f.grid, w), gap, method, it)


@dataclass(frozen=True)
class BidualResult:
    alpha: float
    alpha_bidual: float
    relative_gap: float
    certified: bool


def bidual_check(spec: NormSpec, f: GridFunction) -> BidualResult:
    """Compare ``alpha(f)`` with the dual of the dual, evaluated by two nested dual solves."""
    alpha = eval_norm(spec, f)
    ev = dual_norm(DualNorm(spec), f)
    rel = abs(ev.value - alpha) / alpha if alpha > 0 else abs(ev.value)
    return BidualResult(alpha, ev.value, rel, ev.certified)


def hardy_lower_bound(spec: NormSpec, f: GridFunction, trials: int = 32, seed: int = 0,
                      eps: float = 1e-3) -> float:
    """Lower bound for ``alpha(f)`` by pairing with analytic multipliers from the dual ball.

    Each trial takes a nonnegative simple function ``phi`` scaled to dual
    norm one, smooths it to ``(phi + eps) / (1 + eps)`` and uses the outer
    function with that modulus.  Trial 0 is ``phi = 1``; the next ones are
    the level-set indicators of ``|f|``; the rest are random step functions
    on arcs.  The bound never exceeds ``alpha(f)`` by Hölder.
    """
    from .hardy import _require_member, outer_from_modulus

    _require_member(f, 1e-8, "input")
    n = f.n
    rng = np.random.default_rng(seed)
    mags = np.abs(f.samples)
    order = np.argsort(-mags, kind="stable")
    candidates = [np.ones(n)]
    for k in (1, 2, 4, 8, n // 4, n // 2):
        if k < n:
            c = np.zeros(n)
            c[order[:k]] = 1.0
            candidates.append(c)
    while len(candidates) < max(trials, 1):
        m = int(rng.integers(1, 6))
        cuts = np.sort(rng.choice(n, size=m, replace=False))
        arc = (np.searchsorted(cuts, np.arange(n), side="right") - 1) % m
        candidates.append(rng.exponential(size=m)[arc])
    best = 0.0
    for phi in candidates[: max(trials, 1)]:
        ev = _dual_magnitudes(spec, phi)
        scale = ev[0] + ev[2]
        phi = phi / scale
        phi_eps = (phi + eps) / (1.0 + eps)
        h = outer_from_modulus(GridFunction(f.grid, phi_eps))
        best = max(best, float(np.mean(np.abs(f.samples * h.samples))))
    return best


def multiplication_operator_norm(f: GridFunction, spec: NormSpec, tol: float = DUAL_TOL) -> float:
    """Norm of ``g -> f g`` from the ``spec`` ball into ``L^1``, maximized over all ``g >= 0``.

    Unlike :func:`dual_norm` this never rearranges: the ball is written out
    over the full orthant.
    """
    sol = _lp.maximize_over_ball(spec, np.abs(f.samples), "orthant", tol=tol)
    return sol.value
