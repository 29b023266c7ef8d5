"""Linear programs over gauge-norm unit balls.

The unit ball ``{g >= 0 : alpha(g) <= 1}`` is written in epigraph form: every
node of the spec tree gets a variable ``tau`` bounding its value, and the root
``tau`` is capped at 1.  Two formulations are supported.

``cone``
    ``g`` is constrained to be nonincreasing.  Fully symmetric polyhedral
    norms are then linear (Ky Fan, weighted rearrangement) or a max of linear
    pieces (Marcinkiewicz), one row per piece.
``orthant``
    ``g`` is any nonnegative vector.  Ky Fan blocks use the standard
    top-``k``-sum formulation with a free threshold ``lam`` and slacks
    ``mu_i >= g_i - lam``; rotation-weighted norms give one row per rotation.

Nodes with no finite description (``L^p`` for ``1 < p < inf``, dual norms)
are handled by supporting hyperplanes ``tau >= <s, g>`` added lazily at the
current iterate.  Every cut is valid on the whole orthant, so the LP value is
an upper bound and the rescaled iterate ``g / alpha(g)`` a feasible lower
bound; their difference is the reported gap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog
from scipy.sparse import csr_matrix

from .norms import (
    Combo,
    KyFan,
    Lp,
    Marcinkiewicz,
    NormSpec,
    PermutationWeighted,
    RotationWeighted,
    SupFamily,
    eval_magnitudes,
    kyfan_weights,
)

_HIGHS = {"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10}


def subgradient(spec: NormSpec, g: np.ndarray) -> tuple[float, np.ndarray]:
    """Value and a supporting vector ``s`` (``alpha(x) >= <s, x>`` for ``x >= 0``) at ``g``."""
    n = g.shape[0]
    if isinstance(spec, Lp) and 1.0 < spec.p < math.inf:
        val = eval_magnitudes(spec, g)
        if val == 0.0:
            return 0.0, np.full(n, 1.0 / n)
        return val, (g / val) ** (spec.p - 1.0) / n
    support = getattr(spec, "support", None)
    if support is None:
        raise TypeError(f"no supporting hyperplanes for {type(spec).__name__}")
    return support(g)


class _Model:
    def __init__(self, n: int, mode: str):
        self.n = n
        self.mode = mode
        self.lb: list[float] = [0.0] * n
        self.ub: list[float] = [float(n)] * n
        self.rows: list[tuple[np.ndarray, np.ndarray]] = []
        self.leaves: list[tuple[NormSpec, int]] = []

    def var(self, lb=0.0, ub=None) -> int:
        self.lb.append(lb)
        self.ub.append(ub)
        return len(self.lb) - 1

    def row(self, idx, vals) -> None:
        self.rows.append((np.asarray(idx, dtype=int), np.asarray(vals, dtype=float)))

    def linear(self, w: np.ndarray, tau: int) -> None:
        nz = np.flatnonzero(w)
        self.row(np.append(nz, tau), np.append(w[nz], -1.0))

    def kyfan_block(self, t: float, scale: float, tau: int) -> None:
        # scale * (lam + sum(mu) / (t n)) <= tau,  mu_i >= g_i - lam
        n = self.n
        lam = self.var(lb=None)
        mu = [self.var() for _ in range(n)]
        for i in range(n):
            self.row([i, lam, mu[i]], [1.0, -1.0, -1.0])
        self.row([lam, *mu, tau], [scale] + [scale / (t * n)] * n + [-1.0])

    def build(self, spec: NormSpec) -> int:
        tau = self.var()
        n = self.n
        if isinstance(spec, Combo):
            kids = [self.build(c) for c in spec.children]
            self.row(kids + [tau], list(spec.weights) + [-1.0])
        elif isinstance(spec, SupFamily):
            for c in spec.children:
                self.row([self.build(c), tau], [1.0, -1.0])
        elif isinstance(spec, Lp) and spec.p == 1.0:
            self.linear(np.full(n, 1.0 / n), tau)
        elif isinstance(spec, Lp) and math.isinf(spec.p):
            if self.mode == "cone":
                self.row([0, tau], [1.0, -1.0])
            else:
                for i in range(n):
                    self.row([i, tau], [1.0, -1.0])
        elif isinstance(spec, KyFan):
            if self.mode == "cone":
                self.linear(kyfan_weights(spec.t, n), tau)
            else:
                self.kyfan_block(spec.t, 1.0, tau)
        elif isinstance(spec, Marcinkiewicz):
            T = spec.breakpoints(n)
            for t, u in zip(T, spec.weight_at(T)):
                if self.mode == "cone":
                    self.linear(u * kyfan_weights(t, n), tau)
                else:
                    self.kyfan_block(t, u, tau)
        elif isinstance(spec, PermutationWeighted):
            if self.mode == "cone":
                self.linear(spec.profile / n, tau)
            else:
                # mean(g* h*) = sum_k c_k KyFan(k/n)(g), c_k = (h*_{k-1} - h*_k) k / n
                hs = np.append(spec.profile, 0.0)
                idx, vals = [tau], [-1.0]
                for k in range(1, n + 1):
                    c = (hs[k - 1] - hs[k]) * k / n
                    if c > 0:
                        sub = self.var()
                        self.kyfan_block(k / n, 1.0, sub)
                        idx.append(sub)
                        vals.append(c)
                self.row(idx, vals)
        elif isinstance(spec, RotationWeighted):
            if self.mode == "cone":
                raise ValueError("rotation-weighted norms need the orthant formulation")
            j = np.arange(n)
            for r in range(n):
                self.linear(spec.h[(j + r) % n] / n, tau)
        else:
            self.leaves.append((spec, tau))
        return tau

    def matrix(self):
        data, ri, ci = [], [], []
        for k, (idx, vals) in enumerate(self.rows):
            data.append(vals)
            ci.append(idx)
            ri.append(np.full(idx.shape[0], k))
        A = csr_matrix(
            (np.concatenate(data), (np.concatenate(ri), np.concatenate(ci))),
            shape=(len(self.rows), len(self.lb)),
        )
        return A


@dataclass
class BallSolution:
    value: float
    witness: np.ndarray
    gap: float
    iterations: int
    cuts: int
    polyhedral: bool


def maximize_over_ball(spec: NormSpec, c: np.ndarray, mode: str, tol: float = 1e-8,
                       max_iter: int | None = None, seeds=()) -> BallSolution:
    """Maximize ``mean(c * g)`` over ``g >= 0`` with ``spec(g) <= 1`` (nonincreasing ``g`` in cone mode)."""
    n = c.shape[0]
    model = _Model(n, mode)
    root = model.build(spec)
    model.ub[root] = 1.0
    # ||g||_1 <= alpha(g) holds for every gauge norm
    model.linear(np.full(n, 1.0 / n), root)
    if mode == "cone":
        for i in range(n - 1):
            model.row([i, i + 1], [-1.0, 1.0])
    polyhedral = not model.leaves
    best_val, best_g = -1.0, None
    for leaf, tau in model.leaves:
        starts = [np.ones(n), c, *seeds]
        if isinstance(leaf, Lp):
            # Hölder maximizer of the leaf on its own
            starts.append(c ** (1.0 / (leaf.p - 1.0)))
        for s0 in starts:
            s0 = np.asarray(s0, dtype=float)
            if mode == "cone":
                s0 = np.maximum.accumulate(s0[::-1])[::-1]
            _, s = subgradient(leaf, s0)
            model.linear(s, tau)
            # each start, scaled into the ball, is also a feasible lower bound
            a0 = eval_magnitudes(spec, s0)
            if a0 > 0:
                v0 = float(np.dot(c, s0) / n / a0)
                if v0 > best_val:
                    best_val, best_g = v0, s0 / a0

    obj = np.zeros(len(model.lb))
    obj[:n] = -c / n
    max_iter = max_iter or 200 * n
    upper = math.inf
    cuts = 0
    it = 0
    for it in range(1, max_iter + 1):
        A = model.matrix()
        nv = len(model.lb)
        cvec = np.zeros(nv)
        cvec[:n] = obj[:n]
        res = linprog(cvec, A_ub=A, b_ub=np.zeros(A.shape[0]),
                      bounds=list(zip(model.lb, model.ub)), method="highs", options=_HIGHS)
        if res.status != 0:
            raise RuntimeError(f"LP solve failed: {res.message}")
        x = res.x
        g = np.clip(x[:n], 0.0, None)
        if mode == "cone":
            g = np.maximum.accumulate(g[::-1])[::-1]
        upper = min(upper, -res.fun + _lp_gap(res, model))
        a = eval_magnitudes(spec, g)
        scaled = g / max(a, 1.0)
        val = float(np.dot(c, scaled) / n)
        if val > best_val:
            best_val, best_g = val, scaled
        if upper - best_val <= tol * max(best_val, 1e-300) or a <= 1.0 + 1e-12:
            break
        added = 0
        for leaf, tau in model.leaves:
            v, s = subgradient(leaf, g)
            if v > x[tau] * (1.0 + 1e-12) + 1e-15:
                model.linear(s, tau)
                added += 1
        cuts += added
        if not added:
            break
    return BallSolution(best_val, best_g, max(upper - best_val, 0.0), it, cuts, polyhedral)


def _lp_gap(res, model: _Model) -> float:
    # HiGHS marginals give the dual objective; bounds at 0 contribute nothing
    dual = 0.0
    ub = np.array([np.inf if u is None else u for u in model.ub])
    fin = np.isfinite(ub)
    dual += float(np.dot(ub[fin], res.upper.marginals[fin]))
    return abs(float(res.fun) - dual)
