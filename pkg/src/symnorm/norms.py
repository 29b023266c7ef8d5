"""Rotationally symmetric gauge norms on grid functions.

A norm is described by a small immutable tree of ``NormSpec`` nodes and
evaluated with :func:`eval_norm`.  Fully symmetric nodes are evaluated from
the decreasing rearrangement only, so their value is exactly invariant under
any permutation of the samples.  :class:`RotationWeighted` is invariant under
the cyclic group only.

Discrete conventions
--------------------
The rearrangement ``s = f*`` is extended piecewise-constantly to ``(0, 1]``,
taking ``s[i]`` on ``(i/n, (i+1)/n]``.  With ``F(t) = int_0^t s``:

* ``KyFan(t)(f) = F(t) / t``
* ``Marcinkiewicz(u)(f) = max u(t) F(t) / t`` over ``t`` in ``{k/n} U {k/n_u}``,
  ``u`` linearly interpolated between its samples ``u(k/n_u)`` and held constant
  on ``(0, 1/n_u]``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, ClassVar, Sequence

import numpy as np

from .errors import DegenerateDecompositionError, DomainError
from .grid import Grid, GridFunction, indicator

__all__ = [
    "SymmetryClass",
    "NormSpec",
    "Lp",
    "KyFan",
    "Marcinkiewicz",
    "Combo",
    "SupFamily",
    "RotationWeighted",
    "PermutationWeighted",
    "eval_norm",
    "continuity_modulus",
    "decompose_continuous",
    "ContinuousPart",
    "spec_to_dict",
    "spec_from_dict",
    "kyfan_weights",
]

_WEIGHT_TOL = 1e-12


class SymmetryClass(enum.Enum):
    ROTATIONAL = "rotational"
    FULLY_SYMMETRIC = "fully_symmetric"


class _Magnitudes:
    """|f| with a lazily computed decreasing rearrangement, shared across a spec tree."""

    def __init__(self, mags: np.ndarray):
        self.mags = mags
        self.n = mags.shape[0]

    @cached_property
    def profile(self) -> np.ndarray:
        return self.mags[np.argsort(-self.mags, kind="stable")]

    @cached_property
    def prefix(self) -> np.ndarray:
        return np.concatenate(([0.0], np.cumsum(self.profile)))


_KINDS: dict[str, type] = {}


class NormSpec:
    """Base class of the norm tree.  Subclasses are frozen dataclasses."""

    kind: ClassVar[str] = ""

    def __init_subclass__(cls, **kw):
        super().__init_subclass__(**kw)
        if cls.kind:
            _KINDS[cls.kind] = cls

    @property
    def symmetry(self) -> SymmetryClass:
        return SymmetryClass.FULLY_SYMMETRIC

    @property
    def fully_symmetric(self) -> bool:
        return self.symmetry is SymmetryClass.FULLY_SYMMETRIC

    def check_grid(self, n: int) -> None:
        """Raise DomainError if the spec cannot act on a grid of size n."""

    def _evaluate(self, m: _Magnitudes) -> float:
        raise NotImplementedError

    def _to_dict(self) -> dict:
        raise NotImplementedError

    @classmethod
    def _from_dict(cls, d: dict) -> "NormSpec":
        raise NotImplementedError

    def __call__(self, f: GridFunction) -> float:
        return eval_norm(self, f)


def kyfan_weights(t: float, n: int) -> np.ndarray:
    """Weights ``w`` with ``KyFan(t)(g) = <w, g>`` for nonincreasing ``g >= 0``."""
    T = t * n
    k = min(int(math.floor(T)), n)
    w = np.zeros(n)
    w[:k] = 1.0
    if k < n:
        w[k] = T - k
    return w / (n * t)


@dataclass(frozen=True)
class Lp(NormSpec):
    """Normalized ``L^p`` norm, ``(mean |f|^p)^(1/p)``; ``p = inf`` gives the max."""

    p: float
    kind: ClassVar[str] = "lp"

    def __post_init__(self):
        p = float(self.p)
        if not (p >= 1.0):
            raise DomainError(f"Lp needs p >= 1, got {self.p}")
        object.__setattr__(self, "p", p)

    @property
    def conjugate_exponent(self) -> float:
        if self.p == 1.0:
            return math.inf
        if math.isinf(self.p):
            return 1.0
        return self.p / (self.p - 1.0)

    def _evaluate(self, m):
        s = m.profile
        if math.isinf(self.p):
            return float(s[0])
        if self.p == 1.0:
            return float(np.sum(s) / m.n)
        top = s[0]
        if top == 0.0:
            return 0.0
        # scale out the max to avoid overflow for large p
        return float(top * (np.sum((s / top) ** self.p) / m.n) ** (1.0 / self.p))

    def _to_dict(self):
        return {"kind": self.kind, "p": "inf" if math.isinf(self.p) else self.p}

    @classmethod
    def _from_dict(cls, d):
        return cls(math.inf if d["p"] in ("inf", "Infinity", None) else d["p"])


@dataclass(frozen=True)
class KyFan(NormSpec):
    """Average of the decreasing rearrangement over ``(0, t)``."""

    t: float
    kind: ClassVar[str] = "kyfan"

    def __post_init__(self):
        t = float(self.t)
        if not (0.0 < t <= 1.0):
            raise DomainError(f"KyFan needs t in (0, 1], got {self.t}")
        object.__setattr__(self, "t", t)

    def _evaluate(self, m):
        s, n = m.profile, m.n
        T = self.t * n
        k = min(int(math.floor(T)), n)
        total = np.sum(s[:k])
        if k < n and T > k:
            total = total + (T - k) * s[k]
        return float(total / n / self.t)

    def _to_dict(self):
        return {"kind": self.kind, "t": self.t}

    @classmethod
    def _from_dict(cls, d):
        return cls(d["t"])


@dataclass(frozen=True, eq=False)
class Marcinkiewicz(NormSpec):
    """``sup_t u(t) ||f||_t`` with ``u`` given by samples ``u(k/n_u)``, ``k = 1..n_u``."""

    u: np.ndarray
    kind: ClassVar[str] = "marcinkiewicz"

    def __post_init__(self):
        u = np.array(self.u, dtype=float).ravel()
        if u.size == 0 or not np.all(np.isfinite(u)):
            raise DomainError("u must be a nonempty finite vector")
        if np.any(u <= 0) or np.any(u > 1.0 + _WEIGHT_TOL):
            raise DomainError("u samples must lie in (0, 1]")
        if abs(u.max() - 1.0) > _WEIGHT_TOL:
            raise DomainError(f"u must attain 1, max is {u.max()!r}")
        u.setflags(write=False)
        object.__setattr__(self, "u", u)

    @classmethod
    def from_function(cls, fn: Callable[[np.ndarray], np.ndarray], n_u: int) -> "Marcinkiewicz":
        t = np.arange(1, n_u + 1) / n_u
        return cls(fn(t))

    @property
    def knots(self) -> np.ndarray:
        n_u = self.u.shape[0]
        return np.arange(1, n_u + 1) / n_u

    def breakpoints(self, n: int) -> np.ndarray:
        return np.union1d(np.arange(1, n + 1) / n, self.knots)

    def weight_at(self, t: np.ndarray) -> np.ndarray:
        return np.interp(t, self.knots, self.u)

    def _evaluate(self, m):
        n = m.n
        T = self.breakpoints(n)
        k = np.minimum(np.floor(T * n).astype(int), n)
        s_pad = np.append(m.profile, 0.0)
        F = (m.prefix[k] + (T * n - k) * s_pad[k]) / n
        return float(np.max(self.weight_at(T) * F / T))

    def __eq__(self, other):
        return isinstance(other, Marcinkiewicz) and np.array_equal(self.u, other.u)

    def __hash__(self):
        return hash((self.kind, self.u.tobytes()))

    def _to_dict(self):
        return {"kind": self.kind, "u": [float(x) for x in self.u]}

    @classmethod
    def _from_dict(cls, d):
        return cls(d["u"])


@dataclass(frozen=True)
class Combo(NormSpec):
    """Convex combination ``sum w_i alpha_i``."""

    weights: tuple
    children: tuple
    kind: ClassVar[str] = "combo"

    def __post_init__(self):
        w = tuple(float(x) for x in self.weights)
        ch = tuple(self.children)
        if len(w) != len(ch) or not ch:
            raise DomainError("combo needs equally many weights and children (at least one)")
        if any(x <= 0 for x in w) or abs(sum(w) - 1.0) > _WEIGHT_TOL:
            raise DomainError("combo weights must be positive and sum to 1")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "children", ch)

    @property
    def symmetry(self):
        return _meet(self.children)

    def check_grid(self, n):
        for c in self.children:
            c.check_grid(n)

    def _evaluate(self, m):
        return float(sum(w * c._evaluate(m) for w, c in zip(self.weights, self.children)))

    def _to_dict(self):
        return {"kind": self.kind, "weights": list(self.weights),
                "children": [c._to_dict() for c in self.children]}

    @classmethod
    def _from_dict(cls, d):
        return cls(d["weights"], [spec_from_dict(c) for c in d["children"]])


@dataclass(frozen=True)
class SupFamily(NormSpec):
    """Pointwise maximum of a family of gauge norms."""

    children: tuple
    kind: ClassVar[str] = "sup"

    def __post_init__(self):
        ch = tuple(self.children)
        if not ch:
            raise DomainError("sup family needs at least one child")
        object.__setattr__(self, "children", ch)

    @property
    def symmetry(self):
        return _meet(self.children)

    def check_grid(self, n):
        for c in self.children:
            c.check_grid(n)

    def _evaluate(self, m):
        return float(max(c._evaluate(m) for c in self.children))

    def _to_dict(self):
        return {"kind": self.kind, "children": [c._to_dict() for c in self.children]}

    @classmethod
    def _from_dict(cls, d):
        return cls([spec_from_dict(c) for c in d["children"]])


def _weight_vector(h) -> np.ndarray:
    if isinstance(h, GridFunction):
        if np.any(np.abs(h.samples.imag) > 0):
            raise DomainError("weight function must be real")
        h = h.samples.real
    h = np.array(h, dtype=float).ravel()
    if h.size < 2 or not np.all(np.isfinite(h)) or np.any(h < 0):
        raise DomainError("weight function must be finite and nonnegative")
    if abs(h.mean() - 1.0) > _WEIGHT_TOL:
        raise DomainError(f"weight function must have mean 1, got {h.mean()!r}")
    h.setflags(write=False)
    return h


class _Weighted(NormSpec):
    def check_grid(self, n):
        if self.h.shape[0] != n:
            raise DomainError(f"weight has {self.h.shape[0]} samples, grid has {n}")

    def __eq__(self, other):
        return type(self) is type(other) and np.array_equal(self.h, other.h)

    def __hash__(self):
        return hash((self.kind, self.h.tobytes()))

    def _to_dict(self):
        return {"kind": self.kind, "h": [float(x) for x in self.h]}

    @classmethod
    def _from_dict(cls, d):
        h = d["h"]
        if isinstance(h, dict):
            from .io import gridfunction_from_dict
            h = gridfunction_from_dict(h)
        return cls(h)


@dataclass(frozen=True, eq=False)
class RotationWeighted(_Weighted):
    """``max_r mean(|f(z_{k-r})| h(z_k))``: exact max over the ``n`` rotations."""

    h: np.ndarray
    kind: ClassVar[str] = "rotation_weighted"

    def __post_init__(self):
        object.__setattr__(self, "h", _weight_vector(self.h))

    @property
    def symmetry(self):
        return SymmetryClass.ROTATIONAL

    def rotation_values(self, mags: np.ndarray) -> np.ndarray:
        n = mags.shape[0]
        idx = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
        # each row holds the same products in the same order for every rotation
        # of the input, which keeps the max exactly rotation invariant
        return (mags[idx] * self.h).sum(axis=1) / n

    def _evaluate(self, m):
        return float(np.max(self.rotation_values(m.mags)))


@dataclass(frozen=True, eq=False)
class PermutationWeighted(_Weighted):
    """``mean(f* h*)``, the sup over all index permutations."""

    h: np.ndarray
    kind: ClassVar[str] = "permutation_weighted"

    def __post_init__(self):
        object.__setattr__(self, "h", _weight_vector(self.h))

    @cached_property
    def profile(self) -> np.ndarray:
        return -np.sort(-self.h)

    def _evaluate(self, m):
        return float(np.sum(m.profile * self.profile) / m.n)


def _meet(children) -> SymmetryClass:
    if all(c.fully_symmetric for c in children):
        return SymmetryClass.FULLY_SYMMETRIC
    return SymmetryClass.ROTATIONAL


def eval_norm(spec: NormSpec, f: GridFunction) -> float:
    """Evaluate the gauge norm ``spec`` at ``f``."""
    spec.check_grid(f.n)
    return spec._evaluate(_Magnitudes(np.abs(f.samples)))


def eval_magnitudes(spec: NormSpec, mags: np.ndarray) -> float:
    """Evaluate at a nonnegative real vector without wrapping it in a GridFunction."""
    mags = np.asarray(mags, dtype=float)
    spec.check_grid(mags.shape[0])
    return spec._evaluate(_Magnitudes(np.abs(mags)))


def continuity_modulus(spec: NormSpec, grid: Grid) -> float:
    """Smallest norm of a nonempty indicator, i.e. of a single grid point."""
    spec.check_grid(grid.n)
    if spec.fully_symmetric:
        return eval_norm(spec, indicator(grid, [0]))
    return min(eval_norm(spec, indicator(grid, [k])) for k in range(grid.n))


@dataclass(frozen=True)
class ContinuousPart:
    """The continuous norm ``beta`` with ``alpha = (1 - t) beta + t ||.||_inf``."""

    spec: NormSpec
    t: float

    def __call__(self, f: GridFunction) -> float:
        return (eval_norm(self.spec, f) - self.t * float(np.max(np.abs(f.samples)))) / (1.0 - self.t)

    def reconstruct(self, f: GridFunction) -> float:
        return (1.0 - self.t) * self(f) + self.t * float(np.max(np.abs(f.samples)))


def decompose_continuous(spec: NormSpec, grid: Grid) -> tuple[float, ContinuousPart]:
    """Split a fully symmetric norm into its sup-norm part and a continuous remainder."""
    if not spec.fully_symmetric:
        raise DomainError("decomposition needs a fully symmetric norm")
    t = continuity_modulus(spec, grid)
    if t >= 1.0:
        raise DegenerateDecompositionError("norm coincides with the sup norm on this grid")
    return t, ContinuousPart(spec, t)


def spec_to_dict(spec: NormSpec) -> dict:
    return spec._to_dict()


def spec_from_dict(d: dict) -> NormSpec:
    kind = d.get("kind") if isinstance(d, dict) else None
    if kind not in _KINDS:
        from . import duality  # noqa: F401  registers the "dual" kind
    if kind not in _KINDS:
        raise DomainError(f"unknown norm kind {kind!r}")
    try:
        return _KINDS[kind]._from_dict(d)
    except (KeyError, TypeError) as exc:
        raise DomainError(f"malformed {kind} spec: {exc}") from exc


def sup_norm(f: GridFunction) -> float:
    return float(np.max(np.abs(f.samples)))


def l1_norm(f: GridFunction) -> float:
    return float(np.mean(np.abs(f.samples)))
