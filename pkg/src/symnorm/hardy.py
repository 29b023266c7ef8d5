"""Hardy-space tools on the circle grid.

Membership in the Hardy space is read off the Fourier coefficients.  Outer
functions are built from a boundary modulus with the Herglotz construction
``exp(L + i L~)``, ``L = log phi``, where ``L~`` is the harmonic conjugate.
Inner-outer factorization divides ``f`` by the outer function with modulus
``|f|`` and certifies the quotient: it must be unimodular and analytic to
within the declared tolerance, otherwise the result reports failure.

Log of a vanishing modulus is undefined; samples below ``1e-12 * max`` are
clamped to that floor before taking the log, and the result records it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .fourier import conjugate_function, frequencies, to_fourier
from .grid import Grid, GridFunction, indicator
from .norms import NormSpec, eval_norm

__all__ = [
    "Membership",
    "OuterTest",
    "FactorizationResult",
    "FactorizationError",
    "DivisionReport",
    "SubspaceComparison",
    "MultiplierNorm",
    "SmirnovDecomposition",
    "hardy_membership",
    "outer_from_modulus",
    "central_value",
    "inner_outer_factor",
    "is_outer",
    "outer_division_check",
    "subspace_angle",
    "beurling_check",
    "multiplier_norm",
    "smirnov_decompose",
    "blaschke",
]

CLAMP_REL = 1e-12
FACTOR_TOL = 1e-6
OUTER_TOL = 1e-6


class FactorizationError(DomainError):
    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


@dataclass(frozen=True)
class Membership:
    member: bool
    negative_magnitude: float

    def __bool__(self):
        return self.member


@dataclass(frozen=True)
class OuterTest:
    outer: bool
    jensen_defect: float

    def __bool__(self):
        return self.outer


def blaschke(grid: Grid, a: complex) -> GridFunction:
    """Samples of ``(z - a) / (1 - conj(a) z)``."""
    if abs(a) >= 1:
        raise DomainError("Blaschke zero must lie inside the unit disk")
    z = grid.points
    return GridFunction(grid, (z - a) / (1 - np.conj(a) * z))


def hardy_membership(f: GridFunction, tol: float = 1e-8) -> Membership:
    """True when every negative-frequency coefficient is below ``tol`` times the largest one."""
    c = np.abs(to_fourier(f).coeffs)
    top = float(c.max())
    neg = float(c[frequencies(f.n) < 0].max())
    if top == 0.0:
        return Membership(True, 0.0)
    return Membership(neg <= tol * top, neg)


def _require_member(f: GridFunction, tol: float, what: str) -> None:
    m = hardy_membership(f, tol)
    if not m:
        raise DomainError(
            f"{what} is not in the Hardy space (negative coefficient {m.negative_magnitude:.3g})"
        )


def _log_modulus(phi: np.ndarray) -> tuple[np.ndarray, bool]:
    phi = np.asarray(phi, dtype=float)
    top = float(np.max(phi)) if phi.size else 0.0
    if not top > 0.0:
        raise DomainError("modulus vanishes identically")
    floor = CLAMP_REL * top
    clamped = bool(np.any(phi <= floor))
    return np.log(np.maximum(phi, floor)), clamped


def _modulus_samples(phi) -> np.ndarray:
    if isinstance(phi, GridFunction):
        s = phi.samples
        if np.any(np.abs(s.imag) > 0):
            raise DomainError("modulus must be real")
        return s.real
    return np.asarray(phi, dtype=float)


def _outer(grid: Grid, phi: np.ndarray) -> tuple[GridFunction, bool]:
    L, clamped = _log_modulus(phi)
    Lf = GridFunction(grid, L)
    harmonic = L + 1j * conjugate_function(Lf).samples.real
    return GridFunction(grid, np.exp(harmonic)), clamped


def outer_from_modulus(phi: GridFunction) -> GridFunction:
    """Outer function whose modulus on the grid is ``phi``.

    Nonpositive samples are clamped to ``1e-12 * max(phi)``; use
    :func:`inner_outer_factor` when the clamp needs to be reported.
    """
    h, _ = _outer(phi.grid, _modulus_samples(phi))
    return h


def central_value(h: GridFunction) -> complex:
    """Value at the disk center of the analytic extension, i.e. the mean coefficient."""
    return complex(np.mean(h.samples))


@dataclass(frozen=True, eq=False)
class FactorizationResult:
    inner: GridFunction
    outer: GridFunction
    unimodularity_residual: float
    reconstruction_residual: float
    analyticity_residual: float
    jensen_defect: float
    log_clamp_applied: bool
    tolerance: float = FACTOR_TOL

    @property
    def success(self) -> bool:
        return (
            self.unimodularity_residual <= self.tolerance
            and self.reconstruction_residual <= self.tolerance
            and self.analyticity_residual <= self.tolerance
            and self.jensen_defect <= self.tolerance
        )


def inner_outer_factor(f: GridFunction, tol: float = FACTOR_TOL) -> FactorizationResult:
    """Factor ``f = inner * outer``.

    ``analyticity_residual`` is the largest negative-frequency coefficient of
    the inner factor.  Zeros on or very near the circle, and singular inner
    content, show up there and make ``success`` false.
    """
    _require_member(f, 1e-8, "input")
    mags = np.abs(f.samples)
    if float(mags.max()) == 0.0:
        raise DomainError("cannot factor the zero function")
    outer, clamped = _outer(f.grid, mags)
    inner = GridFunction(f.grid, f.samples / outer.samples)
    top = float(mags.max())
    neg = float(np.abs(to_fourier(inner).coeffs)[frequencies(f.n) < 0].max())
    return FactorizationResult(
        inner=inner,
        outer=outer,
        unimodularity_residual=float(np.max(np.abs(np.abs(inner.samples) - 1.0))),
        reconstruction_residual=float(np.max(np.abs(inner.samples * outer.samples - f.samples)) / top),
        analyticity_residual=neg,
        jensen_defect=_jensen_defect(outer),
        log_clamp_applied=clamped,
        tolerance=tol,
    )


def _jensen_defect(g: GridFunction) -> float:
    c0 = abs(central_value(g))
    if c0 <= 1e-14 * float(np.max(np.abs(g.samples))):
        return math.inf
    L, _ = _log_modulus(np.abs(g.samples))
    return float(np.mean(L) - math.log(c0))


def is_outer(g: GridFunction, tol: float = OUTER_TOL, member_tol: float = 1e-4) -> OuterTest:
    """Jensen test: ``g`` is outer when ``mean log|g| == log|g(0)|``.

    The defect ``mean log|g| - log|g(0)|`` is nonnegative for analytic ``g``;
    for a Blaschke factor ``B`` it equals ``-log|B(0)|``.  A vanishing central
    value gives an infinite defect.

    ``member_tol`` only screens out inputs that are clearly not analytic.  It
    is looser than the factorization gate because a zero at radius ``rho``
    folds about ``rho^(n/2)`` into the negative frequencies (about ``1e-6``
    for ``rho = 0.9`` at ``n = 256``) without moving the defect.
    """
    _require_member(g, member_tol, "argument")
    defect = _jensen_defect(g)
    return OuterTest(defect <= tol, defect)


@dataclass(frozen=True, eq=False)
class DivisionReport:
    quotient: GridFunction
    alpha: float
    member: bool
    negative_magnitude: float


def outer_division_check(f: GridFunction, g: GridFunction, spec: NormSpec,
                         tol: float = 1e-8) -> DivisionReport:
    """Divide by an outer ``g`` and report whether the quotient stays analytic."""
    _require_member(f, tol, "numerator")
    _require_member(g, tol, "denominator")
    mags = np.abs(g.samples)
    if float(mags.min()) <= CLAMP_REL * float(mags.max()):
        raise DomainError("denominator vanishes on the grid")
    test = is_outer(g)
    if not test:
        raise DomainError(f"denominator is not outer (Jensen defect {test.jensen_defect:.3g})")
    q = f / g
    m = hardy_membership(q, tol)
    return DivisionReport(q, eval_norm(spec, q), m.member, m.negative_magnitude)


@dataclass(frozen=True, eq=False)
class SubspaceComparison:
    truncation: int
    principal_angle: float
    generator_inner: GridFunction


def subspace_angle(f: GridFunction, phi: GridFunction, K: int) -> float:
    """Largest angle from ``span{z^k f : k < K}`` into ``phi * span{z^k : 0 <= k < n/2}``.

    Equivalently the largest principal angle between the first span and its
    orthogonal projection onto the second, both ``K``-dimensional.  Computed
    from the sine of the angle, so small angles are resolved to roundoff.
    """
    n = f.n
    if not 1 <= K <= n // 4:
        raise DomainError(f"truncation K must lie in [1, n/4], got {K}")
    z = f.grid.points
    A = np.stack([z ** k * f.samples for k in range(K)], axis=1)
    Qa, _ = np.linalg.qr(A)
    # |phi| = 1 on the grid, so these columns are orthogonal with norm sqrt(n)
    B = np.stack([z ** k * phi.samples for k in range(n // 2)], axis=1)
    B = B / np.linalg.norm(B, axis=0)
    Qb, _ = np.linalg.qr(B)
    R = Qa - Qb @ (Qb.conj().T @ Qa)
    s = float(np.linalg.norm(R, 2))
    return math.asin(min(s, 1.0))


def beurling_check(f: GridFunction, K: int) -> SubspaceComparison:
    """Check that the shifts of ``f`` lie in ``phi H`` for the inner factor ``phi`` of ``f``."""
    res = inner_outer_factor(f)
    if not res.success:
        raise FactorizationError("factorization failed", res)
    return SubspaceComparison(K, subspace_angle(f, res.inner, K), res.inner)


@dataclass(frozen=True)
class MultiplierNorm:
    norm: float
    index: int
    ratio: float

    @property
    def certified(self) -> bool:
        return abs(self.ratio - self.norm) <= 1e-12 * max(1.0, self.norm)


def multiplier_norm(psi: GridFunction, spec: NormSpec) -> MultiplierNorm:
    """Operator norm of multiplication by ``psi`` on the ``spec``-normed space.

    It equals ``max |psi|``.  The singleton indicator at the maximizing
    index attains the ratio, which is evaluated and returned as the
    certificate.
    """
    mags = np.abs(psi.samples)
    k = int(np.argmax(mags))
    e = indicator(psi.grid, [k])
    ratio = eval_norm(spec, psi * e) / eval_norm(spec, e)
    return MultiplierNorm(float(mags[k]), k, float(ratio))


@dataclass(frozen=True, eq=False)
class SmirnovDecomposition:
    u: GridFunction
    v: GridFunction
    a: GridFunction
    b: GridFunction
    partition_residual: float
    reconstruction_residual: float
    unimodularity_residual: float
    outer_defect: float


def smirnov_decompose(f1: GridFunction, f2: GridFunction) -> SmirnovDecomposition:
    """Write ``f1 / f2 = v b / (u a)`` with ``u, v`` inner, ``a, b`` outer and ``|a| + |b| = 1``.

    ``f1 = v g1`` and ``f2 = u g2`` are inner-outer factorizations; ``psi`` is
    the outer function with modulus ``|f1| + |f2|``, and ``b = g1 / psi``,
    ``a = g2 / psi``.  Common inner factors of ``u`` and ``v`` are not
    cancelled.
    """
    for f, name in ((f1, "numerator"), (f2, "denominator")):
        _require_member(f, 1e-8, name)
        if float(np.max(np.abs(f.samples))) == 0.0:
            raise DomainError(f"{name} vanishes identically")
    r1 = inner_outer_factor(f1)
    r2 = inner_outer_factor(f2)
    for r, name in ((r1, "numerator"), (r2, "denominator")):
        if not r.success:
            raise FactorizationError(f"{name} factorization failed", r)
    psi = outer_from_modulus(GridFunction(f1.grid, np.abs(f1.samples) + np.abs(f2.samples)))
    v, u = r1.inner, r2.inner
    b = r1.outer / psi
    a = r2.outer / psi
    phi = f1.samples / f2.samples
    recon = v.samples * b.samples / (u.samples * a.samples)
    return SmirnovDecomposition(
        u=u, v=v, a=a, b=b,
        partition_residual=float(np.max(np.abs(np.abs(a.samples) + np.abs(b.samples) - 1.0))),
        reconstruction_residual=float(np.max(np.abs(recon - phi)) / np.max(np.abs(phi))),
        unimodularity_residual=max(r1.unimodularity_residual, r2.unimodularity_residual),
        outer_defect=max(_jensen_defect(a), _jensen_defect(b)),
    )
