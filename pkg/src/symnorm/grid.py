"""Uniform sampling of the unit circle.

The grid of size ``n`` consists of the n-th roots of unity ``z_k = exp(2 pi i k / n)``,
each carrying mass ``1/n``.  Rotation by ``r`` grid steps is then an exact symmetry
of the measure, and the discrete Fourier transform is exact on trigonometric
polynomials of degree below ``n/2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError

__all__ = [
    "Grid",
    "GridFunction",
    "VectorGridFunction",
    "RearrangedProfile",
    "make_grid",
    "rotate",
    "permute",
    "rearrange",
    "pointwise_magnitude",
    "constant",
    "monomial",
    "indicator",
    "from_callable",
]


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class Grid:
    n: int

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)):
            raise DomainError(f"grid size must be an integer, got {self.n!r}")
        if self.n < 2 or not _is_power_of_two(int(self.n)):
            raise DomainError(f"grid size must be a power of two >= 2, got {self.n}")
        object.__setattr__(self, "n", int(self.n))

    @property
    def points(self) -> np.ndarray:
        """The sample points ``z_k`` as a complex array."""
        k = np.arange(self.n)
        return np.exp(2j * np.pi * k / self.n)

    @property
    def weight(self) -> float:
        return 1.0 / self.n

    @property
    def measure(self) -> float:
        # n * (1/n) is exact for powers of two
        return self.n * self.weight


def make_grid(n: int) -> Grid:
    """Return the uniform grid with ``n`` points; ``n`` must be a power of two."""
    return Grid(n)


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Complex samples of a function on the circle grid."""

    grid: Grid
    samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=complex)
        if s.ndim != 1 or s.shape[0] != self.grid.n:
            raise DomainError(
                f"expected {self.grid.n} samples, got shape {np.shape(self.samples)}"
            )
        if not np.all(np.isfinite(s)):
            raise DomainError("samples must be finite")
        object.__setattr__(self, "samples", _frozen(s))

    @property
    def n(self) -> int:
        return self.grid.n

    def abs(self) -> np.ndarray:
        return np.abs(self.samples)

    def _check(self, other: "GridFunction") -> None:
        if other.grid.n != self.grid.n:
            raise DomainError(f"grid mismatch: {self.grid.n} vs {other.grid.n}")

    def _coerce(self, other):
        if isinstance(other, GridFunction):
            self._check(other)
            return other.samples
        return other

    def __add__(self, other):
        return GridFunction(self.grid, self.samples + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return GridFunction(self.grid, self.samples - self._coerce(other))

    def __rsub__(self, other):
        return GridFunction(self.grid, self._coerce(other) - self.samples)

    def __mul__(self, other):
        return GridFunction(self.grid, self.samples * self._coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return GridFunction(self.grid, self.samples / self._coerce(other))

    def __neg__(self):
        return GridFunction(self.grid, -self.samples)

    def conj(self) -> "GridFunction":
        return GridFunction(self.grid, np.conj(self.samples))

    def allclose(self, other: "GridFunction", atol: float = 1e-12, rtol: float = 0.0) -> bool:
        self._check(other)
        return bool(np.allclose(self.samples, other.samples, atol=atol, rtol=rtol))


@dataclass(frozen=True, eq=False)
class VectorGridFunction:
    """Samples of a map from the circle grid into ``C^dim``; shape ``(n, dim)``."""

    grid: Grid
    samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=complex)
        if s.ndim == 1:
            s = s[:, None]
        if s.ndim != 2 or s.shape[0] != self.grid.n or s.shape[1] < 1:
            raise DomainError(f"expected shape ({self.grid.n}, dim), got {np.shape(self.samples)}")
        if not np.all(np.isfinite(s)):
            raise DomainError("samples must be finite")
        object.__setattr__(self, "samples", _frozen(s))

    @property
    def dim(self) -> int:
        return self.samples.shape[1]


@dataclass(frozen=True, eq=False)
class RearrangedProfile:
    """Nonincreasing magnitudes ``values`` with ``values[i] == |f|[perm[i]]``."""

    values: np.ndarray
    perm: np.ndarray

    @property
    def n(self) -> int:
        return self.values.shape[0]


def rotate(f: GridFunction, r: int) -> GridFunction:
    """Rotate by ``r`` grid steps: output index ``k`` holds input index ``k - r``."""
    return GridFunction(f.grid, np.roll(f.samples, int(r) % f.n))


def permute(f: GridFunction, perm) -> GridFunction:
    """Compose with an index bijection: output index ``k`` holds input index ``perm[k]``."""
    perm = np.asarray(perm)
    if perm.shape != (f.n,) or not np.array_equal(np.sort(perm), np.arange(f.n)):
        raise DomainError("perm must be a permutation of range(n)")
    return GridFunction(f.grid, f.samples[perm])


def rearrange(f: GridFunction) -> RearrangedProfile:
    """Decreasing rearrangement of ``|f|``.

    Ties are broken by ascending original index, so the witnessing
    permutation is deterministic.
    """
    mags = np.abs(f.samples)
    perm = np.argsort(-mags, kind="stable")
    return RearrangedProfile(_frozen(mags[perm]), _frozen(perm))


def pointwise_magnitude(f: VectorGridFunction) -> GridFunction:
    """Euclidean norm of each sample, as a real grid function."""
    return GridFunction(f.grid, np.linalg.norm(f.samples, axis=1))


# -- constructors -----------------------------------------------------------

def constant(grid: Grid, c: complex = 1.0) -> GridFunction:
    return GridFunction(grid, np.full(grid.n, c, dtype=complex))


def monomial(grid: Grid, j: int) -> GridFunction:
    """Samples of ``z**j`` (negative ``j`` gives powers of ``conj(z)``)."""
    k = np.arange(grid.n)
    return GridFunction(grid, np.exp(2j * np.pi * ((j * k) % grid.n) / grid.n))


def indicator(grid: Grid, indices) -> GridFunction:
    s = np.zeros(grid.n, dtype=complex)
    s[np.asarray(list(indices), dtype=int)] = 1.0
    return GridFunction(grid, s)


def from_callable(grid: Grid, fn: Callable[[np.ndarray], np.ndarray]) -> GridFunction:
    """Sample ``fn`` (vectorized over complex points) on the grid."""
    return GridFunction(grid, fn(grid.points))
