"""Fourier analysis on the circle grid.

Coefficients are indexed by frequency ``k`` in ``-n/2 .. n/2 - 1`` and carry
the ``1/n`` factor on the analysis side, so ``fhat(k) = mean(f(z_j) z_j^(-k))``
matches the integral against normalized arc length.  Convolution carries the
same measure: ``(f * g)(z_k) = mean_j f(z_{k-j}) g(z_j)``, whose unit is the
grid function ``n`` at index 0 and ``0`` elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.fft import fft, fftshift, ifft, ifftshift

from .errors import AliasingError, DomainError
from .grid import Grid, GridFunction

__all__ = [
    "FourierSeries",
    "Fejer",
    "Poisson",
    "to_fourier",
    "from_fourier",
    "frequencies",
    "convolve",
    "kernel",
    "cesaro_mean",
    "poisson_extension",
    "poisson_truncation_term",
    "riesz_project",
    "conjugate_function",
    "apply_multiplier",
]


def frequencies(n: int) -> np.ndarray:
    return np.arange(-(n // 2), n - n // 2)


@dataclass(frozen=True, eq=False)
class FourierSeries:
    grid: Grid
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        if c.shape != (self.grid.n,):
            raise DomainError(f"expected {self.grid.n} coefficients, got shape {c.shape}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def frequencies(self) -> np.ndarray:
        return frequencies(self.grid.n)

    def __getitem__(self, k: int) -> complex:
        n = self.grid.n
        if not -(n // 2) <= k < n - n // 2:
            raise IndexError(f"frequency {k} outside the grid band")
        return complex(self.coeffs[k + n // 2])


def to_fourier(f: GridFunction) -> FourierSeries:
    return FourierSeries(f.grid, fftshift(fft(f.samples)) / f.n)


def from_fourier(s: FourierSeries) -> GridFunction:
    return GridFunction(s.grid, ifft(ifftshift(s.coeffs)) * s.grid.n)


def apply_multiplier(f: GridFunction, m: np.ndarray) -> GridFunction:
    """Multiply the coefficients of ``f`` by ``m`` (indexed like ``frequencies(n)``)."""
    return GridFunction(f.grid, ifft(fft(f.samples) * ifftshift(m)))


def convolve(f: GridFunction, g: GridFunction) -> GridFunction:
    """Circular convolution with respect to normalized counting measure."""
    if f.n != g.n:
        raise DomainError(f"grid mismatch: {f.n} vs {g.n}")
    return GridFunction(f.grid, ifft(fft(f.samples) * fft(g.samples)) / f.n)


@dataclass(frozen=True)
class Fejer:
    order: int

    def __post_init__(self):
        if int(self.order) != self.order or self.order < 0:
            raise DomainError(f"Fejer order must be a nonnegative integer, got {self.order}")


@dataclass(frozen=True)
class Poisson:
    r: float

    def __post_init__(self):
        if not 0.0 <= self.r < 1.0:
            raise DomainError(f"Poisson radius must lie in [0, 1), got {self.r}")


def _fejer_multiplier(m: int, n: int) -> np.ndarray:
    if m >= n // 2:
        raise AliasingError(f"Fejer order {m} needs a grid with more than {2 * m} points")
    k = np.abs(frequencies(n))
    return np.where(k <= m, (m + 1 - k) / (m + 1), 0.0)


def _poisson_multiplier(r: float, n: int) -> np.ndarray:
    k = frequencies(n)
    mult = np.where(np.abs(k) < n // 2, float(r) ** np.abs(k), 0.0)
    mult[n // 2] = 1.0
    return mult


def kernel(spec, grid: Grid) -> GridFunction:
    """Samples of a Fejér or (band-truncated) Poisson kernel.

    The Fejér kernel is sampled from its closed form, so it is exactly
    nonnegative.  The Poisson kernel is the partial sum of ``r^|k| z^k`` over
    ``|k| < n/2``; it dips below zero by at most about ``2 r^(n/2) / (1 - r)``.
    """
    n = grid.n
    if isinstance(spec, Fejer):
        m = spec.order
        _fejer_multiplier(m, n)
        theta = 2 * np.pi * np.arange(n) / n
        half = np.sin(theta / 2)
        with np.errstate(divide="ignore", invalid="ignore"):
            vals = np.sin((m + 1) * theta / 2) ** 2 / (half ** 2 * (m + 1))
        vals[0] = m + 1
        return GridFunction(grid, vals)
    if isinstance(spec, Poisson):
        k = np.arange(1, n // 2)
        theta = 2 * np.pi * np.arange(n) / n
        vals = 1.0 + 2.0 * (spec.r ** k[None, :] * np.cos(np.outer(theta, k))).sum(axis=1)
        return GridFunction(grid, vals)
    raise DomainError(f"unknown kernel {spec!r}")


def cesaro_mean(f: GridFunction, m: int) -> GridFunction:
    """Fejér mean of order ``m``: coefficients scaled by ``(m + 1 - |k|)/(m + 1)``."""
    return apply_multiplier(f, _fejer_multiplier(int(m), f.n))


def poisson_extension(f: GridFunction, r: float) -> GridFunction:
    """Values on the circle of radius ``r``: coefficients scaled by ``r^|k|``."""
    Poisson(r)
    return apply_multiplier(f, _poisson_multiplier(r, f.n))


def poisson_truncation_term(r: float, grid: Grid) -> float:
    """``||P_r||_1 - 1`` for the band-truncated kernel; zero when it is nonnegative."""
    p = kernel(Poisson(r), grid).samples.real
    return float(max(np.mean(np.abs(p)) - 1.0, 0.0))


def riesz_project(f: GridFunction) -> GridFunction:
    """Zero the negative-frequency coefficients (including ``-n/2``)."""
    return apply_multiplier(f, (frequencies(f.n) >= 0).astype(float))


def conjugate_function(L: GridFunction) -> GridFunction:
    """Harmonic conjugate via the multiplier ``-i sgn(k)``, zero at ``k = 0`` and ``k = -n/2``."""
    s = L.samples
    if np.any(np.abs(s.imag) > 1e-12 * max(1.0, float(np.max(np.abs(s))))):
        raise DomainError("conjugate function needs real input")
    k = frequencies(L.n)
    mult = -1j * np.sign(k)
    mult[0] = 0.0
    out = ifft(fft(s.real) * ifftshift(mult))
    return GridFunction(L.grid, out.real)
