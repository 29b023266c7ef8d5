"""Registry of the property suites run by ``symnorm verify``.

Each property is a function ``fn(n, rng) -> (worst_slack, checks)`` registered
with the module it exercises, a one-line statement and a tolerance; it passes
when ``worst_slack >= -tol``.  The traceability table is generated from the
registry, so a property cannot be listed twice or silently dropped.
"""

from __future__ import annotations

import math
import os
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .axioms import verify_axioms
from .duality import DualNorm, bidual_check, dual_norm, hardy_lower_bound, multiplication_operator_norm
from .fourier import (
    Fejer,
    Poisson,
    cesaro_mean,
    conjugate_function,
    convolve,
    frequencies,
    from_fourier,
    kernel,
    poisson_extension,
    poisson_truncation_term,
    riesz_project,
    to_fourier,
)
from .grid import GridFunction, VectorGridFunction, indicator, make_grid, pointwise_magnitude, rearrange, rotate
from .hardy import (
    blaschke,
    beurling_check,
    hardy_membership,
    inner_outer_factor,
    is_outer,
    multiplier_norm,
    outer_division_check,
    smirnov_decompose,
)
from .norms import (
    KyFan,
    Lp,
    Marcinkiewicz,
    continuity_modulus,
    decompose_continuous,
    eval_norm,
)
from .sampling import band_limited, builtin_specs, factorization_fixtures, random_function, smirnov_fixtures


@dataclass(frozen=True)
class Property:
    name: str
    module: str
    statement: str
    tol: float
    fn: Callable


@dataclass(frozen=True)
class PropertyResult:
    name: str
    module: str
    statement: str
    passed: bool
    worst_slack: float
    checks: int
    tol: float
    error: str = ""


_REGISTRY: dict[str, Property] = {}


def prop(name: str, module: str, statement: str, tol: float = 1e-12):
    def deco(fn):
        if name in _REGISTRY:
            raise ValueError(f"property {name!r} registered twice")
        _REGISTRY[name] = Property(name, module, statement, tol, fn)
        return fn
    return deco


def registry() -> dict[str, Property]:
    return dict(_REGISTRY)


def traceability() -> list[dict]:
    return [{"name": p.name, "module": p.module, "statement": p.statement, "tol": p.tol}
            for p in sorted(_REGISTRY.values(), key=lambda p: (p.module, p.name))]


def _rng(seed: int, name: str) -> np.random.Generator:
    return np.random.default_rng([seed, zlib.crc32(name.encode())])


def run_property(p: Property, n: int, seed: int) -> PropertyResult:
    try:
        slack, checks = p.fn(n, _rng(seed, p.name))
        passed = bool(slack >= -p.tol)
        return PropertyResult(p.name, p.module, p.statement, passed, float(slack), int(checks), p.tol)
    except Exception as exc:  # surfaced in the report, never swallowed silently
        return PropertyResult(p.name, p.module, p.statement, False, -math.inf, 0, p.tol,
                              f"{type(exc).__name__}: {exc}")


def worker_count() -> int:
    raw = os.environ.get("SYMNORM_THREADS", "0")
    try:
        k = int(raw)
    except ValueError:
        k = 0
    return k if k > 0 else (os.cpu_count() or 1)


def run_suites(n: int, seed: int, names=None) -> list[PropertyResult]:
    """Run the registered properties (all, or ``names``) and return results sorted by name."""
    props = [p for p in _REGISTRY.values() if names is None or p.name in names]
    with ThreadPoolExecutor(max_workers=worker_count()) as ex:
        results = list(ex.map(lambda p: run_property(p, n, seed), props))
    return sorted(results, key=lambda r: (r.module, r.name))


def _min(pairs):
    worst, count = math.inf, 0
    for s in pairs:
        worst = min(worst, s)
        count += 1
    return worst, count


# -- circle_grid -------------------------------------------------------------

@prop("rearrange_rotation_invariance", "circle_grid", "rearrangement unchanged by rotation (exact)", 0.0)
def _p(n, rng):
    g = make_grid(n)

    def gen():
        for _ in range(50):
            f = random_function(g, rng)
            base = rearrange(f).values
            r = int(rng.integers(n))
            yield -float(np.max(np.abs(rearrange(rotate(f, r)).values - base)))
    return _min(gen())


@prop("rearrange_permutation_invariance", "circle_grid", "rearrangement unchanged by any index permutation (exact)", 0.0)
def _p(n, rng):
    g = make_grid(n)

    def gen():
        for _ in range(50):
            f = random_function(g, rng)
            p = rng.permutation(n)
            yield -float(np.max(np.abs(rearrange(GridFunction(g, f.samples[p])).values - rearrange(f).values)))
    return _min(gen())


@prop("rearrange_preserves_mass", "circle_grid", "sum of rearranged values / n equals ||f||_1", 1e-13)
def _p(n, rng):
    g = make_grid(n)

    def gen():
        for _ in range(50):
            f = random_function(g, rng)
            l1 = float(np.mean(np.abs(f.samples)))
            yield -abs(float(np.sum(rearrange(f).values)) / n - l1) / l1
    return _min(gen())


@prop("vector_magnitude_reduction", "circle_grid", "norms of C^d-valued functions go through |f|(z) = ||f(z)||", 1e-12)
def _p(n, rng):
    g = make_grid(n)
    specs = builtin_specs(n)

    def gen():
        for _ in range(10):
            v = rng.normal(size=(n, 3)) + 1j * rng.normal(size=(n, 3))
            mags = np.sqrt(np.sum(np.abs(v) ** 2, axis=1))
            reduced = pointwise_magnitude(VectorGridFunction(g, v))
            for s in specs.values():
                a = eval_norm(s, reduced)
                yield -abs(a - eval_norm(s, GridFunction(g, mags))) / a
    return _min(gen())


# -- gauge_norms -------------------------------------------------------------

@prop("norm_sandwich", "gauge_norms", "||f||_1 <= alpha(f) <= ||f||_inf for every built-in spec", 1e-12)
def _p(n, rng):
    g = make_grid(n)
    specs = list(builtin_specs(n).values())

    def gen():
        for _ in range(100):
            f = random_function(g, rng)
            l1 = float(np.mean(np.abs(f.samples)))
            linf = float(np.max(np.abs(f.samples)))
            for s in specs:
                a = eval_norm(s, f)
                yield min(a - l1, linf - a) / max(1.0, linf)
    return _min(gen())


@prop("gauge_axioms", "gauge_norms",
      "monotonicity, multiplier bound, triangle, homogeneity, symmetry, small-set decay", 1e-12)
def _p(n, rng):
    g = make_grid(n)

    def gen():
        for s in builtin_specs(n).values():
            rep = verify_axioms(s, g, trials=20, seed=int(rng.integers(2**31)))
            yield min(rep.worst_slack.values())
    return _min(gen())


@prop("symmetric_profile_dependence", "gauge_norms", "fully symmetric norms depend only on the rearrangement (exact)", 0.0)
def _p(n, rng):
    g = make_grid(n)
    specs = [s for s in builtin_specs(n).values() if s.fully_symmetric]

    def gen():
        for _ in range(30):
            f = random_function(g, rng)
            prof = GridFunction(g, rearrange(f).values)
            for s in specs:
                yield -abs(eval_norm(s, f) - eval_norm(s, prof))
    return _min(gen())


@prop("rotation_invariance", "gauge_norms", "every spec is exactly rotation invariant", 0.0)
def _p(n, rng):
    g = make_grid(n)
    specs = list(builtin_specs(n).values())

    def gen():
        for _ in range(30):
            f = random_function(g, rng)
            r = int(rng.integers(n))
            for s in specs:
                yield -abs(eval_norm(s, rotate(f, r)) - eval_norm(s, f))
    return _min(gen())


@prop("monotone_convergence", "gauge_norms", "0 <= f_1 <= f_2 <= ... -> f gives alpha(f_m) increasing to alpha(f)", 1e-12)
def _p(n, rng):
    g = make_grid(n)
    specs = list(builtin_specs(n).values())

    def gen():
        for _ in range(10):
            mags = np.abs(random_function(g, rng).samples)
            levels = np.append(np.quantile(mags, np.linspace(0, 1, 9)[:-1]), mags.max())
            for s in specs:
                vals = [eval_norm(s, GridFunction(g, np.minimum(mags, c))) for c in levels]
                yield float(np.min(np.diff(vals))) / max(1.0, vals[-1])
                yield -abs(vals[-1] - eval_norm(s, GridFunction(g, mags)))
    return _min(gen())


@prop("kyfan_endpoints", "gauge_norms", "KyFan(1/n) = ||.||_inf and KyFan(1) = ||.||_1 (exact)", 0.0)
def _p(n, rng):
    g = make_grid(n)

    def gen():
        for _ in range(30):
            f = random_function(g, rng)
            yield -abs(eval_norm(KyFan(1 / n), f) - eval_norm(Lp(np.inf), f))
            yield -abs(eval_norm(KyFan(1.0), f) - eval_norm(Lp(1), f))
    return _min(gen())


@prop("kyfan_indicator", "gauge_norms", "||chi_E||_t = min(s, t)/t on the breakpoint lattice", 1e-14)
def _p(n, rng):
    g = make_grid(n)

    def gen():
        for j in range(1, n + 1):
            chi = indicator(g, rng.choice(n, size=j, replace=False))
            for k in range(1, n + 1):
                s, t = j / n, k / n
                yield -abs(eval_norm(KyFan(t), chi) - min(s, t) / t)
    return _min(gen())


@prop("marcinkiewicz_endpoints", "gauge_norms", "u(t) = t gives ||.||_1 and u = 1 gives ||.||_inf", 1e-12)
def _p(n, rng):
    g = make_grid(n)
    lin = Marcinkiewicz.from_function(lambda t: t, n)
    one = Marcinkiewicz(np.ones(n))

    def gen():
        for _ in range(30):
            f = random_function(g, rng)
            l1 = float(np.mean(np.abs(f.samples)))
            yield -abs(eval_norm(lin, f) - l1) / max(1.0, l1)
            yield -abs(eval_norm(one, f) - float(np.max(np.abs(f.samples))))
    return _min(gen())


@prop("continuity_modulus_bound", "gauge_norms", "t ||f||_inf <= alpha(f) with t the continuity modulus", 1e-12)
def _p(n, rng):
    g = make_grid(n)
    specs = list(builtin_specs(n).values())
    mods = [continuity_modulus(s, g) for s in specs]

    def gen():
        for _ in range(30):
            f = random_function(g, rng)
            linf = float(np.max(np.abs(f.samples)))
            for s, t in zip(specs, mods):
                yield (eval_norm(s, f) - t * linf) / max(1.0, linf)
    return _min(gen())


@prop("continuous_decomposition", "gauge_norms", "alpha = (1-t) beta + t ||.||_inf with beta(1) = 1", 1e-12)
def _p(n, rng):
    g = make_grid(n)
    specs = [s for s in builtin_specs(n).values()
             if s.fully_symmetric and continuity_modulus(s, g) < 1.0]

    def gen():
        one = GridFunction(g, np.ones(n))
        for s in specs:
            t, beta = decompose_continuous(s, g)
            yield -abs(beta(one) - 1.0)
            for _ in range(10):
                f = random_function(g, rng)
                a = eval_norm(s, f)
                yield -abs(beta.reconstruct(f) - a) / max(1.0, a)
    return _min(gen())


@prop("rotated_indicator_average", "gauge_norms", "the n rotations of n chi_{point} average to 1, alpha(1) = 1 <= alpha(g)", 1e-12)
def _p(n, rng):
    g = make_grid(n)
    spike = GridFunction(g, n * indicator(g, [int(rng.integers(n))]).samples)
    avg = sum((rotate(spike, r).samples for r in range(n)), np.zeros(n, dtype=complex)) / n

    def gen():
        yield -float(np.max(np.abs(avg - 1.0)))
        for s in builtin_specs(n).values():
            a_avg = eval_norm(s, GridFunction(g, avg))
            yield -abs(a_avg - 1.0)
            yield eval_norm(s, spike) - a_avg
    return _min(gen())


# -- duality -----------------------------------------------------------------

@prop("weak_duality", "duality", "mean|f h| <= alpha(f) alpha'(h); witnesses lie in the unit ball and attain the value", 1e-10)
def _p(n, rng):
    g = make_grid(n)
    specs = [builtin_specs(n)[k] for k in ("l2", "kyfan_1/4", "marcinkiewicz_sqrt", "sup",
                                           "permutation_weighted", "rotation_weighted")]

    def gen():
        for s in specs:
            for _ in range(3):
                f = random_function(g, rng)
                h = random_function(g, rng)
                ev = dual_norm(s, h)
                lhs = float(np.mean(np.abs(f.samples * h.samples)))
                yield (eval_norm(s, f) * ev.value - lhs) / max(1.0, lhs)
                yield 1.0 - eval_norm(s, ev.witness)
                yield float(np.mean(np.abs(h.samples * ev.witness.samples))) - (ev.value - ev.gap)
    return _min(gen())


@prop("lp_dual_agreement", "duality", "the dual of Lp(p) is Lp(q), 1/p + 1/q = 1", 1e-8)
def _p(n, rng):
    g = make_grid(n)

    def gen():
        for p in (1.0, 1.5, 2.0, 3.0, np.inf):
            q = Lp(p).conjugate_exponent
            for _ in range(20):
                f = random_function(g, rng)
                want = eval_norm(Lp(q), f)
                yield -abs(dual_norm(Lp(p), f).value - want) / max(1.0, want)
    return _min(gen())


@prop("bidual_polyhedral", "duality", "alpha'' = alpha for polyhedral specs", 1e-6)
def _p(n, rng):
    m = min(n, 32)
    g = make_grid(m)
    specs = [KyFan(0.25), KyFan(0.5), KyFan(1.0), Marcinkiewicz.from_function(np.sqrt, m)]

    def gen():
        for s in specs:
            for _ in range(2):
                yield -bidual_check(s, random_function(g, rng)).relative_gap
    return _min(gen())


@prop("dual_is_gauge_norm", "duality", "the dual evaluator satisfies the gauge axioms", 1e-9)
def _p(n, rng):
    g = make_grid(min(n, 16))

    def gen():
        for s in (KyFan(0.5), Marcinkiewicz.from_function(np.sqrt, 16)):
            rep = verify_axioms(DualNorm(s), g, trials=5, seed=int(rng.integers(2**31)), tol=1e-9)
            yield min(rep.worst_slack.values())
    return _min(gen())


@prop("multiplication_operator_norm", "duality", "norm of g -> f g from the alpha-ball into L^1 equals alpha'(f)", 1e-6)
def _p(n, rng):
    g = make_grid(min(n, 32))
    m = g.n
    specs = [KyFan(0.25), KyFan(0.5), Marcinkiewicz.from_function(np.sqrt, m), Lp(1), Lp(np.inf)]

    def gen():
        for s in specs:
            for _ in range(2):
                f = random_function(g, rng)
                dv = dual_norm(s, f).value
                yield -abs(multiplication_operator_norm(f, s) - dv) / max(1.0, dv)
    return _min(gen())


@prop("hardy_lower_bound", "duality", "sup over analytic multipliers in the dual ball never exceeds alpha(f)", 1e-10)
def _p(n, rng):
    g = make_grid(n)

    def gen():
        for s in (Lp(2), KyFan(0.25), Lp(1)):
            for _ in range(3):
                f = band_limited(g, n // 8, rng, analytic=True)
                yield eval_norm(s, f) - hardy_lower_bound(s, f, trials=8, seed=int(rng.integers(2**31)))
    return _min(gen())


# -- fourier_kernels -----------------------------------------------------------

def _convergence_specs(n):
    return [Lp(1), Lp(2), Lp(np.inf), KyFan(0.5), Marcinkiewicz.from_function(np.sqrt, n)]


@prop("transform_roundtrip", "fourier_kernels", "from_fourier(to_fourier(f)) = f", 1e-13)
def _p(n, rng):
    g = make_grid(n)

    def gen():
        for _ in range(50):
            f = random_function(g, rng)
            back = from_fourier(to_fourier(f))
            yield -float(np.max(np.abs(back.samples - f.samples))) / float(np.max(np.abs(f.samples)))
    return _min(gen())


@prop("convolution_inequality", "fourier_kernels", "alpha(f * g) <= alpha(f) ||g||_1", 1e-10)
def _p(n, rng):
    grid = make_grid(n)
    specs = _convergence_specs(n)

    def gen():
        for _ in range(40):
            f = random_function(grid, rng)
            g = random_function(grid, rng)
            conv = convolve(f, g)
            g1 = float(np.mean(np.abs(g.samples)))
            for s in specs:
                rhs = eval_norm(s, f) * g1
                yield (rhs - eval_norm(s, conv)) / max(1.0, rhs)
    return _min(gen())


@prop("kernel_positivity", "fourier_kernels", "Fejer and Poisson kernels are nonnegative with mean 1", 1e-12)
def _p(n, rng):
    g = make_grid(n)

    def gen():
        for m in range(n // 2):
            k = kernel(Fejer(m), g).samples.real
            yield float(k.min())
            yield -abs(float(k.mean()) - 1.0)
        # radii whose truncation error r^(n/2) is below the tolerance
        rmax = 1e-13 ** (2.0 / n)
        for r in np.linspace(0.0, rmax, 8):
            k = kernel(Poisson(float(r)), g).samples.real
            yield float(k.min())
            yield -abs(float(k.mean()) - 1.0)
    return _min(gen())


@prop("cesaro_convergence", "fourier_kernels", "alpha(f - sigma_m f) <= sum_k |k|/(m+1) |fhat(k)| and decreases to 0", 1e-10)
def _p(n, rng):
    g = make_grid(n)
    specs = _convergence_specs(n)
    d = n // 4
    k = np.abs(frequencies(n))

    def gen():
        for _ in range(5):
            f = band_limited(g, d, rng)
            c = np.abs(to_fourier(f).coeffs)
            for s in specs:
                prev = math.inf
                for m in (d, 2 * d - 1, n // 2 - 1):
                    bound = float(np.sum(np.minimum(k, m + 1) / (m + 1) * c))
                    err = eval_norm(s, f - cesaro_mean(f, m))
                    yield bound - err
                    yield (prev - err) if math.isfinite(prev) else 0.0
                    prev = err
    return _min(gen())


@prop("poisson_contraction", "fourier_kernels", "alpha(f * P_r) <= alpha(f) ||P_r||_1", 1e-10)
def _p(n, rng):
    g = make_grid(n)
    specs = _convergence_specs(n)

    def gen():
        for r in (0.1, 0.5, 0.9, 0.99):
            excess = poisson_truncation_term(r, g)
            for _ in range(5):
                f = random_function(g, rng)
                fr = poisson_extension(f, r)
                for s in specs:
                    a = eval_norm(s, f)
                    yield (a * (1.0 + excess) - eval_norm(s, fr)) / max(1.0, a)
    return _min(gen())


@prop("poisson_monotonicity", "fourier_kernels", "alpha(f_r) is nondecreasing in r", 1e-10)
def _p(n, rng):
    g = make_grid(n)
    radii = [0.1 * i for i in range(1, 10)] + [0.95]
    specs = [Lp(1), Lp(2), KyFan(0.5)]

    def gen():
        for _ in range(10):
            f = random_function(g, rng)
            for s in specs:
                vals = [eval_norm(s, poisson_extension(f, r)) for r in radii]
                for (r0, v0), (r1, v1) in zip(zip(radii, vals), zip(radii[1:], vals[1:])):
                    slack_term = v1 * poisson_truncation_term(r0 / r1, g)
                    yield (v1 + slack_term - v0) / max(1.0, v1)
    return _min(gen())


@prop("poisson_limit", "fourier_kernels", "|alpha(f_r) - alpha(f)| <= 10 (1 - r^(n/4)) alpha(f) at r = 0.999", 0.0)
def _p(n, rng):
    g = make_grid(n)
    r = 0.999
    specs = _convergence_specs(n)

    def gen():
        for _ in range(5):
            f = band_limited(g, n // 4, rng)
            fr = poisson_extension(f, r)
            for s in specs:
                a = eval_norm(s, f)
                yield 10 * (1 - r ** (n / 4)) * a - abs(eval_norm(s, fr) - a)
    return _min(gen())


@prop("conjugate_involution", "fourier_kernels", "conj(conj(L)) = -L + mean(L) for L without a Nyquist mode", 1e-12)
def _p(n, rng):
    g = make_grid(n)

    def gen():
        for _ in range(20):
            L = GridFunction(g, band_limited(g, n // 2 - 1, rng).samples.real)
            twice = conjugate_function(conjugate_function(L)).samples.real
            want = -L.samples.real + L.samples.real.mean()
            yield -float(np.max(np.abs(twice - want))) / max(1.0, float(np.max(np.abs(want))))
    return _min(gen())


# -- hardy_factorization -------------------------------------------------------

def _hardy_grid(n):
    return make_grid(max(n, 256))


@prop("factorization_residuals", "hardy_factorization", "inner-outer factors are unimodular/outer and reproduce f", 1e-6)
def _p(n, rng):
    g = _hardy_grid(n)

    def gen():
        for f, _ in factorization_fixtures(g).values():
            res = inner_outer_factor(f)
            yield -max(res.unimodularity_residual, res.reconstruction_residual,
                       res.analyticity_residual, res.jensen_defect)
    return _min(gen())


@prop("outer_classification", "hardy_factorization", "Jensen defect equals -log|B(0)| and separates outer from non-outer", 1e-3)
def _p(n, rng):
    g = _hardy_grid(n)

    def gen():
        for f, zeros in factorization_fixtures(g).values():
            t = is_outer(f)
            if zeros is None:
                yield 0.0 if t.outer else -math.inf
            elif zeros == 0.0:
                yield 0.0 if (not t.outer and math.isinf(t.jensen_defect)) else -math.inf
            else:
                yield -abs(t.jensen_defect + math.log(zeros)) if not t.outer else -math.inf
    return _min(gen())


@prop("jensen_nonnegative", "hardy_factorization",
      "Jensen defect >= 0 for analytic functions with zeros off a neighbourhood of the circle", 1e-10)
def _p(n, rng):
    # the grid mean of log|z - a| misses the integral by (1/n) log|1 - a^(+-n)|,
    # so zeros are kept at modulus <= 0.8 (or >= 1/0.8) where that term is negligible
    g = _hardy_grid(n)
    z = g.points

    def gen():
        for _ in range(30):
            f = np.full(g.n, complex(rng.normal(), rng.normal()))
            for _ in range(int(rng.integers(0, 4))):
                a = 0.8 * np.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random())
                f = f * blaschke(g, a).samples
            for _ in range(int(rng.integers(0, 4))):
                w = np.exp(2j * np.pi * rng.random()) / (0.8 * np.sqrt(rng.random()) + 1e-3)
                f = f * (1 - z / w)
            yield is_outer(GridFunction(g, f)).jensen_defect
    return _min(gen())


@prop("hardy_intersection", "hardy_factorization", "membership is the coefficient condition; alpha is finite on the grid", 0.0)
def _p(n, rng):
    g = make_grid(n)
    specs = list(builtin_specs(n).values())

    def gen():
        for _ in range(20):
            f = random_function(g, rng)
            pf = riesz_project(f)
            yield 0.0 if hardy_membership(pf, 1e-12) else -1.0
            c = to_fourier(f).coeffs
            neg = np.abs(c[frequencies(n) < 0])
            yield 0.0 if bool(hardy_membership(f, 1e-12)) == bool(neg.max() <= 1e-12 * np.abs(c).max()) else -1.0
            yield 0.0 if all(math.isfinite(eval_norm(s, pf)) for s in specs) else -1.0
    return _min(gen())


@prop("riesz_idempotent", "hardy_factorization", "P+ P+ = P+", 1e-13)
def _p(n, rng):
    g = make_grid(n)

    def gen():
        for _ in range(30):
            f = random_function(g, rng)
            p1 = riesz_project(f)
            p2 = riesz_project(p1)
            yield -float(np.max(np.abs(p2.samples - p1.samples))) / max(1.0, float(np.max(np.abs(f.samples))))
    return _min(gen())


@prop("outer_division", "hardy_factorization", "f / g stays analytic when g is outer", 1e-8)
def _p(n, rng):
    g = _hardy_grid(n)
    z = g.points
    outer = GridFunction(g, 2 + z)
    specs = [Lp(2), KyFan(0.25)]

    def gen():
        for i in range(10):
            h = band_limited(g, 16, rng, analytic=True)
            rep = outer_division_check(h * outer, outer, specs[i % 2])
            scale = float(np.max(np.abs(to_fourier(rep.quotient).coeffs)))
            yield -rep.negative_magnitude / scale
    return _min(gen())


@prop("multiplier_norm", "hardy_factorization", "||M_psi|| = ||psi||_inf, certified by a singleton", 1e-12)
def _p(n, rng):
    g = make_grid(n)
    specs = list(builtin_specs(n).values())

    def gen():
        for _ in range(10):
            psi = random_function(g, rng)
            chi = indicator(g, rng.choice(n, size=n // 3, replace=False))
            for s in specs:
                mn = multiplier_norm(psi, s)
                yield -abs(mn.ratio - mn.norm) / max(1.0, mn.norm)
                yield mn.norm - multiplier_norm(psi * chi, s).norm
    return _min(gen())


@prop("beurling_subspace", "hardy_factorization", "shifts of f lie in phi H for the inner factor phi of f", 1e-6)
def _p(n, rng):
    g = _hardy_grid(n)

    def gen():
        for f, _ in factorization_fixtures(g).values():
            yield -beurling_check(f, 16).principal_angle
    return _min(gen())


@prop("smirnov_decomposition", "hardy_factorization", "f1/f2 = v b/(u a) with |a| + |b| = 1, u, v inner, a, b outer", 1e-8)
def _p(n, rng):
    g = _hardy_grid(n)

    def gen():
        for f1, f2 in smirnov_fixtures(g).values():
            d = smirnov_decompose(f1, f2)
            yield -max(d.partition_residual, d.reconstruction_residual, d.unimodularity_residual, d.outer_defect)
    return _min(gen())
