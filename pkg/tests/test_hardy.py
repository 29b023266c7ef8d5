"""Tests for Hardy-space membership, inner-outer factorization and related checks."""

import math

import numpy as np
import pytest

from symnorm import DomainError, GridFunction, indicator, make_grid, monomial
from symnorm.hardy import (
    FactorizationError,
    beurling_check,
    blaschke,
    hardy_membership,
    inner_outer_factor,
    is_outer,
    multiplier_norm,
    outer_division_check,
    outer_from_modulus,
    smirnov_decompose,
    subspace_angle,
)
from symnorm.io import to_jsonable
from symnorm.norms import KyFan, Lp, eval_norm
from symnorm.sampling import band_limited, builtin_specs, factorization_fixtures, random_function, smirnov_fixtures

G256 = make_grid(256)
Z = G256.points


def gf(x, g=G256):
    return GridFunction(g, x)


def blaschke_oracle(a, z):
    """(z - a) / (1 - conj(a) z), evaluated directly."""
    return (z - a) / (1 - np.conj(a) * z)


# -- membership -------------------------------------------------------------------------

def test_membership_examples():
    g = make_grid(16)
    z = g.points
    assert hardy_membership(gf(z ** 2, g)).member
    m = hardy_membership(gf(z.conj(), g))
    assert not m.member
    assert m.negative_magnitude == pytest.approx(1.0, abs=1e-15)
    f = gf(2 + z + z.conj() / 1000, g)
    assert not hardy_membership(f, 1e-6)
    assert hardy_membership(f, 1e-2)


def test_blaschke_matches_formula_and_is_unimodular():
    for a in (0.5, -0.8j, 0.3 + 0.6j):
        b = blaschke(G256, a).samples
        np.testing.assert_allclose(b, blaschke_oracle(a, Z), atol=1e-15)
        np.testing.assert_allclose(np.abs(b), 1.0, atol=1e-14)
    with pytest.raises(DomainError):
        blaschke(G256, 1.0)


# -- outer functions ---------------------------------------------------------------------

def test_outer_of_constants():
    np.testing.assert_allclose(outer_from_modulus(gf(np.ones(256))).samples, 1.0, atol=1e-15)
    np.testing.assert_allclose(outer_from_modulus(gf(np.full(256, 3.5))).samples, 3.5, atol=1e-14)


def test_outer_of_modulus_of_two_plus_z():
    # Jensen oracle: the grid mean of log|2 + z| is log 2
    assert np.mean(np.log(np.abs(2 + Z))) == pytest.approx(math.log(2), abs=1e-14)
    h = outer_from_modulus(gf(np.abs(2 + Z)))
    np.testing.assert_allclose(h.samples, 2 + Z, atol=1e-8)


def test_outer_rejects_bad_modulus():
    with pytest.raises(DomainError):
        outer_from_modulus(gf(-np.ones(256)))


# -- factorization -------------------------------------------------------------------------

def test_factor_z():
    r = inner_outer_factor(gf(Z))
    np.testing.assert_allclose(r.inner.samples, Z, atol=1e-12)
    np.testing.assert_allclose(r.outer.samples, 1.0, atol=1e-12)
    assert r.success


def test_factor_zero_free():
    r = inner_outer_factor(gf(2 + Z))
    np.testing.assert_allclose(r.inner.samples, 1.0, atol=1e-8)
    np.testing.assert_allclose(r.outer.samples, 2 + Z, atol=1e-8)


def test_factor_blaschke_times_zero_free():
    r = inner_outer_factor(gf(blaschke_oracle(0.5, Z) * (2 + Z)))
    np.testing.assert_allclose(r.inner.samples, blaschke_oracle(0.5, Z), atol=1e-6)
    np.testing.assert_allclose(r.outer.samples, 2 + Z, atol=1e-6)
    assert r.success
    assert is_outer(r.outer).outer


@pytest.mark.parametrize("name", sorted(factorization_fixtures(G256)))
def test_factorization_fixture(name):
    f, zeros = factorization_fixtures(G256)[name]
    r = inner_outer_factor(f)
    assert r.unimodularity_residual <= 1e-6
    assert r.reconstruction_residual <= 1e-6
    assert r.jensen_defect <= 1e-6
    assert r.success
    t = is_outer(f)
    assert t.outer == (zeros is None)
    if zeros == 0.0:
        assert math.isinf(t.jensen_defect)
    elif zeros is not None:
        assert t.jensen_defect == pytest.approx(-math.log(zeros), abs=1e-3)


def test_singular_inner_fails_loudly():
    # exp((z + 1)/(z - 1)) has a boundary singularity at z = 1 beyond grid resolution
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.exp((Z + 1) / (Z - 1))
    s[0] = 0.0
    f = gf(s)
    if hardy_membership(f, 1e-8).member:
        assert not inner_outer_factor(f).success
    else:
        with pytest.raises(DomainError):
            inner_outer_factor(f)


def test_factor_rejects_non_member_and_zero():
    with pytest.raises(DomainError):
        inner_outer_factor(gf(Z.conj()))
    with pytest.raises(DomainError):
        inner_outer_factor(gf(np.zeros(256)))


def test_factorization_json_has_residuals():
    d = to_jsonable(inner_outer_factor(gf(2 + Z)))
    for key in ("unimodularity_residual", "reconstruction_residual", "jensen_defect", "success", "log_clamp_applied"):
        assert key in d


# -- Jensen test ------------------------------------------------------------------------------

def test_is_outer_examples():
    t = is_outer(gf(2 + Z))
    assert t.outer and t.jensen_defect <= 1e-8
    t = is_outer(gf(Z))
    assert not t.outer and math.isinf(t.jensen_defect)
    t = is_outer(gf(blaschke_oracle(0.5, Z) * (2 + Z)))
    assert not t.outer
    assert t.jensen_defect == pytest.approx(math.log(2), abs=1e-3)


@pytest.mark.parametrize("r", [0.3, 0.6, 0.9])
def test_is_outer_rejects_blaschke_up_to_point_nine(r):
    t = is_outer(gf(blaschke_oracle(r * np.exp(1j), Z) * np.exp(Z)))
    assert not t.outer
    assert t.jensen_defect >= math.log(1 / 0.9) - 1e-3


def test_grid_jensen_defect_aliasing_term():
    # for a zero at a inside the disk, the grid mean of log|z - a| is (1/n) log|1 - a^n|,
    # so a zero close to the circle can drive the defect slightly negative
    n = 64
    g = make_grid(n)
    a = 0.999
    f = gf(g.points - a, g)
    # continuum defect is -log a > 0; the grid adds (1/n) log|1 - a^n|
    expected = math.log(abs(1 - a ** n)) / n - math.log(a)
    assert is_outer(f).jensen_defect == pytest.approx(expected, abs=1e-12)
    assert expected < 0


# -- division -----------------------------------------------------------------------------------

def test_outer_division_exact():
    rep = outer_division_check(gf(Z * (2 + Z)), gf(2 + Z), Lp(2))
    np.testing.assert_allclose(rep.quotient.samples, Z, atol=1e-14)
    assert rep.member
    assert rep.alpha == pytest.approx(1.0, abs=1e-14)


def test_outer_division_rejects_inner_denominator():
    with pytest.raises(DomainError):
        outer_division_check(gf(2 + Z), gf(blaschke_oracle(0.5, Z) * (2 + Z)), Lp(2))


def test_outer_division_random():
    rng = np.random.default_rng(0)
    for i in range(50):
        h = band_limited(G256, 16, rng, analytic=True)
        rep = outer_division_check(h * gf(2 + Z), gf(2 + Z), (Lp(2), KyFan(0.25))[i % 2], tol=1e-8)
        assert rep.member
        np.testing.assert_allclose(rep.quotient.samples, h.samples, atol=1e-12 * np.max(np.abs(h.samples)))


# -- Beurling -------------------------------------------------------------------------------------

def test_beurling_inner_itself():
    phi = gf(blaschke_oracle(0.5, Z) * blaschke_oracle(-0.3j, Z))
    assert beurling_check(phi, 16).principal_angle <= 1e-10


def test_beurling_blaschke_times_zero_free():
    assert beurling_check(gf(blaschke_oracle(0.5, Z) * (2 + Z)), 16).principal_angle <= 1e-6


def test_beurling_outer_spans_shift_space():
    c = beurling_check(gf(2 + Z), 16)
    assert c.principal_angle <= 1e-6
    np.testing.assert_allclose(c.generator_inner.samples, 1.0, atol=1e-8)


def test_subspace_angle_detects_wrong_inner():
    f = gf(blaschke_oracle(0.5, Z) * (2 + Z))
    assert subspace_angle(f, gf(blaschke_oracle(-0.5, Z)), 16) > 0.1


# -- multipliers ------------------------------------------------------------------------------------

def test_multiplier_examples():
    g = make_grid(32)
    for spec in builtin_specs(32).values():
        m = multiplier_norm(gf(np.ones(32), g), spec)
        assert m.norm == 1.0 and m.certified
        assert multiplier_norm(monomial(g, 1), spec).norm == pytest.approx(1.0, abs=1e-15)


def test_multiplier_ratio_certificate_and_random_search():
    g = make_grid(8)
    psi = gf(np.array([1, 3, 2, 0.5, 1, 2.5, 0, 1.5]), g)
    rng = np.random.default_rng(1)
    for spec in builtin_specs(8).values():
        m = multiplier_norm(psi, spec)
        assert (m.norm, m.index) == (3.0, 1)
        assert m.certified
        assert m.ratio == pytest.approx(m.norm, rel=1e-15)
        # no random function beats the certified ratio
        best = max(eval_norm(spec, psi * f) / eval_norm(spec, f) for f in (random_function(g, rng) for _ in range(1000)))
        assert best <= m.norm * (1 + 1e-12)


def test_multiplier_monotone_under_indicators():
    g = make_grid(64)
    rng = np.random.default_rng(2)
    for _ in range(20):
        psi = random_function(g, rng)
        chi = indicator(g, rng.choice(64, size=int(rng.integers(1, 64)), replace=False))
        for spec in builtin_specs(64).values():
            assert multiplier_norm(psi * chi, spec).norm <= multiplier_norm(psi, spec).norm


# -- Smirnov decomposition ---------------------------------------------------------------------------

def test_smirnov_constant_pair():
    d = smirnov_decompose(gf(np.ones(256)), gf(np.ones(256)))
    np.testing.assert_allclose(d.u.samples, 1.0, atol=1e-14)
    np.testing.assert_allclose(d.v.samples, 1.0, atol=1e-14)
    np.testing.assert_allclose(d.a.samples, 0.5, atol=1e-14)
    np.testing.assert_allclose(d.b.samples, 0.5, atol=1e-14)
    assert d.partition_residual <= 1e-15


def test_smirnov_z_over_two_minus_z():
    d = smirnov_decompose(gf(Z), gf(2 - Z))
    np.testing.assert_allclose(d.v.samples, Z, atol=1e-10)
    np.testing.assert_allclose(d.u.samples, 1.0, atol=1e-10)
    assert d.partition_residual <= 1e-8
    # reconstruction oracle: pointwise division
    recon = d.v.samples * d.b.samples / (d.u.samples * d.a.samples)
    np.testing.assert_allclose(recon, Z / (2 - Z), rtol=1e-8)


def test_smirnov_blaschke_over_one():
    b = blaschke_oracle(0.5, Z)
    d = smirnov_decompose(gf(b), gf(np.ones(256)))
    np.testing.assert_allclose(d.v.samples, b, atol=1e-8)
    np.testing.assert_allclose(d.u.samples, 1.0, atol=1e-8)
    np.testing.assert_allclose(d.a.samples, d.b.samples, atol=1e-8)
    assert d.partition_residual <= 1e-8


@pytest.mark.parametrize("name", sorted(smirnov_fixtures(G256)))
def test_smirnov_fixture_invariants(name):
    f1, f2 = smirnov_fixtures(G256)[name]
    d = smirnov_decompose(f1, f2)
    assert np.max(np.abs(np.abs(d.u.samples) - 1)) <= 1e-8
    assert np.max(np.abs(np.abs(d.v.samples) - 1)) <= 1e-8
    assert is_outer(d.a).outer and is_outer(d.b).outer
    assert d.partition_residual <= 1e-8
    phi = f1.samples / f2.samples
    recon = d.v.samples * d.b.samples / (d.u.samples * d.a.samples)
    assert np.max(np.abs(recon - phi) / np.abs(phi).max()) <= 1e-8


def test_smirnov_rejects_zero_numerator():
    with pytest.raises(DomainError):
        smirnov_decompose(gf(np.zeros(256)), gf(np.ones(256)))


def test_beurling_raises_on_failed_factorization():
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.exp((Z + 1) / (Z - 1))
    s[0] = 0.0
    f = gf(s)
    if hardy_membership(f, 1e-8).member:
        with pytest.raises(FactorizationError):
            beurling_check(f, 16)
