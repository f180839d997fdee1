"""Dyadic profile, spectral multipliers, and the resolvent quadrature."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sqgbox import (
    C0,
    DyadicProfile,
    QuadratureSpec,
    SpectralField,
    apply_multiplier,
    build_dyadic_profile,
    dyadic_block,
    eigenvalue,
    fractional_power,
    heat_semigroup,
    j_range,
    lambda_table,
    quadrature_nodes,
    resolvent,
    sqrt_via_resolvent,
    unit_mode,
)


def _random_ss(domain, rng, decay=1.0):
    lam = lambda_table(domain)
    coeff = rng.uniform(-1.0, 1.0, lam.shape) * lam ** (-decay / 2.0)
    return SpectralField(domain, "SS", coeff)


# -- profile ---------------------------------------------------------------


def test_chi_plateaus_and_interior():
    prof = DyadicProfile()
    s = np.array([0.25, 0.999, 1.0, 1.5, 2.0, 2.001, 64.0])
    chi = prof.chi(s)
    assert np.all(chi[:3] == 1.0)
    assert 0.0 < chi[3] < 1.0
    assert np.all(chi[4:] == 0.0)


def test_chi_is_monotone_on_transition():
    # high-order polyval leaves ~1e-11 round-off wiggle near the flat tail
    s = np.linspace(1.0, 2.0, 301)
    for k in range(1, 8):
        chi = DyadicProfile(k).chi(s)
        assert np.all(np.diff(chi) <= 1e-10)


def test_chi_endpoint_derivatives_vanish():
    # C^k matching: the one-sided slope at the edges is O(h^k), and at that
    # scale only; the constant covers the smoothstep leading coefficient
    h = 1e-3
    for k in (1, 2, 3):
        prof = DyadicProfile(k)
        for edge, inside in ((1.0, 1.0 + h), (2.0, 2.0 - h)):
            slope = abs(prof.chi(np.array([inside]))[0] - prof.chi(np.array([edge]))[0]) / h
            assert slope <= 200.0 * h**k
            assert slope > h ** (k + 1)


def test_phi_support():
    prof = DyadicProfile()
    s = np.array([0.49, 0.5, 2.0, 2.5])
    phi = prof.phi(s)
    assert np.all(phi == 0.0)
    interior = prof.phi(np.array([1.0]))
    assert interior[0] == 1.0  # chi(1)=1, chi(2)=0


def test_phi_telescopes_to_one():
    prof = DyadicProfile(3)
    s = np.geomspace(1.0, 100.0, 57)
    total = sum(prof.phi(s / 2.0**j) for j in range(-4, 12))
    np.testing.assert_allclose(total, 1.0, atol=1e-13)


def test_sharpness_validation():
    with pytest.raises(ValueError):
        DyadicProfile(0)
    with pytest.raises(ValueError):
        DyadicProfile(8)
    assert build_dyadic_profile(4).sharpness == 4


def test_j_range_brackets_spectrum(square16):
    js = list(j_range(square16, (16, 16)))
    lam = lambda_table(square16)
    lo, hi = math.sqrt(lam.min()), math.sqrt(lam.max())
    assert 2.0 ** (js[0] + 1) <= lo
    assert 2.0 ** (js[-1] - 1) >= hi


# -- multipliers -----------------------------------------------------------


def test_heat_semigroup_single_mode(square16):
    f = unit_mode(square16, 2, 3)
    lam = eigenvalue(square16, 2, 3)
    out = heat_semigroup(f, 0.37)
    np.testing.assert_allclose(out.coefficients, math.exp(-0.37 * lam) * f.coefficients, rtol=1e-14)
    assert np.array_equal(heat_semigroup(f, 0.0).coefficients, f.coefficients)
    with pytest.raises(ValueError):
        heat_semigroup(f, -1e-3)


def test_heat_semigroup_composes(square16, rng):
    f = _random_ss(square16, rng)
    a = heat_semigroup(heat_semigroup(f, 0.1), 0.2)
    b = heat_semigroup(f, 0.3)
    np.testing.assert_allclose(a.coefficients, b.coefficients, rtol=1e-13)


def test_fractional_power_single_mode(square16):
    f = unit_mode(square16, 1, 1)
    out = fractional_power(f, 1.0)
    np.testing.assert_allclose(out.coefficients[0, 0], math.sqrt(2.0), rtol=1e-14)
    half = fractional_power(f, 0.5)
    np.testing.assert_allclose(half.coefficients[0, 0], 2.0**0.25, rtol=1e-14)


def test_fractional_power_inverts(square16, rng):
    f = _random_ss(square16, rng)
    back = fractional_power(fractional_power(f, 0.7), -0.7)
    np.testing.assert_allclose(back.coefficients, f.coefficients, rtol=1e-12)


def test_resolvent_identity(square16, rng):
    # R(mu) - R(nu) = (nu - mu) R(mu) (-Delta) R(nu)
    f = _random_ss(square16, rng)
    mu, nu = 0.3, 1.7
    lhs = resolvent(f, mu) - resolvent(f, nu)
    from sqgbox import laplacian

    rhs = resolvent(laplacian(resolvent(f, nu)), mu) * -(nu - mu)
    np.testing.assert_allclose(lhs.coefficients, rhs.coefficients, atol=1e-13)
    with pytest.raises(ValueError):
        resolvent(f, -0.1)


def test_apply_multiplier_requires_ss(square16, rng):
    from sqgbox import partial_derivative

    f = _random_ss(square16, rng)
    fx = partial_derivative(f, 1)
    with pytest.raises(ValueError):
        apply_multiplier(fx, lambda s: s)


def test_apply_multiplier_rejects_nonfinite(square16):
    f = unit_mode(square16, 1, 1)
    with pytest.raises(FloatingPointError):
        apply_multiplier(f, lambda s: np.full_like(s, np.nan))


def test_block_multiplier_acts_on_sqrt_lambda(square16):
    f = unit_mode(square16, 2, 3)  # sqrt(lambda) = sqrt(13) ~ 3.6 -> shell j=1
    prof = DyadicProfile()
    b1 = dyadic_block(f, 1, prof)
    expected = prof.phi(np.array([math.sqrt(13.0) / 2.0]))[0]
    np.testing.assert_allclose(b1.coefficients[1, 2], expected, rtol=1e-13)


# -- quadrature ------------------------------------------------------------


def test_quadrature_nodes_integrate_log_exactly():
    spec = QuadratureSpec(16, 1e-4, 1e4)
    mu, w = quadrature_nodes(spec)
    # du/u is constant after the log substitution, so the rule is exact
    assert np.sum(w / mu) == pytest.approx(math.log(1e8), rel=1e-13)


def test_quadrature_nodes_integrate_power():
    spec = QuadratureSpec(32, 1e-3, 1e3)
    mu, w = quadrature_nodes(spec)
    got = np.sum(w * mu**-0.25)
    exact = (1e3**0.75 - 1e-3**0.75) / 0.75
    assert got == pytest.approx(exact, rel=1e-10)


def test_quadrature_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(2, 1e-8, 1e8)
    with pytest.raises(ValueError):
        QuadratureSpec(8, 1e-2, 1e-3)


def test_sqrt_via_resolvent_single_mode(square16):
    f = unit_mode(square16, 1, 1)
    out, bound = sqrt_via_resolvent(f)
    assert out.coefficients[0, 0] == pytest.approx(math.sqrt(2.0), rel=1e-11)
    assert 0.0 < bound < 1e-9


def test_sqrt_via_resolvent_matches_fractional_power(square16, rng):
    f = _random_ss(square16, rng)
    out, _ = sqrt_via_resolvent(f)
    ref = fractional_power(f, 1.0)
    err = np.max(np.abs(out.coefficients - ref.coefficients)) / np.max(np.abs(ref.coefficients))
    assert err <= 1e-9


def test_sqrt_bound_inf_when_bracket_misses(square16):
    f = unit_mode(square16, 1, 1)
    _, bound = sqrt_via_resolvent(f, QuadratureSpec(8, 1.0, 10.0))
    assert math.isinf(bound)


def test_sqrt_scalar_oracle():
    # one-mode domain with lambda = 2 pi^2: compare against sqrt directly
    from sqgbox import DomainSpec

    d = DomainSpec(1.0, 1.0, 1, 1, 4, 4)
    f = unit_mode(d, 1, 1)
    out, _ = sqrt_via_resolvent(f, QuadratureSpec(32, 1e-9, 1e9))
    assert out.coefficients[0, 0] == pytest.approx(math.sqrt(2.0) * math.pi, rel=1e-11)


def test_c0_value():
    assert C0 == pytest.approx(1.0 / math.pi, rel=1e-15)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.26, 80.0))
def test_partition_property(s):
    prof = DyadicProfile(2)
    total = sum(prof.phi(np.array([s / 2.0**j]))[0] for j in range(-4, 10))
    assert abs(total - 1.0) <= 1e-12
