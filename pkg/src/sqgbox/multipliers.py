"""Spectral multipliers for the Dirichlet Laplacian: dyadic blocks, heat
semigroup, fractional powers, and the resolvent-quadrature square root.

All multipliers act diagonally on SS coefficient arrays through functions of
the spectral parameter sqrt(lambda_mn).  The dyadic profile is a smoothed
indicator chi equal to 1 on (0, 1], 0 on [2, inf), interpolated by a
smoothstep in log2; phi(s) = chi(s) - chi(2s) is supported in [1/2, 2] and
the shifted family phi(2^-j s) sums to 1 exactly on the resolved spectrum.

The square root of the Laplacian is also computable without fractional
powers through the resolvent identity

    Lambda f = c0 int_0^inf mu^(-3/2) (f - (1 - mu Delta)^(-1) f) dmu,

with c0 = 1/pi fixed by int_0^inf mu^(-3/2) mu lam/(1+mu lam) dmu
= pi sqrt(lam).  The quadrature is composite Gauss-Legendre on log-spaced
panels; the truncated integral ends are compensated in closed form by
term-wise integration of the resolvent series (integer powers of the
Laplacian only), and the first omitted series term is reported as the
truncation-error bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .domain import DomainSpec, SpectralField, lambda_table

C0 = 1.0 / math.pi


@lru_cache(maxsize=None)
def _smoothstep_coeffs(k: int) -> np.ndarray:
    # S_k(t) = t^(k+1) sum_i C(k+i, i) C(2k+1, k-i) (-t)^i, the unique poly
    # with S(0)=0, S(1)=1 and k vanishing derivatives at both ends.
    coeffs = np.zeros(2 * k + 2)
    for i in range(k + 1):
        coeffs[k + 1 + i] = math.comb(k + i, i) * math.comb(2 * k + 1, k - i) * (-1.0) ** i
    return coeffs[::-1].copy()  # highest degree first, for np.polyval


def _smoothstep(t: np.ndarray, k: int) -> np.ndarray:
    return np.polyval(_smoothstep_coeffs(k), t)


@dataclass(frozen=True)
class DyadicProfile:
    """Smoothed dyadic cutoff; ``sharpness`` is the smoothstep order."""

    sharpness: int = 2

    def __post_init__(self):
        if not (1 <= self.sharpness <= 7):
            raise ValueError("sharpness must be an integer in 1..7")

    def chi(self, s) -> np.ndarray:
        s = np.asarray(s, dtype=np.float64)
        out = np.ones_like(s)
        out[s >= 2.0] = 0.0
        mid = (s > 1.0) & (s < 2.0)
        if np.any(mid):
            out[mid] = 1.0 - _smoothstep(np.log2(s[mid]), self.sharpness)
        return out

    def phi(self, s) -> np.ndarray:
        s = np.asarray(s, dtype=np.float64)
        return self.chi(s) - self.chi(2.0 * s)


def build_dyadic_profile(sharpness: int = 2) -> DyadicProfile:
    return DyadicProfile(int(sharpness))


def j_range(domain: DomainSpec, band: tuple[int, int] | None = None) -> range:
    """Dyadic indices covering the resolved spectrum with one spare on each end."""
    lam = lambda_table(domain, band)
    s_min = math.sqrt(float(lam.min()))
    s_max = math.sqrt(float(lam.max()))
    j_min = math.floor(math.log2(s_min)) - 1
    j_max = math.ceil(math.log2(s_max)) + 1
    return range(j_min, j_max + 1)


def apply_multiplier(field: SpectralField, fn) -> SpectralField:
    """Apply m(sqrt(lambda)) diagonally; the field must be SS."""
    if field.parity != "SS":
        raise ValueError("spectral multipliers act on SS fields only")
    vals = np.asarray(fn(np.sqrt(lambda_table(field))), dtype=np.float64)
    if vals.shape != field.coefficients.shape:
        raise ValueError("multiplier did not preserve the coefficient shape")
    if not np.all(np.isfinite(vals)):
        raise FloatingPointError("multiplier produced non-finite values")
    return SpectralField(field.domain, "SS", field.coefficients * vals)


def dyadic_block(field: SpectralField, j: int, profile: DyadicProfile) -> SpectralField:
    """Frequency block phi(2^-j sqrt(lambda)) applied to the field."""
    return apply_multiplier(field, lambda s: profile.phi(np.ldexp(s, -j)))


def heat_semigroup(field: SpectralField, t: float) -> SpectralField:
    """e^{t Delta} via weights exp(-t lambda); t must be nonnegative."""
    if t < 0:
        raise ValueError("heat semigroup requires t >= 0")
    return apply_multiplier(field, lambda s: np.exp(-t * s * s))


def fractional_power(field: SpectralField, s: float) -> SpectralField:
    """Lambda^s via weights lambda^{s/2}; any real s, the spectrum is positive."""
    return apply_multiplier(field, lambda sp: sp ** float(s))


def resolvent(field: SpectralField, mu: float) -> SpectralField:
    """(1 - mu Delta)^{-1} via weights 1/(1 + mu lambda); mu must be >= 0."""
    if mu < 0:
        raise ValueError("resolvent parameter must be nonnegative")
    return apply_multiplier(field, lambda s: 1.0 / (1.0 + mu * s * s))


@dataclass(frozen=True)
class QuadratureSpec:
    """Log-spaced composite Gauss-Legendre rule for the mu integral."""

    nodes_per_decade: int = 32
    mu_min: float = 1e-8
    mu_max: float = 1e8

    def __post_init__(self):
        if self.nodes_per_decade < 4:
            raise ValueError("need at least 4 quadrature nodes per decade")
        if not (0 < self.mu_min < self.mu_max):
            raise ValueError("require 0 < mu_min < mu_max")


_GL_ORDER = 4


def quadrature_nodes(spec: QuadratureSpec) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights with the dmu Jacobian folded in: sum w F(mu) ~ int F."""
    n_decades = math.log10(spec.mu_max / spec.mu_min)
    n_panels = max(1, math.ceil(n_decades * spec.nodes_per_decade / _GL_ORDER))
    edges = np.linspace(math.log(spec.mu_min), math.log(spec.mu_max), n_panels + 1)
    x, w = np.polynomial.legendre.leggauss(_GL_ORDER)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    t = (half[:, None] * x[None, :] + mid[:, None]).ravel()
    wt = (half[:, None] * w[None, :]).ravel()
    mu = np.exp(t)
    return mu, wt * mu


def sqrt_via_resolvent(
    field: SpectralField, spec: QuadratureSpec | None = None
) -> tuple[SpectralField, float]:
    """Lambda f by resolvent quadrature; returns (result, relative truncation bound).

    The quadrature covers [mu_min, mu_max]; the omitted ends are added in
    closed form from the series of the integrand, head
    c0 (2 sqrt(mu_min) lam - (2/3) mu_min^{3/2} lam^2) and tail
    c0 (2 / sqrt(mu_max) - (2/3) mu_max^{-3/2} / lam), valid when
    lam_max mu_min < 1 < lam_min mu_max.  The reported bound is the first
    omitted series term, relative to sqrt(lam); it is inf when the bracket
    fails to straddle the spectrum, in which case the caller should widen it.
    """
    if field.parity != "SS":
        raise ValueError("spectral multipliers act on SS fields only")
    if spec is None:
        spec = QuadratureSpec()
    lam = lambda_table(field)
    mu, w = quadrature_nodes(spec)
    vals = C0 * kernels.resolvent_quadrature_table(lam, mu, w)
    vals = vals + C0 * (2.0 * math.sqrt(spec.mu_min) * lam - (2.0 / 3.0) * spec.mu_min**1.5 * lam**2)
    vals = vals + C0 * (2.0 / math.sqrt(spec.mu_max) - (2.0 / 3.0) * spec.mu_max**-1.5 / lam)
    out = SpectralField(field.domain, "SS", field.coefficients * vals)
    lam_min, lam_max = float(lam.min()), float(lam.max())
    if lam_max * spec.mu_min < 1.0 < lam_min * spec.mu_max:
        bound = (2.0 / (5.0 * math.pi)) * (
            (lam_max * spec.mu_min) ** 2.5 + (lam_min * spec.mu_max) ** -2.5
        )
    else:
        bound = math.inf
    return out, float(bound)
