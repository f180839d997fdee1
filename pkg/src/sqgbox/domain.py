"""Spectral fields on a rectangle with homogeneous Dirichlet boundary.

The domain is Omega = (0, L1) x (0, L2).  The Dirichlet Laplacian has
eigenfunctions e_mn(x, y) = sin(m pi x / L1) sin(n pi y / L2), m, n >= 1,
with eigenvalues lambda_mn = pi^2 (m^2 / L1^2 + n^2 / L2^2).  Fields are
real coefficient arrays against per-axis sine (S) or cosine (C) families;
the parity class is the two-letter family pair, "SS" being the eigenbasis.
Differentiation maps S <-> C per axis, so a sine axis with modes 1..M pairs
with a cosine axis carrying modes 0..M (M+1 coefficients); with that
convention single differentiation closes exactly on the band.

Collocation uses interior points x_i = i L / (N + 1), i = 1..N per axis,
with the uniform quadrature weight L / (N + 1).  For sine families the
discrete Gram matrix is exactly diagonal up to full band, so quadrature
analysis is an exact L2 projection for band-limited data; cosine families
carry a rank-two end effect and analysis therefore solves the per-axis
discrete Gram system (least squares in the quadrature metric), which is
exact whenever the sampled function lies in the requested span.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dataclass_field
from functools import lru_cache

import numpy as np

from . import kernels

PARITIES = ("SS", "SC", "CS", "CC")

_FAMILY_PRODUCT = {("S", "S"): "C", ("S", "C"): "S", ("C", "S"): "S", ("C", "C"): "C"}


@dataclass(frozen=True)
class DomainSpec:
    """Rectangle geometry plus default spectral truncation and grid size."""

    L1: float
    L2: float
    M1: int
    M2: int
    N1: int
    N2: int

    def __post_init__(self):
        if not (self.L1 > 0 and self.L2 > 0):
            raise ValueError("domain side lengths must be positive")
        if not (self.M1 >= 1 and self.M2 >= 1):
            raise ValueError("spectral truncation must be at least 1 per axis")
        if self.N1 < self.M1 or self.N2 < self.M2:
            raise ValueError("grid must resolve the spectral truncation (N >= M)")

    @staticmethod
    def square(L: float, M: int, N: int | None = None) -> "DomainSpec":
        if N is None:
            N = M
        return DomainSpec(L, L, M, M, N, N)

    @property
    def lengths(self) -> tuple[float, float]:
        return (self.L1, self.L2)

    @property
    def modes(self) -> tuple[int, int]:
        return (self.M1, self.M2)

    @property
    def grid(self) -> tuple[int, int]:
        return (self.N1, self.N2)


def _validate_parity(parity: str) -> None:
    if parity not in PARITIES:
        raise ValueError(f"parity must be one of {PARITIES}, got {parity!r}")


@dataclass
class SpectralField:
    """Coefficient array against the per-axis families named by ``parity``.

    Shape convention: a sine axis with b modes stores b coefficients
    (modes 1..b), a cosine axis with top mode b stores b+1 coefficients
    (modes 0..b).  ``band`` reports the per-axis top mode either way.
    The field remembers its domain; arithmetic requires matching domain,
    parity, and shape.
    """

    domain: DomainSpec
    parity: str
    coefficients: np.ndarray

    def __post_init__(self):
        _validate_parity(self.parity)
        c = np.asarray(self.coefficients, dtype=np.float64)
        if c.ndim != 2 or c.shape[0] < 1 or c.shape[1] < 1:
            raise ValueError("coefficients must be a 2d array with positive shape")
        self.coefficients = c

    @property
    def band(self) -> tuple[int, int]:
        r1, r2 = self.coefficients.shape
        b1 = r1 if self.parity[0] == "S" else r1 - 1
        b2 = r2 if self.parity[1] == "S" else r2 - 1
        return (b1, b2)

    def copy(self) -> "SpectralField":
        return SpectralField(self.domain, self.parity, self.coefficients.copy())

    def _check_compatible(self, other: "SpectralField") -> None:
        if self.domain != other.domain:
            raise ValueError("fields live on different domains")
        if self.parity != other.parity:
            raise ValueError("fields have different parity classes")
        if self.coefficients.shape != other.coefficients.shape:
            raise ValueError("fields have different coefficient shapes")

    def __add__(self, other: "SpectralField") -> "SpectralField":
        self._check_compatible(other)
        return SpectralField(self.domain, self.parity, self.coefficients + other.coefficients)

    def __sub__(self, other: "SpectralField") -> "SpectralField":
        self._check_compatible(other)
        return SpectralField(self.domain, self.parity, self.coefficients - other.coefficients)

    def __mul__(self, scalar: float) -> "SpectralField":
        return SpectralField(self.domain, self.parity, self.coefficients * float(scalar))

    __rmul__ = __mul__

    def __neg__(self) -> "SpectralField":
        return SpectralField(self.domain, self.parity, -self.coefficients)


@dataclass
class GridField:
    """Interior collocation samples; the value shape fixes the grid."""

    domain: DomainSpec
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 2 or v.shape[0] < 1 or v.shape[1] < 1:
            raise ValueError("values must be a 2d array with positive shape")
        self.values = v

    @property
    def weights(self) -> tuple[float, float]:
        n1, n2 = self.values.shape
        return (self.domain.L1 / (n1 + 1), self.domain.L2 / (n2 + 1))


def unit_mode(domain: DomainSpec, m: int, n: int, amplitude: float = 1.0) -> SpectralField:
    """The eigenfunction coefficient field amplitude * e_mn at domain truncation."""
    if not (1 <= m <= domain.M1 and 1 <= n <= domain.M2):
        raise IndexError(f"mode ({m},{n}) outside truncation ({domain.M1},{domain.M2})")
    c = np.zeros((domain.M1, domain.M2))
    c[m - 1, n - 1] = amplitude
    return SpectralField(domain, "SS", c)


def eigenvalue(domain: DomainSpec, m: int, n: int) -> float:
    """lambda_mn = pi^2 (m^2/L1^2 + n^2/L2^2) for modes inside the truncation."""
    if not (1 <= m <= domain.M1 and 1 <= n <= domain.M2):
        raise IndexError(f"mode ({m},{n}) outside truncation ({domain.M1},{domain.M2})")
    return float(np.pi**2 * ((m / domain.L1) ** 2 + (n / domain.L2) ** 2))


@lru_cache(maxsize=None)
def _lambda_table(L1: float, L2: float, r1: int, r2: int) -> np.ndarray:
    m = np.arange(1, r1 + 1, dtype=np.float64)
    n = np.arange(1, r2 + 1, dtype=np.float64)
    tab = np.pi**2 * ((m[:, None] / L1) ** 2 + (n[None, :] / L2) ** 2)
    tab.setflags(write=False)
    return tab


def lambda_table(field_or_domain, band: tuple[int, int] | None = None) -> np.ndarray:
    """Eigenvalue table lambda_mn over the sine band of an SS field (read-only)."""
    if isinstance(field_or_domain, SpectralField):
        f = field_or_domain
        if f.parity != "SS":
            raise ValueError("eigenvalue table applies to SS fields only")
        b1, b2 = f.coefficients.shape
        return _lambda_table(f.domain.L1, f.domain.L2, b1, b2)
    domain = field_or_domain
    b1, b2 = band if band is not None else (domain.M1, domain.M2)
    return _lambda_table(domain.L1, domain.L2, b1, b2)


@lru_cache(maxsize=None)
def _basis(n: int, r: int, family: str) -> np.ndarray:
    # Angles i*m*pi/(n+1) do not involve L: x_i * (m pi / L) = pi i m / (n+1).
    i = np.arange(1, n + 1, dtype=np.float64)[:, None]
    if family == "S":
        m = np.arange(1, r + 1, dtype=np.float64)[None, :]
        B = np.sin(np.pi * i * m / (n + 1))
    else:
        m = np.arange(0, r, dtype=np.float64)[None, :]
        B = np.cos(np.pi * i * m / (n + 1))
    B.setflags(write=False)
    return B


@lru_cache(maxsize=None)
def _analysis(n: int, r: int, family: str) -> np.ndarray:
    if r > n:
        raise ValueError(f"cannot analyze {r} {family}-coefficients from {n} points")
    B = _basis(n, r, family)
    if family == "S":
        # Discrete sine Gram is exactly (n+1)/2 * identity for modes <= n.
        A = (2.0 / (n + 1)) * B.T
    else:
        A = np.linalg.solve(B.T @ B, B.T.copy())
    A.setflags(write=False)
    return A


def grid_points(domain: DomainSpec, grid: tuple[int, int] | None = None) -> tuple[np.ndarray, np.ndarray]:
    n1, n2 = grid if grid is not None else (domain.N1, domain.N2)
    x = domain.L1 * np.arange(1, n1 + 1) / (n1 + 1)
    y = domain.L2 * np.arange(1, n2 + 1) / (n2 + 1)
    return x, y


def synthesize(field: SpectralField, grid: tuple[int, int] | None = None) -> GridField:
    """Evaluate the field at the interior collocation points of ``grid``."""
    n1, n2 = grid if grid is not None else (field.domain.N1, field.domain.N2)
    r1, r2 = field.coefficients.shape
    B1 = _basis(n1, r1, field.parity[0])
    B2 = _basis(n2, r2, field.parity[1])
    return GridField(field.domain, B1 @ field.coefficients @ B2.T)


def analyze(
    grid_field: GridField,
    parity: str,
    modes: tuple[int, int] | None = None,
) -> SpectralField:
    """Project grid samples onto the requested parity span.

    Per axis this is the orthogonal projection in the discrete quadrature
    metric (a plain weighted sine sum for S axes, a Gram solve for C axes).
    ``modes`` is the per-axis sine band; a cosine axis stores modes
    0..modes, i.e. modes+1 coefficients.  For samples of a function lying in
    the requested span the recovery is exact; an SS projection of a
    band-limited product is the exact continuum L2 projection as long as the
    product band plus the target band stays below twice the grid Nyquist.
    """
    _validate_parity(parity)
    n1, n2 = grid_field.values.shape
    if modes is None:
        modes = (grid_field.domain.M1, grid_field.domain.M2)
    r1 = modes[0] + (1 if parity[0] == "C" else 0)
    r2 = modes[1] + (1 if parity[1] == "C" else 0)
    A1 = _analysis(n1, r1, parity[0])
    A2 = _analysis(n2, r2, parity[1])
    return SpectralField(grid_field.domain, parity, A1 @ grid_field.values @ A2.T)


def full_band(grid_shape: tuple[int, int], parity: str) -> tuple[int, int]:
    """Largest per-axis sine band analyzable from ``grid_shape`` points."""
    _validate_parity(parity)
    n1, n2 = grid_shape
    b1 = n1 if parity[0] == "S" else n1 - 1
    b2 = n2 if parity[1] == "S" else n2 - 1
    return (b1, b2)


def partial_derivative(field: SpectralField, axis: int) -> SpectralField:
    """Exact spectral derivative along ``axis`` (1 or 2); flips S <-> C there.

    d/dx sin(m k x) = (m k) cos(m k x) and d/dx cos(m k x) = -(m k) sin(m k x)
    with k = pi/L, so an S axis with modes 1..b maps onto a C axis with modes
    0..b (zero constant), and a C axis with modes 0..b maps onto an S axis
    with modes 1..b; both directions are exact on the band.
    """
    if axis not in (1, 2):
        raise ValueError("axis must be 1 or 2")
    fam = field.parity[axis - 1]
    L = field.domain.L1 if axis == 1 else field.domain.L2
    A = field.coefficients if axis == 1 else field.coefficients.T
    r = A.shape[0]
    if fam == "S":
        scale = np.pi * np.arange(1, r + 1) / L
        out = np.zeros((r + 1, A.shape[1]))
        out[1:] = scale[:, None] * A
        new_fam = "C"
    else:
        if r < 2:
            out = np.zeros((1, A.shape[1]))
        else:
            scale = np.pi * np.arange(1, r) / L
            out = -scale[:, None] * A[1:]
        new_fam = "S"
    if axis == 2:
        out = out.T
        parity = field.parity[0] + new_fam
    else:
        parity = new_fam + field.parity[1]
    return SpectralField(field.domain, parity, out)


def laplacian(field: SpectralField) -> SpectralField:
    """Second-derivative Laplacian; restores the input parity and shape."""
    fxx = partial_derivative(partial_derivative(field, 1), 1)
    fyy = partial_derivative(partial_derivative(field, 2), 2)
    return fxx + fyy


def product_parity(pa: str, pb: str) -> str:
    """Parity class of a pointwise product, combined axis by axis."""
    _validate_parity(pa)
    _validate_parity(pb)
    return _FAMILY_PRODUCT[(pa[0], pb[0])] + _FAMILY_PRODUCT[(pa[1], pb[1])]


def lp_norm(grid_field: GridField, p: float) -> float:
    """Composite interior-point L^p norm; p = inf gives the grid maximum."""
    v = grid_field.values
    if np.isinf(p):
        return float(np.max(np.abs(v)))
    if p < 1:
        raise ValueError("p must be >= 1 or inf")
    h1, h2 = grid_field.weights
    w = h1 * h2
    if p == 2:
        return float(np.sqrt(w * np.vdot(v, v).real))
    if p == 1:
        return float(w * np.sum(np.abs(v)))
    return float((w * kernels.power_sum(v, p)) ** (1.0 / p))


def inner_product(a: GridField, b: GridField) -> float:
    """Quadrature L2 pairing of two grid fields on the same grid."""
    if a.domain != b.domain:
        raise ValueError("grid fields live on different domains")
    if a.values.shape != b.values.shape:
        raise ValueError("grid fields sampled on different grids")
    h1, h2 = a.weights
    return float(h1 * h2 * np.vdot(a.values, b.values).real)


def _axis_weight(L: float, r: int, family: str) -> np.ndarray:
    # int_0^L sin^2 = L/2; int_0^L cos^2 = L/2 for m >= 1 and L for m = 0.
    w = np.full(r, L / 2.0)
    if family == "C":
        w[0] = L
    return w


def spectral_inner(a: SpectralField, b: SpectralField) -> float:
    """Exact continuum L2 inner product of two same-parity fields."""
    a._check_compatible(b)
    r1, r2 = a.coefficients.shape
    w1 = _axis_weight(a.domain.L1, r1, a.parity[0])
    w2 = _axis_weight(a.domain.L2, r2, a.parity[1])
    return float(np.einsum("ij,ij,i,j->", a.coefficients, b.coefficients, w1, w2))


def spectral_norm(f: SpectralField) -> float:
    """Exact continuum L2 norm via Parseval in the field's parity basis."""
    return float(np.sqrt(max(spectral_inner(f, f), 0.0)))


def evaluate_at(field: SpectralField, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Tensor-evaluate the field at arbitrary coordinates (len(x), len(y))."""
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    y = np.atleast_1d(np.asarray(y, dtype=np.float64))
    r1, r2 = field.coefficients.shape
    if field.parity[0] == "S":
        B1 = np.sin(np.outer(x, np.pi * np.arange(1, r1 + 1) / field.domain.L1))
    else:
        B1 = np.cos(np.outer(x, np.pi * np.arange(0, r1) / field.domain.L1))
    if field.parity[1] == "S":
        B2 = np.sin(np.outer(y, np.pi * np.arange(1, r2 + 1) / field.domain.L2))
    else:
        B2 = np.cos(np.outer(y, np.pi * np.arange(0, r2) / field.domain.L2))
    return B1 @ field.coefficients @ B2.T


def dealias_grid(band: tuple[int, int], factor: int = 2) -> tuple[int, int]:
    """Grid on which products of ``band``-limited fields are analyzed exactly."""
    if factor < 2:
        raise ValueError("dealias factor must be at least 2")
    return (factor * band[0] + 1, factor * band[1] + 1)


def pointwise_product(a: SpectralField, b: SpectralField, grid: tuple[int, int]) -> GridField:
    """Synthesize both fields on ``grid`` and multiply pointwise."""
    if a.domain != b.domain:
        raise ValueError("fields live on different domains")
    ga = synthesize(a, grid)
    gb = synthesize(b, grid)
    return GridField(a.domain, ga.values * gb.values)


# ---------------------------------------------------------------------------
# Snapshot file format: one ASCII JSON header line, then a raw little-endian
# float64 row-major payload.  Round trips are bit exact.
# ---------------------------------------------------------------------------


def write_field(path, field: SpectralField) -> None:
    header = {
        "lengths": [field.domain.L1, field.domain.L2],
        "modes": [field.domain.M1, field.domain.M2],
        "grid": [field.domain.N1, field.domain.N2],
        "parity": field.parity,
        "shape": list(field.coefficients.shape),
        "dtype": "f64",
        "layout": "row-major",
    }
    with open(path, "wb") as fh:
        fh.write((json.dumps(header, sort_keys=True) + "\n").encode("ascii"))
        fh.write(np.ascontiguousarray(field.coefficients, dtype="<f8").tobytes())


def read_field(path) -> SpectralField:
    with open(path, "rb") as fh:
        header_line = fh.readline()
        payload = fh.read()
    header = json.loads(header_line.decode("ascii"))
    if header.get("dtype") != "f64" or header.get("layout") != "row-major":
        raise ValueError("unsupported snapshot payload format")
    shape = tuple(header["shape"])
    expected = 8 * shape[0] * shape[1]
    if len(payload) != expected:
        raise ValueError(f"snapshot payload has {len(payload)} bytes, expected {expected}")
    coeff = np.frombuffer(payload, dtype="<f8").reshape(shape).copy()
    domain = DomainSpec(
        header["lengths"][0],
        header["lengths"][1],
        header["modes"][0],
        header["modes"][1],
        header["grid"][0],
        header["grid"][1],
    )
    return SpectralField(domain, header["parity"], coeff)
