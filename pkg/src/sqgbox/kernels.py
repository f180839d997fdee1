"""Loop-bound numeric kernels with a numba fast path and a numpy fallback.

The numba path is used when numba imports cleanly; setting the environment
variable ``SQGBOX_DISABLE_NUMBA=1`` before import forces the numpy fallback.
``BACKEND`` records which path is active.  Both paths are kept importable so
they can be benchmarked against each other (see benchmarks/bench_kernels.py).
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via the env flag instead
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("SQGBOX_DISABLE_NUMBA", "") != "1"
BACKEND = "numba" if USE_NUMBA else "numpy"


def resolvent_quadrature_table_numpy(lam: np.ndarray, mu: np.ndarray, w: np.ndarray) -> np.ndarray:
    """sum_k w_k mu_k^{-1/2} lam/(1 + mu_k lam), accumulated node by node.

    Node-wise accumulation avoids a modes-by-nodes temporary, which for wide
    quadrature brackets would dwarf the coefficient array itself.
    """
    acc = np.zeros_like(lam)
    for k in range(mu.shape[0]):
        acc += (w[k] * mu[k] ** -0.5) * (lam / (1.0 + mu[k] * lam))
    return acc


def power_sum_numpy(values: np.ndarray, p: float) -> float:
    return float(np.sum(np.abs(values) ** p))


if HAVE_NUMBA:

    @numba.njit(cache=True)
    def resolvent_quadrature_table_numba(lam, mu, w):  # pragma: no cover - thin jit wrapper
        # node loop outermost: the inner loop is dependence-free so it
        # vectorizes, and the accumulation order matches the numpy path
        out = np.zeros_like(lam)
        for k in range(mu.shape[0]):
            c = w[k] * mu[k] ** -0.5
            m = mu[k]
            for i in range(lam.shape[0]):
                out[i] += c * (lam[i] / (1.0 + m * lam[i]))
        return out

    @numba.njit(cache=True)
    def power_sum_numba(values, p):  # pragma: no cover - thin jit wrapper
        s = 0.0
        for i in range(values.shape[0]):
            s += abs(values[i]) ** p
        return s

else:  # pragma: no cover
    resolvent_quadrature_table_numba = None
    power_sum_numba = None


def resolvent_quadrature_table(lam: np.ndarray, mu: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Quadrature reduction of the resolvent square-root integrand over nodes.

    Returns, for each eigenvalue in ``lam``, the value
    ``sum_k w_k mu_k^{-3/2} (mu_k lam / (1 + mu_k lam))``; shape follows ``lam``.
    """
    lam = np.ascontiguousarray(lam, dtype=np.float64)
    mu = np.ascontiguousarray(mu, dtype=np.float64)
    w = np.ascontiguousarray(w, dtype=np.float64)
    flat = lam.ravel()
    if USE_NUMBA:
        out = resolvent_quadrature_table_numba(flat, mu, w)
    else:
        out = resolvent_quadrature_table_numpy(flat, mu, w)
    return out.reshape(lam.shape)


def power_sum(values: np.ndarray, p: float) -> float:
    """sum |v|^p over all entries of ``values``."""
    flat = np.ascontiguousarray(values, dtype=np.float64).ravel()
    if USE_NUMBA:
        return float(power_sum_numba(flat, float(p)))
    return power_sum_numpy(flat, float(p))
