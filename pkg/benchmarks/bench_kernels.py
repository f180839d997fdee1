"""Timing comparison of the compiled kernels against the numpy fallback.

Run as a script:

    python3 benchmarks/bench_kernels.py [--repeats 7]

Times the resolvent-quadrature reduction and the fused power sum on a few
problem sizes, once through the numba path (after a warmup call so JIT cost
is not billed) and once through the numpy path, and prints the per-call
medians with the speedup.  The dense synthesis matmul is timed alongside as
context: it is BLAS-bound either way, which is why the transform layer has
no compiled variant.
"""

import argparse
import math
import statistics
import time

import numpy as np

from sqgbox import kernels
from sqgbox.domain import DomainSpec, SpectralField, synthesize


def _time(fn, repeats):
    fn()  # warmup; compiles on first call for the numba path
    out = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        out.append(time.perf_counter() - t0)
    return statistics.median(out)


def bench_resolvent_table(repeats):
    rng = np.random.default_rng(7)
    rows = []
    for modes, nodes in ((32, 256), (64, 1024), (128, 1024)):
        # the jit kernel takes the flattened table, as in the public wrapper
        lam = np.ascontiguousarray(rng.uniform(1.0, 1e4, (modes, modes)).ravel())
        mu = np.geomspace(1e-8, 1e8, nodes)
        w = rng.uniform(0.1, 1.0, nodes)
        t_np = _time(lambda: kernels.resolvent_quadrature_table_numpy(lam, mu, w), repeats)
        row = {"case": f"resolvent table {modes}x{modes}, {nodes} nodes", "numpy": t_np}
        if kernels.HAVE_NUMBA:
            row["numba"] = _time(
                lambda: kernels.resolvent_quadrature_table_numba(lam, mu, w), repeats
            )
        rows.append(row)
    return rows


def bench_power_sum(repeats):
    rng = np.random.default_rng(8)
    rows = []
    for n in (256, 1024):
        v = rng.standard_normal(n * n)
        t_np = _time(lambda: kernels.power_sum_numpy(v, 3.0), repeats)
        row = {"case": f"power sum {n}x{n}, p=3", "numpy": t_np}
        if kernels.HAVE_NUMBA:
            row["numba"] = _time(lambda: kernels.power_sum_numba(v, 3.0), repeats)
        rows.append(row)
    return rows


def bench_synthesis(repeats):
    rng = np.random.default_rng(9)
    rows = []
    for modes, grid in ((64, 128), (128, 256)):
        domain = DomainSpec(math.pi, math.pi, modes, modes, grid, grid)
        f = SpectralField(domain, "SS", rng.standard_normal((modes, modes)))
        t = _time(lambda: synthesize(f), repeats)
        rows.append({"case": f"synthesis {modes}^2 -> {grid}^2 (BLAS)", "numpy": t})
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=7)
    args = parser.parse_args()

    print(f"active backend: {kernels.BACKEND} (numba available: {kernels.HAVE_NUMBA})")
    header = f"{'case':44s} {'numpy':>10s} {'numba':>10s} {'speedup':>8s}"
    print(header)
    print("-" * len(header))
    for section in (bench_resolvent_table, bench_power_sum, bench_synthesis):
        for row in section(args.repeats):
            t_np = row["numpy"]
            if "numba" in row:
                t_nb = row["numba"]
                print(
                    f"{row['case']:44s} {t_np * 1e3:9.3f}ms {t_nb * 1e3:9.3f}ms "
                    f"{t_np / t_nb:7.2f}x"
                )
            else:
                print(f"{row['case']:44s} {t_np * 1e3:9.3f}ms {'-':>10s} {'-':>8s}")


if __name__ == "__main__":
    main()
