#!/usr/bin/env python3
"""Best-of-N timings for the compiled kernels against their numpy twins.

Run from the repository root after installing the package:

    python3 benchmarks/bench_kernels.py

Each kernel is timed on a fixed deterministic workload; the compiled path
is called once per workload before timing so compilation stays out of the
measured region.  Set SPECTRAL_CERTIFY_NUMBA=0 to disable the compiled
path, in which case only the numpy column is reported.
"""

import argparse
import time

import numpy as np

from spectral_certify import _kernels
from spectral_certify.geometry import regular_polygon
from spectral_certify.mesh import mesh_polygon


def bench(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def max_difference(a, b):
    """Largest absolute discrepancy across (tuples of) result arrays."""
    if isinstance(a, tuple):
        return max(max_difference(x, y) for x, y in zip(a, b))
    if a.shape != b.shape:
        return float("inf")
    if a.dtype == bool:
        return float((a != b).sum())
    return float(np.abs(a - b).max()) if a.size else 0.0


def workloads():
    rng = np.random.default_rng(20240817)

    # element matrices on a real refined mesh, not synthetic triangles
    mesh = mesh_polygon(regular_polygon(6), 7)
    coords = mesh.vertices[mesh.triangles]

    points = rng.uniform(-1.0, 1.0, size=(200_000, 2))
    sites = rng.uniform(-1.0, 1.0, size=(256, 2))

    candidates = rng.uniform(0.0, 10.0, size=(20_000, 2))
    existing = np.empty((0, 2))

    normals, offsets = regular_polygon(64).edge_halfplanes()
    query = rng.uniform(-1.2, 1.2, size=(500_000, 2))

    return [
        ("p1_element_matrices", (coords,), coords.shape[0]),
        ("min_site_distance", (points, sites), points.shape[0]),
        ("greedy_net", (candidates, existing, 0.35, False), candidates.shape[0]),
        ("points_in_halfplanes", (query, normals, offsets, 1e-12), query.shape[0]),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument(
        "--repeat", type=int, default=5, help="timing repetitions, best is kept"
    )
    args = ap.parse_args()

    if not _kernels.NUMBA_ENABLED:
        print("compiled path disabled or unavailable; timing the numpy twins only")

    rows = []
    for name, fargs, n in workloads():
        f_np = getattr(_kernels, name + "_numpy")
        t_np = bench(f_np, fargs, args.repeat)
        if _kernels.NUMBA_ENABLED:
            f_nb = getattr(_kernels, name + "_numba")
            f_nb(*fargs)  # warm-up: compile before the timed region
            diff = max_difference(f_np(*fargs), f_nb(*fargs))
            t_nb = bench(f_nb, fargs, args.repeat)
            rows.append((name, n, t_np, t_nb, t_np / t_nb, diff))
        else:
            rows.append((name, n, t_np, None, None, None))

    header = (
        f"{'kernel':<22} {'n':>8} {'numpy [s]':>12} {'numba [s]':>12} "
        f"{'speedup':>8} {'max diff':>10}"
    )
    print(header)
    print("-" * len(header))
    for name, n, t_np, t_nb, speedup, diff in rows:
        if t_nb is None:
            print(f"{name:<22} {n:>8} {t_np:>12.6f} {'-':>12} {'-':>8} {'-':>10}")
        else:
            print(
                f"{name:<22} {n:>8} {t_np:>12.6f} {t_nb:>12.6f} "
                f"{speedup:>7.1f}x {diff:>10.2e}"
            )


if __name__ == "__main__":
    main()
