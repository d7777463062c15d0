"""Time each hot kernel compiled with numba against its fallback.

    python benchmarks/bench_kernels.py [--repeat N]

The fallback is the uncompiled Python loop for the combinatorial kernels and
the vectorised numpy path for the Lobachevskii array kernel, i.e. exactly what
runs under RAP_NUMBA=0.
"""

import argparse
import time

import numpy as np

from rapoly import kernels
from rapoly._accel import NUMBA_ENABLED, python_impl
from rapoly.gluing import composition
from rapoly.lobell import build_lobell
from rapoly.polyhedron import rotation_arrays


def best_of(fn, repeat):
    fn()  # warm-up, includes compilation
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not NUMBA_ENABLED:
        print("numba disabled (RAP_NUMBA=0 or not installed): both columns run the fallback")

    p = composition(build_lobell(8), 1, build_lobell(8), 1, 0, True).polyhedron
    nbr, deg = rotation_arrays(p)
    ptr, face, edge, eu, ev = p.dual_csr
    nv = len(p.vertices)
    theta = np.random.default_rng(0).uniform(-10, 10, 200_000)
    coeffs = kernels.CLAUSEN_COEFFS

    rooted = python_impl(kernels.rooted_code)
    roots = python_impl(kernels.all_roots)
    cycles = python_impl(kernels.prismatic_cycles)
    cases = [
        (
            f"canonical code ({p.num_faces} faces)",
            lambda: kernels.canonical_code(nbr, deg),
            lambda: rooted(nbr, deg, roots(deg)),
        ),
        (
            "prismatic 5-circuits",
            lambda: kernels.prismatic_cycles(ptr, face, edge, eu, ev, nv, 5, 4096),
            lambda: cycles(ptr, face, edge, eu, ev, nv, 5, 4096),
        ),
        (
            f"Lobachevskii, {theta.size} angles",
            lambda: kernels._lobachevsky_loop(theta, coeffs),
            lambda: kernels._lobachevsky_numpy(theta, coeffs),
        ),
    ]
    print(f"{'kernel':<34} {'numba [ms]':>11} {'fallback [ms]':>14} {'speed-up':>9}")
    for name, fast, slow in cases:
        tf = best_of(fast, args.repeat)
        ts = best_of(slow, max(1, args.repeat // 2))
        print(f"{name:<34} {tf * 1e3:>11.3f} {ts * 1e3:>14.3f} {ts / tf:>8.1f}x")


if __name__ == "__main__":
    main()
