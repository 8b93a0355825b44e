"""Timing comparison of the numba kernels against the pure-numpy fallback.

Run twice:

    python benchmarks/bench_accel.py
    FRACLAB_NO_NUMBA=1 python benchmarks/bench_accel.py

or just once with --both, which re-executes itself in a subprocess with the
fallback flag set and prints a side-by-side table.
"""

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np


def bench(fn, *args, repeat=5, warmup=1):
    for _ in range(warmup):
        fn(*args)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def run_benchmarks():
    from fraclab import _accel
    from fraclab.ball_poisson import BallProblem, PoissonKernel, solve
    from fraclab.exterior_data import constant_datum
    from fraclab.quadrature import QuadratureSpec, integrate_1d

    rng = np.random.default_rng(0)
    results = {"numba_active": bool(_accel.NUMBA_ACTIVE)}

    fvals = rng.normal(size=(4096, 15))
    halves = rng.uniform(0.1, 1.0, 4096)
    results["panel_reduce_4096"] = bench(_accel.panel_reduce, fvals, halves)

    y2 = rng.uniform(1.1, 9.0, 200_000)
    d2 = rng.uniform(0.01, 4.0, 200_000)
    results["poisson_kernel_200k"] = bench(
        _accel.poisson_kernel_values, 0.19, y2, d2, 0.5, 2, 1.0 / np.pi
    )

    vals = rng.normal(size=1_000_000)
    results["kahan_sum_1M"] = bench(_accel.kahan_sum, vals)

    spec = QuadratureSpec(rel_tol=1e-10, abs_tol=1e-13)
    f = lambda x: np.sqrt(np.abs(np.sin(5.0 * x)))
    results["adaptive_1d_rough"] = bench(
        integrate_1d, f, 0.0, 2.0, spec, repeat=3
    )

    problem = BallProblem(PoissonKernel(2, 0.5), constant_datum(1.0, 2))
    solve_spec = QuadratureSpec(rel_tol=1e-8, abs_tol=1e-11)
    results["ball_solve_d2"] = bench(
        solve, problem, np.array([0.99, 0.0]), solve_spec, repeat=3
    )
    return results


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--both", action="store_true",
                        help="also run the pure-numpy fallback and compare")
    parser.add_argument("--json", action="store_true",
                        help="emit raw JSON instead of a table")
    args = parser.parse_args()

    mine = run_benchmarks()
    if args.json:
        print(json.dumps(mine))
        return

    mode = "numba" if mine["numba_active"] else "numpy fallback"
    if not args.both:
        print(f"# mode: {mode}")
        for k, v in mine.items():
            if k != "numba_active":
                print(f"{k:24s} {v * 1e3:10.3f} ms")
        return

    env = dict(os.environ, FRACLAB_NO_NUMBA="1")
    out = subprocess.run(
        [sys.executable, os.path.abspath(__file__), "--json"],
        capture_output=True, text=True, env=env, check=True,
    )
    other = json.loads(out.stdout)
    print(f"{'benchmark':24s} {'numba (ms)':>12s} {'numpy (ms)':>12s} {'speedup':>9s}")
    for k in mine:
        if k == "numba_active":
            continue
        a, b = mine[k], other[k]
        fast, slow = (a, b) if mine["numba_active"] else (b, a)
        print(f"{k:24s} {fast * 1e3:12.3f} {slow * 1e3:12.3f} {slow / fast:8.2f}x")


if __name__ == "__main__":
    main()
