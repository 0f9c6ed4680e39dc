"""Benchmark the two ball-count search backends on the workloads that the
concentration estimators actually produce: 1-D lattice sums and low-
dimensional projected point clouds.

Run:  python3 benchmarks/bench_ballsearch.py [--trials 200000] [--centers 2048]
"""

import argparse
import time

import numpy as np

from braesslab import _ballsearch_py, ballsearch
from braesslab.smallball import BernoulliSumSpec, sample_sums


def backends():
    out = [("python", _ballsearch_py.max_ball_count)]
    try:
        from braesslab import _ballsearch_cy

        out.insert(0, ("compiled", _ballsearch_cy.max_ball_count))
    except ImportError:
        pass
    return out


def workload_1d(trials, rng):
    spec = BernoulliSumSpec((1.0,) * 100, 0.5)
    return sample_sums(spec, (trials,), rng)[:, None], 1.0


def workload_3d(trials, rng):
    spec = BernoulliSumSpec((1.0,) * 50, 0.5)
    x = sample_sums(spec, (trials, 3), rng)
    basis, _ = np.linalg.qr(rng.standard_normal((3, 3)))
    return np.ascontiguousarray(x @ basis), 3.0**0.5


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=200_000)
    ap.add_argument("--centers", type=int, default=2048)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()
    rng = np.random.Generator(np.random.Philox(key=1))

    print(f"active backend: {ballsearch.BACKEND}")
    for wname, maker in (("1d-lattice", workload_1d), ("3d-projected", workload_3d)):
        points, radius = maker(args.trials, rng)
        points = np.ascontiguousarray(points, dtype=float)
        centers = points[: args.centers]
        print(f"\n{wname}: {points.shape[0]} points, {centers.shape[0]} centers")
        reference = None
        for bname, fn in backends():
            best = float("inf")
            for _ in range(args.repeats):
                t0 = time.perf_counter()
                result = fn(points, centers, radius)
                best = min(best, time.perf_counter() - t0)
            if reference is None:
                reference = result
            agree = "ok" if result == reference else "MISMATCH"
            print(f"  {bname:9s} {best * 1e3:9.1f} ms   count={result[0]} [{agree}]")


if __name__ == "__main__":
    main()
