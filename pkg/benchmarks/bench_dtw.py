"""Compare the compiled and pure-Python DTW kernels.

    python benchmarks/bench_dtw.py [--n-series 28] [--length 12] [--repeat 3]

Times a full pairwise matrix (one year of monthly series) and a single long
pair, checks both backends agree bit for bit, and prints the speedups.
"""
import argparse
import time

import numpy as np

from tsnet import _dtw_py

try:
    from tsnet import _dtw_core
except ImportError:
    _dtw_core = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-series", type=int, default=28)
    ap.add_argument("--length", type=int, default=12)
    ap.add_argument("--long", type=int, default=1000, help="length of the single-pair case")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if _dtw_core is None:
        raise SystemExit("compiled extension not built; run 'pip install -e . --no-build-isolation'")

    rng = np.random.default_rng(args.seed)
    X = rng.random((args.n_series, args.length))
    x, y = rng.random(args.long), rng.random(args.long)
    cases = [
        (f"pairwise {args.n_series}x{args.length}", lambda k: k.dtw_pairwise(X)),
        (f"pairwise 8 years x {args.n_series}x{args.length}", lambda k: [k.dtw_pairwise(X) for _ in range(8)]),
        (f"single pair {args.long}x{args.long}", lambda k: k.dtw_cost(x, y)),
    ]
    print(f"{'case':<36s} {'cython':>12s} {'python':>12s} {'speedup':>9s}")
    for name, fn in cases:
        tc, oc = best_of(lambda: fn(_dtw_core), args.repeat)
        tp, op = best_of(lambda: fn(_dtw_py), max(1, args.repeat // 3))
        if not np.array_equal(np.asarray(oc), np.asarray(op)):
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:<36s} {tc * 1e3:>10.3f}ms {tp * 1e3:>10.3f}ms {tp / tc:>8.1f}x")


if __name__ == "__main__":
    main()
