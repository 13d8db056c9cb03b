"""Compare the compiled and pure-Python face-enumeration kernels.

Usage: python benchmarks/bench_kernel.py [--n 300] [--p 0.15] [--m 3] [--cap 3]
"""

import argparse
import statistics
import time

from mncomplex._kernel import pykern
from mncomplex.graph_core import Seed, sample_er

try:
    from mncomplex._kernel import _fastkern
except ImportError:
    _fastkern = None


def time_kernel(fn, words, m, cap, repeats):
    times = []
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn(words, m, cap)
        times.append(time.perf_counter() - start)
    return min(times), statistics.median(times), result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=300)
    ap.add_argument("--p", type=float, default=0.15)
    ap.add_argument("--m", type=int, default=3)
    ap.add_argument("--cap", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()

    g = sample_er(args.n, args.p, Seed(args.seed))
    print(f"graph: n={args.n} p={args.p} edges={g.edge_count()}")
    print(f"enumerating faces: m={args.m} cap={args.cap} repeats={args.repeats}")

    best_py, med_py, res_py = time_kernel(
        pykern.enumerate_faces, g.words, args.m, args.cap, args.repeats
    )
    counts = [len(level) for level in res_py]
    print(f"face counts by cardinality: {counts}")
    print(f"python  : best {best_py * 1e3:8.2f} ms   median {med_py * 1e3:8.2f} ms")

    if _fastkern is None:
        print("compiled: not built")
        return

    best_c, med_c, res_c = time_kernel(
        _fastkern.enumerate_faces, g.words, args.m, args.cap, args.repeats
    )
    assert [sorted(level) for level in res_c] == [sorted(level) for level in res_py]
    print(f"compiled: best {best_c * 1e3:8.2f} ms   median {med_c * 1e3:8.2f} ms")
    print(f"speedup : {best_py / best_c:.1f}x (results identical)")


if __name__ == "__main__":
    main()
