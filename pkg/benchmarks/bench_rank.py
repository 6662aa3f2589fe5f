"""Compare the compiled and pure-Python exact-rank kernels.

    python3 benchmarks/bench_rank.py [--repeat N] [--large]
"""
import argparse
import time

import numpy as np

from lefschetz_lab import kernels
from lefschetz_lab.hodge import boundary_matrix
from lefschetz_lab.samples import sphere_sample


def cases(large=False):
    spheres = [(1, 0.62), (2, 0.33)] + ([(3, 0.17)] if large else [])
    for s, h in spheres:
        K = sphere_sample(s, h)[2]
        for k in (1, 2):
            yield f"sphere s={s} boundary d{k} {boundary_matrix(K, k).shape}", boundary_matrix(K, k)
    rng = np.random.default_rng(0)
    for n in (40, 80, 160) if large else (40, 80):
        a = rng.integers(-1, 2, size=(n, n))
        yield f"random dense +-1 {a.shape}", a


def timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return out, best


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--large", action="store_true", help="add the 642-vertex sphere and n=160 (about 2 minutes)")
    args = p.parse_args()
    if kernels._rank_int64 is None:
        raise SystemExit("compiled kernel not built; run `pip install -e . --no-build-isolation`")
    print(f"{'case':45s} {'rank':>5s} {'cython ms':>10s} {'python ms':>10s} {'speedup':>8s}")
    for name, a in cases(args.large):
        r_c, t_c = timed(lambda: kernels.exact_rank(a, backend="cython"), args.repeat)
        r_p, t_p = timed(lambda: kernels.exact_rank(a, backend="python"), args.repeat)
        assert r_c == r_p, name
        print(f"{name:45s} {r_c:5d} {t_c * 1e3:10.2f} {t_p * 1e3:10.2f} {t_p / t_c:8.1f}x")


if __name__ == "__main__":
    main()
