"""Time each table kernel under numba and under the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

The first numba call of each kernel is excluded (compilation); results of the
two paths are asserted equal before timing.
"""

import argparse
import time

import numpy as np

from semichol import _kernels as K
from semichol import from_uri
from semichol.classify import _generators


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases():
    z8 = from_uri("z2x3")
    z6 = from_uri("zn:6")
    rng = np.random.default_rng(7)
    tabs = lambda s: (s.add_table, s.mul_table, s.zero)

    a = rng.integers(0, 8, (64, 64))
    b = rng.integers(0, 8, (64, 64))
    yield "matmul 64x64 over Z2[x]/(x^3)", "matmul", (a, b, *tabs(z8))

    m4 = rng.integers(0, 8, (4, 4))
    m4 = (m4 + m4.T) % 8
    xs = K.all_vectors(8, 4)
    yield "quadratic forms, n=4, q=8 (4096 x)", "quadratic_batch", (m4, xs, *tabs(z8))
    yield "matvec batch, n=4, q=8", "matvec_batch", (m4, xs, *tabs(z8))

    eye3 = np.eye(3, dtype=np.int64)
    yield "factor search, n=3, q=8 (262144 L)", "lower_gram_search", (eye3, 8, *tabs(z8), 0, 8**6)

    gens, _ = _generators(z6, 3)
    yield "PSD closure, n=3, q=6 (46656 states)", "closure_bfs", (gens, 6, 6, z6.add_table)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not K.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    print(f"{'kernel':42s} {'numba [ms]':>11s} {'numpy [ms]':>11s} {'speedup':>8s}")
    for label, name, argv in cases():
        fast = getattr(K, f"{name}_numba")
        slow = getattr(K, f"{name}_numpy")
        r1, r2 = fast(*argv), slow(*argv)
        if isinstance(r1, tuple):
            assert all(np.array_equal(x, y) for x, y in zip(r1, r2)), name
        else:
            assert np.array_equal(r1, r2), name
        t_fast = best_of(lambda: fast(*argv), args.repeat)
        t_slow = best_of(lambda: slow(*argv), args.repeat)
        print(f"{label:42s} {t_fast * 1e3:11.2f} {t_slow * 1e3:11.2f} {t_slow / t_fast:8.1f}x")


if __name__ == "__main__":
    main()
