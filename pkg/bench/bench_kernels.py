"""Time the numba kernels against their pure-numpy fallbacks.

Run from the repository root:

    python3 bench/bench_kernels.py

Set FPCLOGIT_NO_NUMBA=1 to see what the package would use without numba.
"""

import time

import numpy as np

from fpclogit import _kernels
from fpclogit.basis import create_bspline


def timeit(fn, *args, repeats=5):
    fn(*args)  # warm up (JIT compile on the numba path)
    best = np.inf
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def bench_bspline():
    basis = create_bspline((0.0, 1.0), 12, degree=3)
    knots = basis.knot_array()
    t = np.linspace(0.0, 1.0, 200_000)
    rows = [("bspline design 200k x 12", _kernels.bspline_design_numpy, (t, knots, 3))]
    if _kernels.bspline_design_numba is not None:
        rows.append(("bspline design 200k x 12 (numba)", _kernels.bspline_design_numba, (t, knots, 3)))
    return rows


def bench_auc():
    rng = np.random.default_rng(0)
    pos = rng.random(4000)
    neg = rng.random(4000)
    rows = [("pairwise AUC 4000 x 4000", _kernels.auc_pairwise_numpy, (pos, neg))]
    if _kernels.auc_pairwise_numba is not None:
        rows.append(("pairwise AUC 4000 x 4000 (numba)", _kernels.auc_pairwise_numba, (pos, neg)))
    return rows


def main():
    print(f"numba path enabled: {_kernels.NUMBA_ENABLED}")
    for group in (bench_bspline(), bench_auc()):
        base = None
        for name, fn, args in group:
            elapsed = timeit(fn, *args)
            if base is None:
                base = elapsed
                print(f"{name:<40} {elapsed * 1e3:9.2f} ms")
            else:
                print(f"{name:<40} {elapsed * 1e3:9.2f} ms   ({base / elapsed:.1f}x vs numpy)")
        print()


if __name__ == "__main__":
    main()
