"""Time the numba kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--sizes 1000 100000 1000000] [--repeat 5]

Prints one line per (kernel, size) with the best wall time of each backend
and the speedup. The first numba call (compilation) is excluded.
"""

import argparse
import time

import numpy as np

from relgouy import kernels


def best_time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cases(size, rng):
    xi1 = rng.uniform(-3, 3, size)
    xi2 = rng.uniform(-3, 3, size)
    s = rng.uniform(-100, 100, size)
    field_args = (xi1, xi2, s, 3, 2, 1.0, 0.3, 50.0, 100.0, 100.0)
    yield "hg_field(3,2)", kernels.hg_field_numpy, kernels.hg_field_numba, field_args
    yield "hermite(12)", kernels.hermite_array_numpy, kernels.hermite_array_numba, (12, xi1)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[1_000, 100_000, 1_000_000])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if kernels.hg_field_numba is None:
        raise SystemExit("numba backend unavailable (not installed or disabled by RELGOUY_DISABLE_NUMBA)")
    rng = np.random.default_rng(0)
    print(f"{'kernel':<16}{'size':>10}{'numpy [s]':>14}{'numba [s]':>14}{'speedup':>10}{'max diff':>12}")
    for size in args.sizes:
        for name, f_np, f_nb, fargs in cases(size, rng):
            ref, got = f_np(*fargs), f_nb(*fargs)
            diff = float(np.max(np.abs(ref - got)))
            t_np = best_time(lambda: f_np(*fargs), args.repeat)
            t_nb = best_time(lambda: f_nb(*fargs), args.repeat)
            print(f"{name:<16}{size:>10}{t_np:>14.4g}{t_nb:>14.4g}{t_np / t_nb:>10.2f}{diff:>12.2g}")


if __name__ == "__main__":
    main()
