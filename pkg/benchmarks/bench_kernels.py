"""Time the compiled kernels against the pure-numpy fallback.

Runs both implementations directly (regardless of HURSTLAB_DISABLE_NUMBA)
on a rolling-sweep-shaped workload: many 250-sample windows, R/S over the
ten-segment preset plus DFA over powers of two.

    python3 benchmarks/bench_kernels.py [--windows 2000] [--repeat 3]
"""
import argparse
import time

import numpy as np

from hurstlab import _kernels
from hurstlab.rescaled_range import PRESET_250_SEGMENTS


def bench(fn, windows, scales, repeat, kernel):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        sink = 0.0
        for window in windows:
            for scale in scales:
                if kernel == "rs":
                    total, defined, _ = fn(window, scale, 0)
                    sink += total / max(defined, 1)
                else:
                    sink += fn(window, scale)
        best = min(best, time.perf_counter() - start)
    return best, sink


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--windows", type=int, default=2000)
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.Generator(np.random.PCG64(args.seed))
    windows = [rng.standard_normal(250) for _ in range(args.windows)]
    rs_scales = sorted(PRESET_250_SEGMENTS)
    dfa_scales = [8, 16, 32]

    if not _kernels.HAVE_NUMBA:
        print("numba unavailable or disabled; timing the numpy path only")

    jobs = [("rs", rs_scales,
             _kernels.rs_segment_sums_numpy,
             _kernels.rs_segment_sums if _kernels.HAVE_NUMBA else None),
            ("dfa", dfa_scales,
             _kernels.dfa_box_fsq_numpy,
             _kernels.dfa_box_fsq if _kernels.HAVE_NUMBA else None)]

    for kernel, scales, numpy_fn, jit_fn in jobs:
        evals = args.windows * len(scales)
        numpy_time, numpy_sink = bench(numpy_fn, windows, scales,
                                       args.repeat, kernel)
        line = (f"{kernel:4s} {evals:7d} evals | numpy {numpy_time:8.3f}s "
                f"({1e6 * numpy_time / evals:7.1f} us/eval)")
        if jit_fn is not None:
            jit_fn(windows[0], scales[0], 0) if kernel == "rs" else jit_fn(
                windows[0], scales[0])  # compile outside the timer
            jit_time, jit_sink = bench(jit_fn, windows, scales,
                                       args.repeat, kernel)
            assert abs(jit_sink - numpy_sink) < 1e-6 * max(abs(numpy_sink), 1.0)
            line += (f" | numba {jit_time:8.3f}s "
                     f"({1e6 * jit_time / evals:7.1f} us/eval) "
                     f"| speedup {numpy_time / jit_time:5.1f}x")
        print(line)


if __name__ == "__main__":
    main()
