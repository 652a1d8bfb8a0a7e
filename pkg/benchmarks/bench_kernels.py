"""Benchmark the collision-sweep kernels: numba against the numpy fallback.

Generates synthetic Poisson arrival batches of increasing size and times
both code paths on identical inputs. Run with:

    python3 benchmarks/bench_kernels.py [--sizes 1e5,1e6,4e6] [--repeat 5]
"""

import argparse
import time

import numpy as np

from flra import _kernels


def _make_aloha_batch(rng, n, horizon=1.0):
    starts = np.sort(rng.uniform(0.0, horizon, n))
    durs = rng.choice([1e-6, 2e-5], size=n)
    return starts, starts + durs


def _time(fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="1e5,1e6,4e6",
                        help="comma-separated batch sizes")
    parser.add_argument("--repeat", type=int, default=5,
                        help="timing repetitions (best is reported)")
    args = parser.parse_args()
    sizes = [int(float(s)) for s in args.sizes.split(",")]

    if not _kernels.USE_NUMBA:
        parser.error("numba path disabled (FLRA_NO_NUMBA is set); "
                     "unset it to compare both paths")

    rng = np.random.default_rng(0)
    # trigger jit compilation outside the timed region
    s, e = _make_aloha_batch(rng, 1000)
    _kernels.aloha_chunk(s, e, 0.0)
    _kernels.slotted_chunk(np.sort(rng.integers(0, 100, 1000)))

    print(f"{'kernel':<14}{'n':>10}{'numpy [ms]':>14}{'numba [ms]':>14}"
          f"{'speedup':>10}")
    for n in sizes:
        starts, ends = _make_aloha_batch(rng, n)
        t_np = _time(_kernels._aloha_chunk_np, starts, ends, 0.0,
                     repeat=args.repeat)
        t_nb = _time(_kernels._aloha_chunk_nb, starts, ends, 0.0,
                     repeat=args.repeat)
        ok_np, _ = _kernels._aloha_chunk_np(starts, ends, 0.0)
        ok_nb, _ = _kernels._aloha_chunk_nb(starts, ends, 0.0)
        assert np.array_equal(ok_np, ok_nb), "kernel mismatch"
        print(f"{'aloha':<14}{n:>10}{t_np * 1e3:>14.2f}{t_nb * 1e3:>14.2f}"
              f"{t_np / t_nb:>10.2f}x")

        slots = np.sort(rng.integers(0, max(1, n // 2), size=n))
        t_np = _time(_kernels._slotted_chunk_np, slots, repeat=args.repeat)
        t_nb = _time(_kernels._slotted_chunk_nb, slots, repeat=args.repeat)
        ok_np, _ = _kernels._slotted_chunk_np(slots)
        ok_nb, _ = _kernels._slotted_chunk_nb(slots)
        assert np.array_equal(ok_np, ok_nb), "kernel mismatch"
        print(f"{'slotted':<14}{n:>10}{t_np * 1e3:>14.2f}{t_nb * 1e3:>14.2f}"
              f"{t_np / t_nb:>10.2f}x")


if __name__ == "__main__":
    main()
