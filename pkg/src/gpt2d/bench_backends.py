"""Compare the numba and numpy kernel-matrix backends.

Usage: python -m gpt2d.bench_backends [--sizes 256,512,1024,2048]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from ._accel import (
    USE_NUMBA,
    _np_double_layer_weighted,
    _np_single_layer_weighted,
    double_layer_weighted,
    single_layer_weighted,
)
from .curve import Disk, discretize, normalize


def _time(fn, *args, repeats: int = 5) -> float:
    fn(*args)  # warm up (JIT compile, caches)
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="256,512,1024,2048")
    args = parser.parse_args(argv)
    sizes = [int(s) for s in args.sizes.split(",")]

    if not USE_NUMBA:
        print("numba backend unavailable (missing or disabled); timing numpy only")
    print(f"{'n':>6} {'kernel':>13} {'numpy (ms)':>12} {'numba (ms)':>12} {'speedup':>8}")
    for n in sizes:
        curve, _ = normalize(discretize(Disk(center=(0.0, 0.0), radius=0.5), n))
        cases = [
            ("single-layer", _np_single_layer_weighted, single_layer_weighted,
             (curve.nodes, curve.weights)),
            ("double-layer", _np_double_layer_weighted, double_layer_weighted,
             (curve.nodes, curve.normals, curve.weights, curve.curvature)),
        ]
        for name, np_fn, fast_fn, fnargs in cases:
            t_np = _time(np_fn, *fnargs)
            if USE_NUMBA:
                t_nb = _time(fast_fn, *fnargs)
                diff = np.max(np.abs(np_fn(*fnargs) - fast_fn(*fnargs)))
                print(f"{n:>6} {name:>13} {t_np * 1e3:>12.3f} {t_nb * 1e3:>12.3f} "
                      f"{t_np / t_nb:>8.2f}  (max|diff|={diff:.2e})")
            else:
                print(f"{n:>6} {name:>13} {t_np * 1e3:>12.3f} {'-':>12} {'-':>8}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
