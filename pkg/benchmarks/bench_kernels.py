"""Time the compiled sign-vector kernels against the numpy fallback.

Run with ``python3 benchmarks/bench_kernels.py [--rows N] [--hyperplanes M] [--repeat R]``.
"""
from __future__ import annotations

import argparse
import timeit

import numpy as np

from arrmorse import _kernels_py as fallback

try:
    from arrmorse import _kernels as compiled  # type: ignore[attr-defined]
except ImportError:
    compiled = None


def _inputs(rows: int, hyperplanes: int, seed: int):
    rng = np.random.default_rng(seed)
    chambers = rng.choice(np.array([-1, 1], dtype=np.int8), size=(rows, hyperplanes))
    faces = rng.integers(-1, 2, size=(rows, hyperplanes), dtype=np.int8)
    return chambers, faces


def _cases(chambers, faces):
    return {
        "face_leq_matrix": lambda m: m.face_leq_matrix(chambers, faces),
        "compose_rows": lambda m: m.compose_rows(chambers, faces[0]),
        "separation_counts": lambda m: m.separation_counts(chambers, chambers),
    }


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--rows", type=int, default=400)
    p.add_argument("--hyperplanes", type=int, default=12)
    p.add_argument("--repeat", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    chambers, faces = _inputs(args.rows, args.hyperplanes, args.seed)
    print(f"rows={args.rows} hyperplanes={args.hyperplanes} repeat={args.repeat}")
    if compiled is None:
        print("compiled kernels unavailable; timing the fallback only")
    for name, call in _cases(chambers, faces).items():
        t_py = min(timeit.repeat(lambda: call(fallback), number=1, repeat=args.repeat))
        line = f"{name:20s} numpy {t_py * 1e3:9.3f} ms"
        if compiled is not None:
            same = np.array_equal(call(compiled), call(fallback))
            t_cy = min(timeit.repeat(lambda: call(compiled), number=1, repeat=args.repeat))
            line += f"  cython {t_cy * 1e3:9.3f} ms  speedup {t_py / t_cy:6.2f}x  equal={same}"
        print(line)


if __name__ == "__main__":
    main()
