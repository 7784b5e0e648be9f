"""Compare the compiled kernels with the numpy fallback.

    python3 benchmarks/bench_kernels.py --sizes 128 512 2048 --points 8192
"""
import argparse
import importlib
import time

import numpy as np

from lejakit import _kernels_py
from lejakit.disc import leja_section


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[128, 512, 2048])
    ap.add_argument("--points", type=int, default=8192)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args(argv)
    try:
        compiled = importlib.import_module("lejakit._kernels")
    except ImportError:
        raise SystemExit("compiled kernels not built; run `pip install -e .` first")

    rng = np.random.default_rng(0)
    pts = np.exp(2j * np.pi * rng.random(args.points))
    print(f"{'kernel':<20}{'k':>6}{'python s':>12}{'compiled s':>12}{'speedup':>9}")
    for k in args.sizes:
        nodes = leja_section(k + 1).nodes
        lw = _kernels_py.log_weights(nodes[:k])
        cases = {
            "log_weights": (lambda m: m.log_weights(nodes[:k])),
            "lebesgue_eval": (lambda m: m.lebesgue_eval(nodes[:k], lw, pts, args.threads)
                              if m is compiled else m.lebesgue_eval(nodes[:k], lw, pts)),
            "logabs_w": (lambda m: m.logabs_w(nodes[:k], pts)),
            "next_point_profile": (lambda m: m.next_point_profile(nodes, k)),
        }
        for name, call in cases.items():
            tp = best_of(lambda: call(_kernels_py), args.repeat)
            tc = best_of(lambda: call(compiled), args.repeat)
            print(f"{name:<20}{k:>6}{tp:>12.4f}{tc:>12.4f}{tp / tc:>9.1f}")


if __name__ == "__main__":
    main()
