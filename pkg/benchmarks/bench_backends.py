"""Time the compiled and pure-Python kernels on the same workloads.

    python benchmarks/bench_backends.py [--repeat N]

Prints one line per kernel with the best-of-N wall time for each backend and
the speed-up.  Outputs are compared too: the backends must agree bit for bit.
"""
import argparse
import timeit

import numpy as np

from chaoslab import FIG1A, fig1_initial
from chaoslab import _pycore
from chaoslab.rng import bit_generator

try:
    from chaoslab import _core
except ImportError:
    _core = None

Y0 = fig1_initial().y
PRM = FIG1A.as_tuple()

WORKLOADS = {
    "rk4_run (3000 steps)": lambda k: k.rk4_run(Y0, PRM, 0.01, 3000, 10),
    "dopri_run (t=0..25)": lambda k: k.dopri_run(Y0, PRM, 0.0, 25.0, 1e-8, 1e-10, 1e-3,
                                                 1e-12, 10, 10_000_000),
    "ba_edges (n=2e4, m=2)": lambda k: k.ba_edges(20_000, 2, bit_generator(1)),
    "er_edges (n=2e4, p=5e-4)": lambda k: k.er_edges(20_000, 5e-4, bit_generator(1)),
}


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return a == b


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _core is None:
        print("compiled backend not built; only the Python timings are shown")
    print(f"{'kernel':28s} {'python [s]':>11s} {'cython [s]':>11s} {'speed-up':>9s}  identical")
    for name, work in WORKLOADS.items():
        py = min(timeit.repeat(lambda: work(_pycore), number=1, repeat=args.repeat))
        if _core is None:
            print(f"{name:28s} {py:11.4f}")
            continue
        cy = min(timeit.repeat(lambda: work(_core), number=1, repeat=args.repeat))
        ident = same(work(_pycore), work(_core))
        print(f"{name:28s} {py:11.4f} {cy:11.4f} {py / cy:8.1f}x  {ident}")


if __name__ == "__main__":
    main()
