"""Compare the compiled and pure-Python Jacobi kernels (LAPACK eigh for reference).

    python benchmarks/bench_jacobi.py [--sizes 4 16 64] [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from cpcheck import _jacobi_py
from cpcheck.linalg import random_hermitian

try:
    from cpcheck import _jacobi
except ImportError:
    _jacobi = None


def solve(fn, h):
    a = np.ascontiguousarray(h.copy())
    v = np.eye(h.shape[0], dtype=np.complex128)
    sweeps = fn(a, v, 1e-13 * np.linalg.norm(h), 100)
    assert sweeps >= 0
    return sweeps


def best_of(stmt, repeat):
    number = 1
    while True:
        t = min(timeit.repeat(stmt, number=number, repeat=repeat)) / number
        if t * number > 0.05 or number >= 1000:
            return t
        number *= 4


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[4, 9, 16, 36, 64, 144])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    print(f"{'n':>5} {'sweeps':>6} {'cython ms':>10} {'python ms':>10} {'speedup':>8} {'lapack ms':>10}")
    for n in args.sizes:
        h = random_hermitian(n, n)
        sweeps = solve(_jacobi_py.jacobi_sweeps, h)
        py = best_of(lambda: solve(_jacobi_py.jacobi_sweeps, h), args.repeat)
        cy = best_of(lambda: solve(_jacobi.jacobi_sweeps, h), args.repeat) if _jacobi else float("nan")
        lp = best_of(lambda: np.linalg.eigh(h), args.repeat)
        print(f"{n:>5} {sweeps:>6} {cy * 1e3:>10.3f} {py * 1e3:>10.3f} {py / cy:>7.1f}x {lp * 1e3:>10.3f}")


if __name__ == "__main__":
    main()
