"""Timing comparison of the compiled and pure-Python elimination kernels.

Two workload families exercise the fraction-free row reduction where the
package actually spends its time: dense random integer matrices, and the
integer-scaled monomial evaluation matrix of a grid node set (the large
rank computation behind the independence reports).  Both kernels receive
identical copies of each matrix; results are checked to agree before any
timing is reported.

Run from the repository root:

    python3 benchmarks/bench_rowred.py
    python3 benchmarks/bench_rowred.py --sizes 300x200 --repeats 5
"""

import argparse
import random
import statistics
import time
from math import lcm

from nodalic import _rowred_py, linalg, points

try:
    from nodalic import _rowred_cy
except ImportError:
    _rowred_cy = None


def integer_rows(matrix):
    """Scale each rational row to integers, preserving the row space."""
    out = []
    for row in matrix:
        scale = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * scale) for x in row])
    return out


def random_matrix(rng, rows, cols, bound):
    return [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]


def grid_matrix(n, k):
    pts = points.grid_nodes(n, k)
    return integer_rows(points.evaluation_matrix(pts, k))


def time_kernel(kernel, rows, ncols, repeats):
    times = []
    pivots = None
    for _ in range(repeats):
        work = [list(r) for r in rows]
        start = time.perf_counter()
        result = kernel.reduce_int_rows(work, ncols, True)
        times.append(time.perf_counter() - start)
        if pivots is None:
            pivots = result
        elif pivots != result:
            raise AssertionError("kernel produced unstable pivots")
    return statistics.median(times), pivots


def parse_sizes(text):
    sizes = []
    for part in text.split(","):
        rows, _, cols = part.strip().partition("x")
        sizes.append((int(rows), int(cols)))
    return sizes


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--sizes",
        default="120x80,200x140",
        help="comma-separated random workloads as ROWSxCOLS (default 120x80,200x140)",
    )
    parser.add_argument("--bound", type=int, default=9, help="entry bound for random matrices")
    parser.add_argument("--grid-n", type=int, default=4, help="grid ambient dimension")
    parser.add_argument("--grid-k", type=int, default=6, help="grid degree parameter")
    parser.add_argument("--repeats", type=int, default=3, help="timed repeats per cell (median)")
    parser.add_argument("--seed", type=int, default=7, help="seed for the random workloads")
    parser.add_argument("--skip-grid", action="store_true", help="only run the random workloads")
    args = parser.parse_args()

    rng = random.Random(args.seed)
    workloads = []
    for rows, cols in parse_sizes(args.sizes):
        name = f"random {rows}x{cols} |entries|<={args.bound}"
        workloads.append((name, random_matrix(rng, rows, cols, args.bound), cols))
    if not args.skip_grid:
        matrix = grid_matrix(args.grid_n, args.grid_k)
        name = (
            f"grid n={args.grid_n} k={args.grid_k} evaluation "
            f"{len(matrix)}x{len(matrix[0])}"
        )
        workloads.append((name, matrix, len(matrix[0])))

    print(f"active package backend: {linalg.kernel_backend()}")
    if _rowred_cy is None:
        print("compiled kernel unavailable; timing the pure kernel only")
    header = f"{'workload':<44} {'pure (s)':>10} {'compiled (s)':>13} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, rows, ncols in workloads:
        pure_time, pure_pivots = time_kernel(_rowred_py, rows, ncols, args.repeats)
        if _rowred_cy is None:
            print(f"{name:<44} {pure_time:>10.4f} {'-':>13} {'-':>8}")
            continue
        cy_time, cy_pivots = time_kernel(_rowred_cy, rows, ncols, args.repeats)
        if pure_pivots != cy_pivots:
            raise AssertionError(f"kernels disagree on workload: {name}")
        print(
            f"{name:<44} {pure_time:>10.4f} {cy_time:>13.4f} "
            f"{pure_time / cy_time:>7.2f}x"
        )


if __name__ == "__main__":
    main()
