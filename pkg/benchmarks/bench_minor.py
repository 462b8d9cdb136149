"""Compare the compiled and pure-Python partition search.

    python3 benchmarks/bench_minor.py [--repeat 3] [--quick]

Each instance runs the exact search (heuristic off) once per backend; both
backends must agree on the answer and expand the same number of nodes.
"""
import argparse
import random
import time

from surfk6 import BACKEND
from surfk6.graphs import Graph, apex_graph, petersen, random_graph, triangulated_grid
from surfk6.minors import SearchStats, has_minor


def instances(quick: bool):
    rng = random.Random(11)
    yield "petersen/K6", petersen(), Graph.complete(6)
    yield "petersen/K5", petersen(), Graph.complete(5)
    yield "apex tgrid 3x4/K6", apex_graph(triangulated_grid(3, 4, rng)), Graph.complete(6)
    if not quick:
        yield "apex tgrid 4x4/K6", apex_graph(triangulated_grid(4, 4, rng)), Graph.complete(6)
        yield "apex tgrid 4x5/K6", apex_graph(triangulated_grid(4, 5, rng)), Graph.complete(6)
    for i in range(3 if quick else 6):
        yield f"G(10,0.5) #{i}/K5", random_graph(10, 0.5, rng), Graph.complete(5)


def timed(g, h, backend, repeat):
    best = None
    for _ in range(repeat):
        stats = SearchStats()
        t = time.perf_counter()
        model = has_minor(g, h, heuristic=False, backend=backend, stats=stats)
        dt = time.perf_counter() - t
        best = dt if best is None else min(best, dt)
    return model is not None, stats.nodes, best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()
    if BACKEND != "cython":
        raise SystemExit("compiled extension not available; build with pip install -e .")
    print(f"{'instance':24} {'found':>5} {'nodes':>9} {'cython s':>10} {'python s':>10} {'speedup':>8}")
    total = [0.0, 0.0]
    for name, g, h in instances(args.quick):
        fc, nc, tc = timed(g, h, "cython", args.repeat)
        fp, np_, tp = timed(g, h, "python", args.repeat)
        if (fc, nc) != (fp, np_):
            raise SystemExit(f"{name}: backends disagree ({fc}, {nc}) vs ({fp}, {np_})")
        total[0] += tc
        total[1] += tp
        print(f"{name:24} {str(fc):>5} {nc:>9} {tc:>10.4f} {tp:>10.4f} {tp / max(tc, 1e-9):>7.1f}x")
    print(f"{'total':24} {'':>5} {'':>9} {total[0]:>10.4f} {total[1]:>10.4f} {total[1] / max(total[0], 1e-9):>7.1f}x")


if __name__ == "__main__":
    main()
