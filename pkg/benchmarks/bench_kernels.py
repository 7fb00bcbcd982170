#!/usr/bin/env python3
"""Benchmark the compiled kernel against the pure Python fallback.

Two workloads:

* synthetic: reduced echelon + nullspace on random sparse integer
  systems of growing size;
* end to end: the adjoint stalk recursion (graph build excluded), which
  is the dominant cost of the package.

Run ``python benchmarks/bench_kernels.py``.  Force the pure backend for
the whole package with ``GKMFACTOR_PURE=1``; this script always times
both kernel backends directly and reports the end-to-end figure for
whichever backend the package selected.
"""

import random
import time

from gkmfactor import _kernels_py, kernels


def synthetic_rows(rng, nrows, ncols, density):
    rows = []
    for _ in range(nrows):
        row = {}
        for c in range(ncols):
            if rng.random() < density:
                v = rng.randint(-30, 30)
                if v:
                    row[c] = v
        rows.append(row)
    return rows


def time_backend(mod, rows, ncols, repeat=2):
    best = float("inf")
    result = None
    for _ in range(repeat):
        work = [dict(r) for r in rows]
        t0 = time.perf_counter()
        rr = mod.echelon(work)
        ns = rr.nullspace(ncols)
        best = min(best, time.perf_counter() - t0)
        result = (rr.rank, len(ns))
    return best, result


def bench_synthetic():
    print("synthetic sparse systems (rank + nullspace), best of 3")
    print(f"{'size':>14} {'density':>8} {'pure':>10} {'compiled':>10} {'speedup':>8}")
    # Sizes mirror real congruence systems; large dense random systems
    # are pathological for fraction-free elimination (entry blow-up)
    # and nothing in the package produces them.
    rng = random.Random(42)
    for nrows, ncols, density in [
        (80, 60, 0.10),
        (160, 120, 0.06),
        (320, 240, 0.03),
    ]:
        rows = synthetic_rows(rng, nrows, ncols, density)
        t_py, res_py = time_backend(_kernels_py, rows, ncols)
        t_c, res_c = time_backend(kernels, rows, ncols)
        assert res_py == res_c, "backends disagree"
        ratio = t_py / t_c if t_c else float("inf")
        print(
            f"{nrows:>6}x{ncols:<7} {density:>8.2f} {t_py:>9.3f}s {t_c:>9.3f}s {ratio:>7.1f}x"
        )


def bench_stalks():
    from gkmfactor import rootsystem as rsys
    from gkmfactor.momentgraph import Truncation, build_graph
    from gkmfactor.stalks import default_degree_bound, run_column

    print()
    print(f"adjoint stalk recursion, package backend = {kernels.BACKEND}")
    for t, l in [("A", 3), ("A", 4), ("D", 4)]:
        rs = rsys.build(t, l)
        g = build_graph(Truncation(rs, rs.highest_root))
        bound = default_degree_bound(g)
        t0 = time.perf_counter()
        result = run_column(g, bound)
        elapsed = time.perf_counter() - t0
        origin = result.ranks[tuple([0] * rs.ambient_dim)]
        print(f"  {t}{l}: origin rank {origin}, degree bound {bound}, {elapsed:.2f}s")


if __name__ == "__main__":
    print(f"selected package backend: {kernels.BACKEND}")
    bench_synthetic()
    bench_stalks()
