"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3]

Each row reports the best of ``--repeat`` runs per backend and the speedup.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from planewidth import kernels
from planewidth.constructions import cubic_expansion
from planewidth.graph import complete, full_cubic_tree, grid, star
from planewidth.onedim import _csr, _search_order
from planewidth.optimize import target_pairs


def _edges(g):
    eu = np.array([u for u, _ in g.edges], dtype=np.int64)
    ev = np.array([v for _, v in g.edges], dtype=np.int64)
    return eu, ev


def cases():
    rng = np.random.default_rng(0)

    g = grid(40, 50)
    X = rng.normal(size=(g.n, 2))
    eu, ev = _edges(g)
    yield "pair_extremes grid40x50 (2000 pts)", lambda m: m.pair_extremes(X, eu, ev)

    k8 = complete(8)
    (nu, nv), (du, dv) = target_pairs(k8, "re")
    X0 = rng.normal(size=(16, 8, 2))
    temps = np.geomspace(0.1, 1e-3, 4)
    yield "descend K8, 16 starts x 800 steps", lambda m: m.descend(
        X0, nu, nv, du, dv, temps, 200, kernels.ARMIJO, 0.05, 1e-12
    )

    s16 = star(16)
    (nu2, nv2), (du2, dv2) = target_pairs(s16, "re")
    X1 = rng.normal(size=(16, 17, 2))
    yield "descend star16, 16 starts x 800 steps", lambda m: m.descend(
        X1, nu2, nv2, du2, dv2, temps, 200, kernels.ARMIJO, 0.05, 1e-12
    )

    ce = cubic_expansion(6)[0]
    ip, ix = _csr(ce, range(ce.n))
    order = _search_order(ip, ix)
    yield "circular_search cubexp6 at 5/2", lambda m: m.circular_search(ce.n, ip, ix, order, 5, 2, False)

    t4 = full_cubic_tree(4)
    ip4, ix4 = _csr(t4, range(t4.n))
    yield "bandwidth_search cubictree4, k = 6", lambda m: m.bandwidth_search(t4.n, ip4, ix4, 6)

    g45 = grid(4, 5)
    ip5, ix5 = _csr(g45, range(g45.n))
    yield "bandwidth_search grid4x5, k = 3 (infeasible)", lambda m: m.bandwidth_search(g45.n, ip5, ix5, 3)


def best_time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    mods = kernels.backends()
    if "cython" not in mods:
        print("compiled extension not available; only the python backend can be timed")
    names = list(mods)
    header = f"{'case':46}" + "".join(f"{n:>12}" for n in names) + ("    speedup" if len(names) > 1 else "")
    print(header)
    print("-" * len(header))
    for label, run in cases():
        times = [best_time(lambda: run(mods[n]), args.repeat) for n in names]
        row = f"{label:46}" + "".join(f"{t * 1e3:10.2f}ms" for t in times)
        if len(times) > 1:
            row += f"   {times[0] / times[1]:7.1f}x"
        print(row, flush=True)


if __name__ == "__main__":
    main()
