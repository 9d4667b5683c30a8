"""Multi-start minimax optimization of the three ratios.

Each start runs an annealed log-sum-exp descent (compiled kernel when
available), then an exact-ratio polish: sequential linear programming on
the near-active distances inside a trust box, followed by a short pattern
search. Every returned value is the exact ratio of the returned witness, so
it is a certified upper bound on the invariant.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.optimize import linprog

from . import kernels
from .geometry import RatioReport, Representation, eval_ratios, re_lower_bound, regular_polygon
from .graph import Graph, clique_number, complete
from .onedim import chromatic_number

TARGETS = ("dc", "pw", "re")
DESCENT_BATCH = 8


class OptimizationError(RuntimeError):
    pass


class NotApplicable(ValueError):
    pass


def _default_schedule() -> tuple[float, ...]:
    return tuple(float(x) for x in np.geomspace(0.1, 1e-3, 6))


@dataclass(frozen=True)
class OptimizerConfig:
    starts: int = 64
    iterations: int = 2000
    seed: int = 0
    smoothing_schedule: tuple[float, ...] = field(default_factory=_default_schedule)
    step_rule: str = "armijo"
    tolerance: float = 1e-6
    polish_iterations: int = 40
    workers: int | None = None

    def __post_init__(self):
        if self.starts < 1:
            raise ValueError("starts must be >= 1")
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        sched = self.smoothing_schedule
        if not sched or any(t <= 0 for t in sched):
            raise ValueError("smoothing schedule must be a nonempty sequence of positive reals")
        if any(b >= a for a, b in zip(sched, sched[1:])):
            raise ValueError("smoothing schedule must be strictly decreasing")
        if sched[-1] > 1e-3:
            raise ValueError("smoothing schedule must end at or below 1e-3")
        if self.step_rule not in ("armijo", "fixed"):
            raise ValueError(f"unknown step rule {self.step_rule!r}")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")


@dataclass(frozen=True)
class BoundResult:
    target: str
    upper_bound: float
    witness: Representation
    lower_bound: float | None
    report: RatioReport
    start_index: int = -1

    def to_dict(self) -> dict:
        return {
            "target": self.target,
            "upper_bound": self.upper_bound,
            "lower_bound": self.lower_bound,
            "start_index": self.start_index,
            "report": self.report.to_dict(),
            "witness": [list(pt) for pt in self.witness.points],
        }


def _pairs(g: Graph, which: str) -> tuple[np.ndarray, np.ndarray]:
    if which == "edges":
        src = g.edges
    else:
        src = list(g.pairs())
    u = np.fromiter((a for a, _ in src), dtype=np.int64, count=len(src))
    v = np.fromiter((b for _, b in src), dtype=np.int64, count=len(src))
    return u, v


def target_pairs(g: Graph, target: str):
    """(numerator, denominator) pair index arrays of a ratio."""
    if target == "dc":
        return _pairs(g, "edges"), _pairs(g, "edges")
    if target == "pw":
        return _pairs(g, "all"), _pairs(g, "edges")
    if target in ("re", "h"):
        return _pairs(g, "edges"), _pairs(g, "all")
    raise ValueError(f"unknown target {target!r}")


# -- initial configurations ---------------------------------------------------------------


def _bfs_order(g: Graph, root: int) -> list[int]:
    order, seen = [], set()
    for s in [root] + list(range(g.n)):
        if s in seen:
            continue
        seen.add(s)
        queue = [s]
        while queue:
            u = queue.pop(0)
            order.append(u)
            for w in sorted(g.adj[u]):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
    return order


def _hex_spiral(k: int) -> np.ndarray:
    """First ``k`` triangular-lattice points ordered by distance from 0."""
    r = int(math.ceil(math.sqrt(k))) + 2
    pts = []
    for i in range(-r, r + 1):
        for j in range(-r, r + 1):
            x, y = i + 0.5 * j, j * math.sqrt(3) / 2
            pts.append((x * x + y * y, math.atan2(y, x), x, y))
    pts.sort()
    return np.array([(x, y) for _, _, x, y in pts[:k]])


def _distance_matrix(g: Graph) -> np.ndarray:
    D = np.array([g.bfs_distances(s) for s in range(g.n)], dtype=np.float64)
    D[D < 0] = np.inf
    finite = D[np.isfinite(D)]
    D[~np.isfinite(D)] = (finite.max() if finite.size else 0) + 1
    return D


def stress_layout(g: Graph, iterations: int = 300) -> np.ndarray:
    """Planar layout matching graph distances: classical MDS followed by
    weighted stress majorization (weights d^-2)."""
    n = g.n
    if n == 1:
        return np.zeros((1, 2))
    D = _distance_matrix(g)
    J = np.eye(n) - 1.0 / n
    B = -0.5 * J @ (D * D) @ J
    vals, vecs = np.linalg.eigh(B)
    top = np.argsort(vals)[::-1][:2]
    X = vecs[:, top] * np.sqrt(np.maximum(vals[top], 1e-9))
    # fix eigenvector signs so the layout is deterministic
    for k in range(2):
        j = int(np.argmax(np.abs(X[:, k])))
        if X[j, k] < 0:
            X[:, k] = -X[:, k]
    W = np.zeros_like(D)
    off = ~np.eye(n, dtype=bool)
    W[off] = D[off] ** -2.0
    V = -W.copy()
    V[np.diag_indices(n)] = W.sum(axis=1)
    Vp = np.linalg.pinv(V)
    for _ in range(iterations):
        E = np.sqrt(((X[:, None, :] - X[None, :, :]) ** 2).sum(axis=2))
        ratio = np.zeros_like(D)
        nz = off & (E > 1e-12)
        ratio[nz] = W[nz] * D[nz] / E[nz]
        Bx = -ratio
        Bx[np.diag_indices(n)] = ratio.sum(axis=1)
        Xn = Vp @ (Bx @ X)
        if np.max(np.abs(Xn - X)) < 1e-9:
            X = Xn
            break
        X = Xn
    return X


def structured_seeds(g: Graph) -> list[np.ndarray]:
    """Regular polygon, polygon around the top-degree vertex, a
    triangular-lattice patch (each filled in BFS order) and a stress layout."""
    n = g.n
    hub = max(range(n), key=lambda v: (len(g.adj[v]), -v))
    order = _bfs_order(g, hub)
    seeds = []
    poly = np.zeros((n, 2))
    poly[order] = regular_polygon(n)
    seeds.append(poly)
    if n >= 3:
        ring = np.zeros((n, 2))
        ring[order[1:]] = regular_polygon(n - 1)
        seeds.append(ring)
    lat = np.zeros((n, 2))
    lat[order] = _hex_spiral(n)
    seeds.append(lat)
    if n >= 3:
        seeds.append(stress_layout(g))
    return seeds


def _random_seed(n: int, seed: int, index: int, attempt: int = 0) -> np.ndarray:
    rng = np.random.default_rng([seed, index, attempt])
    r = math.sqrt(n) * np.sqrt(rng.random(n))
    a = 2 * math.pi * rng.random(n)
    return np.column_stack([r * np.cos(a), r * np.sin(a)])


def initial_configs(g: Graph, cfg: OptimizerConfig, extra: Sequence[np.ndarray] = ()) -> np.ndarray:
    seeds = structured_seeds(g) + [np.asarray(x, dtype=np.float64) for x in extra]
    out = []
    for i in range(cfg.starts):
        out.append(seeds[i] if i < len(seeds) else _random_seed(g.n, cfg.seed, i))
    return np.stack(out)


# -- exact-ratio polish ----------------------------------------------------------------------------


def _log_ratio(X, nu, nv, du, dv) -> float:
    dn = X[nu] - X[nv]
    dd = X[du] - X[dv]
    num = np.sqrt(np.max(np.sum(dn * dn, axis=1)))
    den = np.sqrt(np.min(np.sum(dd * dd, axis=1)))
    if not den > 0:
        return math.inf
    return math.log(num / den)


def _normalized(X, du, dv):
    X = X - X.mean(axis=0)
    dd = X[du] - X[dv]
    m = math.sqrt(float(np.min(np.sum(dd * dd, axis=1))))
    return X / m if m > 0 else X


def slp_polish(X, nu, nv, du, dv, iterations: int = 40, box: float = 0.05):
    """Sequential LP on log distances within a shrinking trust box.

    Each step linearizes the near-maximal numerator and near-minimal
    denominator log distances, minimizes (max numerator) - (min denominator)
    over coordinate moves bounded by ``box``, and keeps the move only if the
    exact log ratio drops.
    """
    X = _normalized(np.array(X, dtype=np.float64), du, dv)
    n, d = X.shape
    cur = _log_ratio(X, nu, nv, du, dv)
    for _ in range(iterations):
        if box < 1e-12 or not math.isfinite(cur):
            break
        dn = X[nu] - X[nv]
        sqn = np.sum(dn * dn, axis=1)
        ln = 0.5 * np.log(np.maximum(sqn, 1e-300))
        dd = X[du] - X[dv]
        sqd = np.sum(dd * dd, axis=1)
        ld = 0.5 * np.log(sqd)
        margin = 6.0 * box
        an = np.flatnonzero(ln >= ln.max() - margin)
        ad = np.flatnonzero(ld <= ld.min() + margin)
        nvar = n * d + 2
        rows = []
        rhs = []
        for k in an:
            row = np.zeros(nvar)
            grad = dn[k] / sqn[k]
            row[nu[k] * d:(nu[k] + 1) * d] += grad
            row[nv[k] * d:(nv[k] + 1) * d] -= grad
            row[-2] = -1.0
            rows.append(row)
            rhs.append(-ln[k])
        for k in ad:
            row = np.zeros(nvar)
            grad = dd[k] / sqd[k]
            row[du[k] * d:(du[k] + 1) * d] -= grad
            row[dv[k] * d:(dv[k] + 1) * d] += grad
            row[-1] = 1.0
            rows.append(row)
            rhs.append(ld[k])
        c = np.zeros(nvar)
        c[-2], c[-1] = 1.0, -1.0
        bounds = [(-box, box)] * (n * d) + [(None, None), (None, None)]
        res = linprog(c, A_ub=np.array(rows), b_ub=np.array(rhs), bounds=bounds, method="highs")
        if res.status != 0:
            box *= 0.25
            continue
        step = res.x[: n * d].reshape(n, d)
        cand = _normalized(X + step, du, dv)
        val = _log_ratio(cand, nu, nv, du, dv)
        if val < cur - 1e-15:
            X, cur = cand, val
            box = min(box * 2.0, 0.25)
        else:
            box *= 0.25
    return X, cur


def pattern_polish(X, nu, nv, du, dv, h0: float = 1e-4, h_min: float = 1e-8, max_moves: int = 200):
    """Compass search moving one vertex at a time, restricted to vertices
    on the current extreme distances."""
    X = np.array(X, dtype=np.float64)
    cur = _log_ratio(X, nu, nv, du, dv)
    dirs = [(math.cos(a), math.sin(a)) for a in np.arange(8) * math.pi / 4]
    if X.shape[1] == 1:
        dirs = [(1.0,), (-1.0,)]
    h = h0
    moves = 0
    while h >= h_min and moves < max_moves:
        improved = False
        dn = X[nu] - X[nv]
        dd = X[du] - X[dv]
        ln = np.sum(dn * dn, axis=1)
        ld = np.sum(dd * dd, axis=1)
        hot = set(nu[ln >= ln.max() * (1 - 1e-9)]) | set(nv[ln >= ln.max() * (1 - 1e-9)])
        hot |= set(du[ld <= ld.min() * (1 + 1e-9)]) | set(dv[ld <= ld.min() * (1 + 1e-9)])
        for v in sorted(int(x) for x in hot):
            for dv_ in dirs:
                trial = X.copy()
                trial[v] += h * np.asarray(dv_)
                val = _log_ratio(trial, nu, nv, du, dv)
                if val < cur - 1e-13:
                    X, cur, improved = trial, val, True
                    moves += 1
                    break
        if not improved:
            h *= 0.5
    return X, cur


# -- driver ---------------------------------------------------------------------------------------------


def _workers(cfg: OptimizerConfig) -> int:
    if cfg.workers is not None:
        return max(1, cfg.workers)
    env = os.environ.get("GML_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def _run_descent(X0, pairs, cfg: OptimizerConfig):
    (nu, nv), (du, dv) = pairs
    rule = kernels.ARMIJO if cfg.step_rule == "armijo" else kernels.FIXED
    temps = np.asarray(cfg.smoothing_schedule, dtype=np.float64)
    iters = max(1, cfg.iterations // len(temps))
    workers = _workers(cfg)

    def run(chunk):
        return kernels.descend(
            np.ascontiguousarray(chunk), nu, nv, du, dv, temps, iters, rule, 0.05, cfg.tolerance
        )

    # Fixed batches keep each start's arithmetic independent of the thread
    # count (vectorized numpy math can round differently with batch shape).
    chunks = [X0[i : i + DESCENT_BATCH] for i in range(0, len(X0), DESCENT_BATCH)]
    if workers == 1 or len(chunks) == 1:
        parts = [run(c) for c in chunks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, chunks))
    return (
        np.concatenate([p[0] for p in parts]),
        np.concatenate([p[1] for p in parts]),
        np.concatenate([p[2] for p in parts]),
    )


def _polish_one(X, pairs, cfg: OptimizerConfig):
    (nu, nv), (du, dv) = pairs
    X, _ = slp_polish(X, nu, nv, du, dv, iterations=cfg.polish_iterations)
    X, val = pattern_polish(X, nu, nv, du, dv)
    return X, val


def re_packing_bound(g: Graph) -> float:
    """Packing lower bound on re, maximized over nontrivial components."""
    best = 0.0
    for comp in g.components():
        if len(comp) > 1:
            sub, _ = g.induced(comp)
            best = max(best, re_lower_bound(sub))
    return best


def _lower_bound(g: Graph, target: str) -> float:
    return re_packing_bound(g) if target in ("re", "h") else 1.0


def optimize(
    g: Graph,
    target: str,
    cfg: OptimizerConfig | None = None,
    extra_seeds: Sequence[np.ndarray] = (),
) -> BoundResult:
    """Certified upper bound on dc, pw or re of ``g`` with a witness.

    Deterministic for a fixed config: starts are seeded by index, each start
    is processed independently, and the best exact ratio wins (lowest start
    index on ties).
    """
    cfg = cfg or OptimizerConfig()
    if target not in TARGETS + ("h",):
        raise ValueError(f"unknown target {target!r}")
    g.require_edge()
    pairs = target_pairs(g, target)
    X0 = initial_configs(g, cfg, extra_seeds)
    X, _, status = _run_descent(X0, pairs, cfg)
    for i in np.flatnonzero(status == kernels.NONFINITE):
        retry = _random_seed(g.n, cfg.seed, int(i), attempt=1)[None]
        Xr, _, st = _run_descent(retry, pairs, cfg)
        X[i] = Xr[0]
        status[i] = st[0]
    good = [i for i in range(len(X)) if status[i] != kernels.NONFINITE and np.all(np.isfinite(X[i]))]
    if not good:
        raise OptimizationError("every start produced non-finite values")
    best = None
    for i in good:
        Xi, val = _polish_one(X[i], pairs, cfg)
        if math.isfinite(val) and (best is None or val < best[0]):
            best = (val, i, Xi)
    if best is None:
        raise OptimizationError("no start produced a finite ratio")
    _, idx, Xb = best
    (du, dv) = pairs[1]
    Xb = _normalized(Xb, du, dv)
    witness = Representation.from_array(Xb)
    report = eval_ratios(g, witness)
    upper = report.ratio(target)
    return BoundResult(target, float(upper), witness, _lower_bound(g, target), report, int(idx))


def _add_point(X: np.ndarray) -> np.ndarray:
    """Previous configuration plus the point of a polar grid that is
    farthest from all existing points within the current radius."""
    X = X - X.mean(axis=0)
    rad = float(np.max(np.linalg.norm(X, axis=1))) or 1.0
    best, best_d = None, -1.0
    for r in np.linspace(0.0, rad, 21):
        for a in np.linspace(0.0, 2 * math.pi, 72, endpoint=False):
            p = np.array([r * math.cos(a), r * math.sin(a)])
            dmin = float(np.min(np.linalg.norm(X - p, axis=1)))
            if dmin > best_d + 1e-12:
                best, best_d = p, dmin
    return np.vstack([X, best])


def h_upper(n: int, cfg: OptimizerConfig | None = None, previous: BoundResult | None = None) -> BoundResult:
    """Upper bound on h(n), the best max/min distance ratio of n points, via
    the complete graph (where dc, pw and re coincide)."""
    if n < 2:
        raise ValueError("h(n) needs n >= 2")
    extra = []
    if previous is not None and previous.witness.n == n - 1:
        extra.append(_add_point(previous.witness.array))
    return optimize(complete(n), "h", cfg, extra_seeds=extra)


def h_table(n_max: int, cfg: OptimizerConfig | None = None) -> dict[int, BoundResult]:
    out: dict[int, BoundResult] = {}
    prev = None
    for n in range(2, n_max + 1):
        prev = out[n] = h_upper(n, cfg, prev)
    return out


def perfect_pw(g: Graph, cfg: OptimizerConfig | None = None) -> BoundResult:
    """Plane-width bound for graphs with chi = omega: collapse each color
    class of an optimal coloring onto one point of an h(chi) configuration."""
    g.require_edge()
    chi, col = chromatic_number(g)
    omega = clique_number(g)
    if chi != omega:
        raise NotApplicable("not applicable: graph not weakly perfect at top level")
    conf = h_upper(chi, cfg)
    pts = conf.witness.array
    witness = Representation.from_array(pts[list(col.colors)])
    report = eval_ratios(g, witness)
    return BoundResult("pw", float(report.pw_ratio), witness, 1.0, report)
