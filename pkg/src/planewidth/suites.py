"""Built-in graph corpus and the named verification suites.

Every suite returns a list of :class:`Check` records; the command line
``verify`` command and the acceptance tests both run these.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import geometry as geo
from .constructions import contract_subdivisions, cubic_expansion, minor_rich_graph
from .graph import (
    Graph,
    clique_number,
    complete,
    cycle,
    full_cubic_tree,
    grid,
    make_graph,
    moser_spindle,
    path,
    star,
    wheel,
)
from .onedim import (
    bandwidth,
    bandwidth_bruteforce,
    chromatic_number,
    circular_chromatic,
    dc1,
    line_ratios,
    local_density,
    pw1,
    re1,
)
from .optimize import NotApplicable, OptimizerConfig, h_table, optimize, perfect_pw

SQRT2 = math.sqrt(2)

KNOWN_H = {
    2: 1.0,
    3: 1.0,
    4: math.sqrt(2),
    5: (1 + math.sqrt(5)) / 2,
    6: 2 * math.sin(math.radians(72)),
    7: 2.0,
    8: 1 / (2 * math.sin(math.pi / 14)),
}


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    value: str = ""

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def line(self) -> str:
        tail = f" ({self.value})" if self.value else ""
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}{tail}"

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "value": self.value}

    @classmethod
    def from_dict(cls, d: dict) -> Check:
        return cls(d["name"], d["status"] == "pass", d.get("value", ""))


def corpus() -> dict[str, Graph]:
    """Small instances of every generator, keyed by their CLI shorthand."""
    out: dict[str, Graph] = {}
    for n in range(2, 8):
        out[f"K{n}"] = complete(n)
    for n in range(3, 10):
        out[f"C{n}"] = cycle(n)
    for n in range(2, 9):
        out[f"P{n}"] = path(n)
    for n in range(1, 17):
        out[f"star{n}"] = star(n)
    out["W4"] = wheel(4)
    out["moser"] = moser_spindle()
    for m in range(2, 5):
        for n in range(m, 6):
            out[f"grid{m}x{n}"] = grid(m, n)
    for k in range(1, 5):
        out[f"cubictree{k}"] = full_cubic_tree(k)
    for n in (5, 6):
        out[f"cubexp{n}"] = cubic_expansion(n)[0]
    return out


# -- 1-D identities and bandwidth ---------------------------------------------------------------------


def graph_identity_checks(name: str, g: Graph) -> list[Check]:
    """Exact 1-D identities and inequalities for one graph."""
    chi, col = chromatic_number(g)
    chic, cc = circular_chromatic(g)
    bw, order = bandwidth(g)
    ld = local_density(g)
    d, p, r = dc1(g), pw1(g), re1(g)
    exact = {key: line_ratios(g, w.witness)[key] for key, w in (("dc", d), ("pw", p), ("re", r))}
    return [
        Check(f"{name}: ceil(dc1) = pw1", math.ceil(d.value) == p.value, f"dc1={d.value}, pw1={p.value}"),
        Check(f"{name}: pw1 <= re1", p.value <= r.value, f"pw1={p.value}, re1={r.value}"),
        Check(f"{name}: chi = ceil(chi_c)", chi == math.ceil(chic), f"chi={chi}, chi_c={chic}"),
        Check(f"{name}: bw >= chi - 1", bw >= chi - 1, f"bw={bw}"),
        Check(f"{name}: bw >= ceil(local density)", bw >= math.ceil(ld), f"bw={bw}, ld={ld}"),
        Check(f"{name}: coloring witness proper", col.is_proper(g) and col.count == chi),
        Check(f"{name}: circular witness valid", cc.is_valid(g)),
        Check(f"{name}: layout witness attains bw", order.bandwidth(g) == bw),
        Check(f"{name}: line witnesses attain dc1, pw1, re1",
              exact == {"dc": d.value, "pw": p.value, "re": r.value}),
    ]


def identities(seed: int = 0) -> list[Check]:
    checks = []
    for name, g in corpus().items():
        checks += graph_identity_checks(name, g)
    return checks


def bandwidth_oracle(seed: int = 0) -> list[Check]:
    checks = []
    for name, g in corpus().items():
        if g.n <= 8:
            bb, bf = bandwidth(g)[0], bandwidth_bruteforce(g)
            checks.append(Check(f"{name}: bandwidth search = exhaustive", bb == bf, f"{bb} vs {bf}"))
    for m in range(1, 5):
        for n in range(1, 5):
            if m * n < 2:
                continue
            bw = bandwidth(grid(m, n))[0]
            checks.append(Check(f"bw(grid({m},{n})) = min(m,n)", bw == min(m, n), f"bw={bw}"))
    return checks


# -- representation-level inequalities ----------------------------------------------------------------


def _random_subgraph(g: Graph, rng: np.random.Generator) -> tuple[Graph, list[int]] | None:
    keep = [v for v in range(g.n) if rng.random() < 0.7]
    sub, labels = g.induced(keep)
    edges = [e for e in sub.edges if rng.random() < 0.8]
    if not edges:
        return None
    return make_graph(sub.n, edges), labels


def pointwise_inequalities(seed: int = 0, samples: int = 1000, pairs: int = 100) -> list[Check]:
    """dc <= pw and dc <= re on random representations; re does not grow
    under restriction to a subgraph."""
    rng = np.random.default_rng([seed, 4])
    graphs = list(corpus().values())
    bad = 0
    for _ in range(samples):
        g = graphs[int(rng.integers(len(graphs)))]
        rep = geo.Representation.from_array(rng.normal(size=(g.n, 2)) * rng.uniform(0.1, 10))
        rr = geo.eval_ratios(g, rep)
        if not (rr.nvd and rr.dc_ratio <= rr.pw_ratio and rr.dc_ratio <= rr.re_ratio):
            bad += 1
    checks = [Check(f"dc <= pw and dc <= re on {samples} random representations", bad == 0, f"{bad} violations")]
    bad = done = 0
    while done < pairs:
        g = graphs[int(rng.integers(len(graphs)))]
        picked = _random_subgraph(g, rng)
        if picked is None:
            continue
        h, labels = picked
        rep = geo.Representation.from_array(rng.normal(size=(g.n, 2)))
        big = geo.eval_ratios(g, rep).re_ratio
        small = geo.eval_ratios(h, rep.restrict(labels)).re_ratio
        bad += not geo.leq(small, big)
        done += 1
    checks.append(Check(f"re ratio monotone under restriction on {pairs} subgraph pairs", bad == 0, f"{bad} violations"))
    return checks


def _random_unit_lattice(rng: np.random.Generator) -> tuple[Graph, geo.Representation] | None:
    side = int(rng.integers(2, 9))
    pts = [(x, y) for x in range(side) for y in range(side) if rng.random() < 0.6]
    index = {p: i for i, p in enumerate(pts)}
    edges = []
    for (x, y), i in index.items():
        for q in ((x + 1, y), (x, y + 1)):
            if q in index and rng.random() < 0.9:
                edges.append((i, index[q]))
    if not edges:
        return None
    g = make_graph(len(pts), edges)
    angle = rng.uniform(0, 2 * math.pi)
    rot = np.array([[math.cos(angle), -math.sin(angle)], [math.sin(angle), math.cos(angle)]])
    arr = np.asarray(pts, dtype=float) @ rot.T + rng.uniform(-5, 5, size=2)
    return g, geo.Representation.from_array(arr)


def grid_coloring_chain(seed: int = 0, samples: int = 100) -> list[Check]:
    rng = np.random.default_rng([seed, 5])
    bad = done = 0
    worst = 0
    while done < samples:
        picked = _random_unit_lattice(rng)
        if picked is None:
            continue
        g, rep = picked
        col, t = geo.grid_coloring(g, rep)
        dc = geo.eval_ratios(g, rep).dc_ratio
        bound = (math.ceil(SQRT2 * dc - 1e-9) + 1) ** 2
        bad += not (col.is_proper(g) and col.count <= bound)
        worst = max(worst, col.count)
        done += 1
    checks = [Check(f"grid coloring proper within bound on {samples} unit-distance lattice graphs",
                    bad == 0, f"{bad} violations, at most {worst} colors")]
    k4 = complete(4)
    sq = geo.Representation(2, ((0, 0), (1, 0), (1, 1), (0, 1)))
    col, t = geo.grid_coloring(k4, sq)
    dc = geo.eval_ratios(k4, sq).dc_ratio
    checks.append(Check("grid coloring of K4 on the unit square",
                        col.is_proper(k4) and col.count <= (math.ceil(SQRT2 * dc - 1e-9) + 1) ** 2,
                        f"t={t}, {col.count} colors"))
    return checks


def packing_bounds(seed: int = 0, cfg: OptimizerConfig | None = None) -> list[Check]:
    cfg = cfg or OptimizerConfig(seed=seed)
    checks = []
    bounds = []
    for n in (9, 16, 25):
        res = optimize(star(n), "re", cfg)
        floor = (math.sqrt(n + 1) - 1) / 2
        bounds.append(res.upper_bound)
        checks.append(Check(f"re bound for star({n}) >= packing bound", res.upper_bound >= floor - 1e-9,
                            f"{res.upper_bound:.6f} >= {floor:.6f}"))
    checks.append(Check("star re bounds increase with n", bounds[0] < bounds[1] < bounds[2],
                        ", ".join(f"{b:.4f}" for b in bounds)))
    b20 = geo.cubic_tree_re_bound(20)
    checks.append(Check("cubic tree k=20 packing bound exceeds 3", b20 > 3, f"{b20:.4f}"))
    return checks


def planarity_of_good_witnesses(seed: int = 0, cfg: OptimizerConfig | None = None) -> list[Check]:
    """Any witness with re ratio below sqrt(2) must draw the graph without
    crossings."""
    cfg = cfg or OptimizerConfig(starts=8, iterations=600, seed=seed)
    checks = []
    examined = 0
    for name, g in corpus().items():
        for target in ("dc", "pw", "re"):
            res = optimize(g, target, cfg)
            rr = res.report
            if rr.nvd and rr.re_ratio < SQRT2 - 1e-6:
                examined += 1
                ok = geo.verify_noncrossing(g, res.witness)
                if not ok:
                    checks.append(Check(f"{name} {target} witness with re {rr.re_ratio:.6f} is noncrossing", False))
    checks.append(Check("witnesses with re < sqrt(2) are noncrossing",
                        all(c.passed for c in checks), f"{examined} witnesses examined"))
    return checks


def special_graphs(seed: int = 0, cfg: OptimizerConfig | None = None) -> list[Check]:
    cfg = cfg or OptimizerConfig(seed=seed)
    m = moser_spindle()
    chi, _ = chromatic_number(m)
    coords = geo.moser_coordinates()
    ratio = geo.eval_ratios(m, coords).dc_ratio
    checks = [
        Check("chi(moser) = 4", chi == 4, f"chi={chi}"),
        Check("moser coordinates are unit-distance", geo.check_unit_distance(m, coords, 1e-9)),
        Check("moser dc witness ratio <= 1 + 1e-6", ratio <= 1 + 1e-6, f"{ratio!r}"),
        Check("pw1(wheel(4)) = 2", pw1(wheel(4)).value == 2),
    ]
    for name, g, expect in (("W4", wheel(4), 1.0), ("K4", complete(4), SQRT2), ("C4", cycle(4), 1.0)):
        res = perfect_pw(g, cfg)
        checks.append(Check(f"perfect_pw({name}) ~ {expect:.6f}", abs(res.upper_bound - expect) <= 1e-3,
                            f"{res.upper_bound:.9f}"))
    for name, g in (("C5", cycle(5)), ("moser", m)):
        try:
            perfect_pw(g, cfg)
            checks.append(Check(f"perfect_pw({name}) rejected", False))
        except NotApplicable:
            checks.append(Check(f"perfect_pw({name}) rejected", chromatic_number(g)[0] != clique_number(g)))
    return checks


def inequalities(seed: int = 0) -> list[Check]:
    return (
        pointwise_inequalities(seed)
        + grid_coloring_chain(seed)
        + packing_bounds(seed)
        + planarity_of_good_witnesses(seed)
        + special_graphs(seed)
    )


# -- optimizer table and constructions ----------------------------------------------------------------


def known_h_values(seed: int = 0, cfg: OptimizerConfig | None = None) -> list[Check]:
    cfg = cfg or OptimizerConfig(seed=seed)
    checks = []
    for n, res in h_table(8, cfg).items():
        ref = KNOWN_H[n]
        ok = abs(res.upper_bound - ref) <= 1e-2 and res.upper_bound >= ref - 1e-3
        checks.append(Check(f"h({n}) upper bound", ok, f"{res.upper_bound:.9f} vs {ref:.9f}"))
    return checks


def complete_graph_growth(seed: int = 0, cfg: OptimizerConfig | None = None, n_max: int = 12) -> list[Check]:
    """Upper bounds on h(n) for n = 4..n_max never decrease, stay above the
    certified spread lower bound and grow like sqrt(n)."""
    cfg = cfg or OptimizerConfig(starts=16, iterations=1000, seed=seed)
    tab = h_table(n_max, cfg)
    ns = list(range(4, n_max + 1))
    ub = [tab[n].upper_bound for n in ns]
    lb = [geo.spread_lower_bound(n) for n in ns]
    scaled = [u / math.sqrt(n) for u, n in zip(ub, ns)]
    return [
        Check(f"h upper bounds nondecreasing on n = 4..{n_max}", all(a <= b for a, b in zip(ub, ub[1:])),
              ", ".join(f"{u:.4f}" for u in ub)),
        Check("h upper bounds above the spread lower bound", all(u >= l for u, l in zip(ub, lb)),
              f"min gap {min(u - l for u, l in zip(ub, lb)):.4f}"),
        Check("h(n) / sqrt(n) stays within [sqrt(3)/2 (1 - 1/sqrt(n)), 1]",
              all(lo <= x <= 1.0 for lo, x in zip((l / math.sqrt(n) for l, n in zip(lb, ns)), scaled)),
              f"{min(scaled):.4f}..{max(scaled):.4f}"),
    ]


def constructions(seed: int = 0, sizes=(5, 6)) -> list[Check]:
    checks = []
    for n in sizes:
        res = minor_rich_graph(n)
        for name, ok in res.checks().items():
            checks.append(Check(f"K{n} construction: {name}", ok))
        back = contract_subdivisions(res.graph, res.base_graph.n)
        checks.append(Check(f"K{n} construction: contraction recovers the cubic graph", back == res.base_graph))
    return checks


SUITES: dict[str, Callable[[int], list[Check]]] = {
    "identities": lambda seed=0: identities(seed) + bandwidth_oracle(seed),
    "inequalities": inequalities,
    "table1": lambda seed=0: known_h_values(seed) + complete_graph_growth(seed),
    "constructions": constructions,
}


def run_suite(name: str, seed: int = 0) -> list[Check]:
    if name == "all":
        out = []
        for key in SUITES:
            out += SUITES[key](seed)
        return out
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    return SUITES[name](seed)

