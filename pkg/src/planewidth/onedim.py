"""Exact one-dimensional invariants.

On the line, the dilation coefficient is the circular chromatic number
minus one, the line-width is the chromatic number minus one, and the
resolution coefficient is the bandwidth. This module computes all of them
exactly, with witnesses, and implements the three conversions between
line placements and colorings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import kernels
from .geometry import Coloring, Representation, RepresentationError, eval_ratios
from .graph import Graph, clique_number, max_degree, shortest_odd_cycle


@dataclass(frozen=True)
class CircularColoring:
    """Map ``f: V -> [0, c)`` with ``1 <= |f(u) - f(v)| <= c - 1`` on edges."""

    c: Fraction
    f: tuple[Fraction, ...]

    def violations(self, g: Graph) -> list[tuple[int, int]]:
        bad = []
        for v, x in enumerate(self.f):
            if not 0 <= x < self.c:
                bad.append((v, v))
        for u, v in g.edges:
            gap = abs(self.f[u] - self.f[v])
            if not 1 <= gap <= self.c - 1:
                bad.append((u, v))
        return bad

    def is_valid(self, g: Graph) -> bool:
        return not self.violations(g)


@dataclass(frozen=True)
class Ordering:
    """Bijection ``pi: V -> {1..n}`` stored as ``pi[v]``."""

    pi: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.pi) != list(range(1, len(self.pi) + 1)):
            raise ValueError("ordering is not a bijection onto 1..n")

    def bandwidth(self, g: Graph) -> int:
        return max((abs(self.pi[u] - self.pi[v]) for u, v in g.edges), default=0)

    @classmethod
    def from_layout(cls, layout: Sequence[int]) -> Ordering:
        pi = [0] * len(layout)
        for i, v in enumerate(layout):
            pi[v] = i + 1
        return cls(tuple(pi))


@dataclass(frozen=True)
class LineWitness:
    """Exact value of a 1-D invariant plus a line representation attaining it."""

    value: Fraction
    witness: Representation

    def __float__(self) -> float:
        return float(self.value)


def _csr(g: Graph, vertices: Sequence[int]):
    index = {v: i for i, v in enumerate(vertices)}
    indptr = [0]
    indices = []
    for v in vertices:
        indices.extend(sorted(index[w] for w in g.adj[v] if w in index))
        indptr.append(len(indices))
    return np.asarray(indptr, dtype=np.int64), np.asarray(indices, dtype=np.int64)


def _edge_components(g: Graph) -> list[list[int]]:
    return [c for c in g.components() if len(c) > 1]


# -- chromatic number -----------------------------------------------------------------------


def _dsatur_count(g: Graph, vertices: Sequence[int]) -> int:
    color = {}
    vs = set(vertices)
    while len(color) < len(vs):
        def sat(v):
            return len({color[w] for w in g.adj[v] if w in color})
        v = max((v for v in vertices if v not in color), key=lambda v: (sat(v), len(g.adj[v]), -v))
        used = {color[w] for w in g.adj[v] if w in color}
        c = 0
        while c in used:
            c += 1
        color[v] = c
    return max(color.values()) + 1 if color else 0


def _k_coloring(g: Graph, comp: Sequence[int], k: int) -> list[int] | None:
    indptr, indices = _csr(g, comp)
    return kernels.circular_search(len(comp), indptr, indices, np.arange(len(comp), dtype=np.int64), k, 1, True)


def chromatic_number(g: Graph) -> tuple[int, Coloring]:
    """Exact chromatic number with the lexicographically smallest optimal
    coloring (colors 0..chi-1).

    Per component, candidate counts run upward from the clique number to the
    DSATUR count; each is settled by backtracking with forward checking.
    """
    g.require_edge()
    colors = [0] * g.n
    chi = 1
    for comp in _edge_components(g):
        sub, _ = g.induced(comp)
        lo = clique_number(sub)
        hi = _dsatur_count(g, comp)
        for k in range(lo, hi + 1):
            sol = _k_coloring(g, comp, k)
            if sol is not None:
                break
        for i, v in enumerate(comp):
            colors[v] = sol[i]
        chi = max(chi, max(sol) + 1)
    return chi, Coloring(tuple(colors))


# -- circular chromatic number ------------------------------------------------------------------


def _search_order(indptr, indices) -> np.ndarray:
    """BFS order from the highest-degree vertex, so each vertex after the
    first has an already colored neighbour."""
    n = len(indptr) - 1
    deg = np.diff(indptr)
    seen = np.zeros(n, dtype=bool)
    order: list[int] = []
    for root in sorted(range(n), key=lambda v: (-deg[v], v)):
        if seen[root]:
            continue
        seen[root] = True
        queue = [root]
        for u in queue:
            order.append(u)
            for w in indices[indptr[u]:indptr[u + 1]]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(int(w))
    return np.asarray(order, dtype=np.int64)


def _pq_coloring(g: Graph, comp: Sequence[int], p: int, q: int) -> list[int] | None:
    indptr, indices = _csr(g, comp)
    return kernels.circular_search(len(comp), indptr, indices, _search_order(indptr, indices), p, q, q == 1)


def _candidates(n: int, chi: int, odd_girth: int | None) -> list[Fraction]:
    lo = Fraction(2) if odd_girth is None else Fraction(odd_girth, (odd_girth - 1) // 2)
    vals = set()
    for q in range(1, n // 2 + 1):
        for p in range(max(2 * q, (chi - 1) * q + 1), min(chi * q, n) + 1):
            c = Fraction(p, q)
            if lo <= c:
                vals.add(c)
    return sorted(vals)


def circular_chromatic(g: Graph) -> tuple[Fraction, CircularColoring]:
    """Exact circular chromatic number ``p/q`` with a witness.

    Candidates are the fractions in ``(chi - 1, chi]`` with numerator at
    most n (the value is a cycle length over a count of forward edges),
    bounded below by the odd girth. Feasibility of a
    circular p/q-coloring is monotone in p/q and reduces to an integer
    (p, q)-coloring (values on the 1/q lattice), so a binary search over the
    sorted candidates finds the minimum.
    """
    g.require_edge()
    comps = _edge_components(g)
    best = Fraction(0)
    for comp in comps:
        sub, _ = g.induced(comp)
        k, _ = chromatic_number(sub)
        if k == 2:
            val = Fraction(2)
        else:
            cands = _candidates(len(comp), k, shortest_odd_cycle(sub))
            lo, hi = 0, len(cands) - 1  # cands[hi] == k is always feasible
            # the odd-girth bound is often tight; settle that case with one search
            if _pq_coloring(g, comp, cands[0].numerator, cands[0].denominator) is not None:
                hi = 0
            while lo < hi:
                mid = (lo + hi) // 2
                c = cands[mid]
                if _pq_coloring(g, comp, c.numerator, c.denominator) is not None:
                    hi = mid
                else:
                    lo = mid + 1
            val = cands[lo]
        best = max(best, val)
    f = [Fraction(0)] * g.n
    p, q = best.numerator, best.denominator
    for comp in comps:
        sol = _pq_coloring(g, comp, p, q)
        assert sol is not None
        for i, v in enumerate(comp):
            f[v] = Fraction(sol[i], q)
    return best, CircularColoring(best, tuple(f))


# -- bandwidth ----------------------------------------------------------------------------------------


def local_density(g: Graph) -> Fraction:
    """``max over v, r`` of ``(|N[v, r]| - 1) / (2r)``, where ``N[v, r]`` is
    the closed ball of graph radius r around v; maximized per component.

    The ball minus its center must fit within r * bw positions on each side,
    which makes this a bandwidth lower bound.
    """
    g.require_edge()
    best = Fraction(0)
    for v in range(g.n):
        dist = g.bfs_distances(v)
        ecc = max(dist)
        counts = [0] * (ecc + 1)
        for d in dist:
            if d >= 0:
                counts[d] += 1
        ball = counts[0]
        for r in range(1, ecc + 1):
            ball += counts[r]
            best = max(best, Fraction(ball - 1, 2 * r))
    return best


def bandwidth_lower_bound(g: Graph) -> int:
    chi, _ = chromatic_number(g)
    return max(math.ceil(max_degree(g) / 2), chi - 1, math.ceil(local_density(g)), 1)


def bandwidth(g: Graph) -> tuple[int, Ordering]:
    """Exact bandwidth with the optimal layout that is lexicographically
    smallest as a left-to-right vertex sequence (per component; components
    are laid out one after another)."""
    g.require_edge()
    layout: list[int] = []
    bw = 0
    for comp in g.components():
        if len(comp) == 1:
            layout.extend(comp)
            continue
        sub, labels = g.induced(comp)
        k = bandwidth_lower_bound(sub)
        indptr, indices = _csr(sub, range(sub.n))
        while True:
            sol = kernels.bandwidth_search(sub.n, indptr, indices, k)
            if sol is not None:
                break
            k += 1
        bw = max(bw, k)
        layout.extend(labels[i] for i in sol)
    return bw, Ordering.from_layout(layout)


def bandwidth_bruteforce(g: Graph) -> int:
    """Bandwidth by trying all n! orderings (test oracle, n <= 9)."""
    import itertools

    if g.n > 9:
        raise ValueError("bandwidth_bruteforce is limited to n <= 9")
    best = g.n
    for perm in itertools.permutations(range(g.n)):
        w = max(abs(perm[u] - perm[v]) for u, v in g.edges)
        best = min(best, w)
    return best


# -- 1-D invariants and their witnesses ------------------------------------------------------------


def dc1(g: Graph) -> LineWitness:
    """``chi_c(G) - 1``; the witness places each vertex at its circular color."""
    chic, cc = circular_chromatic(g)
    return LineWitness(chic - 1, Representation.line(cc.f))


def pw1(g: Graph) -> LineWitness:
    """``chi(G) - 1``; the witness puts color class i at the point i + 1."""
    chi, col = chromatic_number(g)
    return LineWitness(Fraction(chi - 1), Representation.line(c + 1 for c in col.colors))


def re1(g: Graph) -> LineWitness:
    """``bw(G)``; the witness places every vertex at its layout position."""
    bw, order = bandwidth(g)
    return LineWitness(Fraction(bw), Representation.line(order.pi))


def _exact_line(g: Graph, rep: Representation, min_point: int) -> list[Fraction]:
    """Exact copy of a 1-D placement, scaled to unit shortest edge gap and
    shifted so its smallest point is ``min_point``."""
    if rep.dim != 1:
        raise RepresentationError("a 1-D representation is required")
    if rep.n != g.n:
        raise RepresentationError(f"representation has {rep.n} points for {g.n} vertices")
    g.require_edge()
    xs = [Fraction(pt[0]) for pt in rep.points]
    gaps = [(abs(xs[u] - xs[v]), (u, v)) for u, v in g.edges]
    gmin, at = min(gaps)
    if gmin == 0:
        raise RepresentationError(f"edge {at} has zero length")
    lo = min(xs)
    return [(x - lo) / gmin + min_point for x in xs]


def wrap_circular(g: Graph, rep: Representation, c) -> CircularColoring:
    """Wrap a line placement around a circle of circumference ``c``.

    The placement is first normalized (shortest edge gap 1, leftmost point
    0); every edge gap must then be at most ``c - 1``. Each position x maps
    to ``x - c * floor(x / c)``.
    """
    c = Fraction(c)
    xs = _exact_line(g, rep, 0)
    for u, v in g.edges:
        if abs(xs[u] - xs[v]) > c - 1:
            raise RepresentationError(
                f"edge ({u}, {v}) has gap {abs(xs[u] - xs[v])} > c - 1 = {c - 1}"
            )
    f = tuple(x - c * math.floor(x / c) for x in xs)
    return CircularColoring(c, f)


def floor_coloring(g: Graph, rep: Representation) -> Coloring:
    """Color by ``floor(x)`` after normalizing to unit shortest edge gap and
    leftmost point 1. Uses at most ``floor(pw_ratio) + 1`` colors."""
    xs = _exact_line(g, rep, 1)
    return Coloring(tuple(math.floor(x) for x in xs))


def mod_rounding(g: Graph, rep: Representation) -> Representation:
    """Fold a normalized placement onto ``{0, .., k-1}`` with
    ``k = ceil(dc_ratio) + 1`` via ``floor(x) mod k``.

    Endpoints of an edge land on different integers unless their gap is
    above ``k - 1 >= dc_ratio``, which cannot happen, so the result is still
    non-edge-degenerate and has plane-width ratio at most ``k - 1``.
    """
    xs = _exact_line(g, rep, 0)
    gaps = [abs(xs[u] - xs[v]) for u, v in g.edges]
    k = math.ceil(max(gaps)) + 1
    return Representation.line(math.floor(x) % k for x in xs)


def line_ratios(g: Graph, rep: Representation) -> dict[str, Fraction | None]:
    """Exact 1-D ratios (rational arithmetic), complementing the float
    :func:`geometry.eval_ratios`."""
    xs = [Fraction(pt[0]) for pt in rep.points]
    edge = [abs(xs[u] - xs[v]) for u, v in g.edges]
    srt = sorted(xs)
    min_pair = min((b - a for a, b in zip(srt, srt[1:])), default=Fraction(0))
    max_pair = srt[-1] - srt[0]
    ne, xe = min(edge), max(edge)
    return {
        "dc": xe / ne if ne else None,
        "pw": max_pair / ne if ne else None,
        "re": xe / min_pair if min_pair else None,
    }
