"""Simple undirected graphs, the named families used throughout the package,
and minor witnesses.

Vertices are the dense integers ``0..n-1``. Every generator documents its
labeling so that representations and witnesses built on top of it are
reproducible.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

Edge = tuple[int, int]


class GraphError(ValueError):
    """Invalid graph input (self-loop, bad endpoint, bad generator size)."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``edges`` is a sorted tuple of pairs with the smaller endpoint first.
    Build instances through :func:`make_graph` or a generator; the
    constructor trusts its input.
    """

    n: int
    edges: tuple[Edge, ...]

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self.edge_set

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def pairs(self) -> Iterable[Edge]:
        """All 2-element vertex subsets, as ordered pairs ``u < v``."""
        return itertools.combinations(range(self.n), 2)

    def require_edge(self) -> None:
        if not self.edges:
            raise GraphError("graph has no edges; the invariants need at least one")

    def induced(self, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
        """Induced subgraph, relabeled densely; returns it with the old labels."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        edges = [
            (index[u], index[v]) for u, v in self.edges if u in index and v in index
        ]
        return Graph(len(keep), tuple(sorted(edges))), keep

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self.adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def bfs_distances(self, source: int) -> list[int]:
        """Graph distances from ``source``; ``-1`` marks unreachable vertices."""
        dist = [-1] * self.n
        dist[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for w in self.adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def make_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Canonical graph from a vertex count and an edge list.

    Duplicate and reversed pairs collapse to one edge. Self-loops and
    endpoints outside ``[0, n)`` are rejected with the offending pair.
    """
    if n < 1:
        raise GraphError(f"vertex count must be >= 1, got {n}")
    canon = set()
    for pair in edges:
        u, v = (int(x) for x in pair)
        if u == v:
            raise GraphError(f"self-loop at ({u}, {v})")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"endpoint out of range in ({u}, {v}) for n={n}")
        canon.add((u, v) if u < v else (v, u))
    return Graph(n, tuple(sorted(canon)))


# -- generators ---------------------------------------------------------------


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise GraphError(msg)


def complete(n: int) -> Graph:
    _need(n >= 1, "complete(n) needs n >= 1")
    return make_graph(n, itertools.combinations(range(n), 2))


def star(n: int) -> Graph:
    """K_{1,n}: center 0, leaves 1..n."""
    _need(n >= 1, "star(n) needs n >= 1")
    return make_graph(n + 1, ((0, i) for i in range(1, n + 1)))


def cycle(n: int) -> Graph:
    _need(n >= 3, "cycle(n) needs n >= 3")
    return make_graph(n, ((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> Graph:
    """Path on ``n`` vertices ``0-1-...-(n-1)``."""
    _need(n >= 1, "path(n) needs n >= 1")
    return make_graph(n, ((i, i + 1) for i in range(n - 1)))


def wheel(n: int) -> Graph:
    """Ring ``0..n-1`` plus hub ``n`` adjacent to every ring vertex."""
    _need(n >= 3, "wheel(n) needs a ring of size >= 3")
    ring = [(i, (i + 1) % n) for i in range(n)]
    spokes = [(i, n) for i in range(n)]
    return make_graph(n + 1, ring + spokes)


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """G □ H with vertex ``(a, b)`` labeled ``a * h.n + b``."""
    edges = []
    for a in range(g.n):
        for b1, b2 in h.edges:
            edges.append((a * h.n + b1, a * h.n + b2))
    for a1, a2 in g.edges:
        for b in range(h.n):
            edges.append((a1 * h.n + b, a2 * h.n + b))
    return make_graph(g.n * h.n, edges)


def grid(m: int, n: int) -> Graph:
    """P_m □ P_n; vertex ``(i, j)`` is ``i * n + j``."""
    return cartesian_product(path(m), path(n))


def moser_spindle() -> Graph:
    """Two unit rhombi sharing apex 0, far tips 3 and 6 joined by an edge.

    Rhombus one is the triangles 0-1-2 and 1-2-3, rhombus two is 0-4-5 and
    4-5-6.
    """
    edges = [
        (0, 1), (0, 2), (1, 2), (1, 3), (2, 3),
        (0, 4), (0, 5), (4, 5), (4, 6), (5, 6),
        (3, 6),
    ]
    return make_graph(7, edges)


def full_cubic_tree(k: int) -> Graph:
    """Full cubic tree with ``k`` layers below root 0, labeled in BFS order.

    Layer sizes are 1, 3, 6, ..., 3 * 2**(k-1); the total is 3 * 2**k - 2.
    """
    _need(k >= 1, "full_cubic_tree(k) needs k >= 1")
    edges = [(0, 1), (0, 2), (0, 3)]
    layer = [1, 2, 3]
    nxt = 4
    for _ in range(k - 1):
        new_layer = []
        for u in layer:
            for _child in range(2):
                edges.append((u, nxt))
                new_layer.append(nxt)
                nxt += 1
        layer = new_layer
    return make_graph(nxt, edges)


def cubic_tree_size(k: int) -> int:
    return 3 * 2**k - 2


# -- simple invariants ----------------------------------------------------------


def max_degree(g: Graph) -> int:
    return max((len(a) for a in g.adj), default=0)


def _greedy_color_bound(cands: list[int], adjmask: list[int]) -> tuple[list[int], list[int]]:
    """Sequential greedy coloring of ``cands``; returns vertices ordered by
    color class and the running color count (Tomita-style bound)."""
    order, bounds = [], []
    remaining = cands[:]
    color = 0
    while remaining:
        color += 1
        avail = 0
        for v in remaining:
            avail |= 1 << v
        rest = []
        for v in remaining:
            if avail >> v & 1:
                order.append(v)
                bounds.append(color)
                avail &= ~adjmask[v]
            else:
                rest.append(v)
        remaining = rest
    return order, bounds


def max_clique(g: Graph) -> list[int]:
    """A maximum clique (sorted vertex list) by branch-and-bound with a greedy
    coloring bound."""
    if g.n == 0:
        return []
    adjmask = [0] * g.n
    for u, v in g.edges:
        adjmask[u] |= 1 << v
        adjmask[v] |= 1 << u
    best: list[int] = [0]

    def expand(current: list[int], cands: list[int]) -> None:
        nonlocal best
        order, bounds = _greedy_color_bound(cands, adjmask)
        for idx in range(len(order) - 1, -1, -1):
            if len(current) + bounds[idx] <= len(best):
                return
            v = order[idx]
            new = [w for w in order[:idx] if adjmask[v] >> w & 1]
            current.append(v)
            if new:
                expand(current, new)
            elif len(current) > len(best):
                best = current[:]
            current.pop()

    expand([], list(range(g.n)))
    return sorted(best)


def clique_number(g: Graph) -> int:
    return len(max_clique(g))


def radius(g: Graph) -> int:
    """Minimum eccentricity; trees use the two-sweep diameter shortcut."""
    if not g.is_connected():
        raise GraphError("radius is undefined for a disconnected graph")
    if g.m == g.n - 1:
        d0 = g.bfs_distances(0)
        far = max(range(g.n), key=d0.__getitem__)
        return (max(g.bfs_distances(far)) + 1) // 2
    return min(max(g.bfs_distances(v)) for v in range(g.n))


def shortest_odd_cycle(g: Graph) -> int | None:
    """Length of a shortest odd cycle, or None for bipartite graphs."""
    best = None
    for s in range(g.n):
        dist = g.bfs_distances(s)
        for u, v in g.edges:
            if dist[u] >= 0 and dist[u] == dist[v]:
                length = 2 * dist[u] + 1
                if best is None or length < best:
                    best = length
    return best


# -- minor witnesses ------------------------------------------------------------


@dataclass(frozen=True)
class MinorWitness:
    """Branch sets in a host graph, one per vertex of ``target``."""

    branch_sets: tuple[frozenset[int], ...]
    target: Graph

    @classmethod
    def of(cls, branch_sets: Iterable[Iterable[int]], target: Graph) -> MinorWitness:
        return cls(tuple(frozenset(int(v) for v in b) for b in branch_sets), target)


@dataclass(frozen=True)
class WitnessCheck:
    """Outcome of :func:`verify_minor_witness`; truthy iff the witness holds.

    ``reason`` is one of ``ok``, ``size``, ``range``, ``overlap``,
    ``disconnected``, ``missing_edge``.
    """

    ok: bool
    reason: str = "ok"
    detail: str = field(default="", compare=False)

    def __bool__(self) -> bool:
        return self.ok


def verify_minor_witness(host: Graph, w: MinorWitness) -> WitnessCheck:
    """Check that the branch sets certify ``w.target`` as a minor of ``host``."""
    target = w.target
    if len(w.branch_sets) != target.n:
        return WitnessCheck(
            False, "size", f"{len(w.branch_sets)} branch sets for {target.n} target vertices"
        )
    owner = {}
    for i, bset in enumerate(w.branch_sets):
        for v in bset:
            if not 0 <= v < host.n:
                return WitnessCheck(False, "range", f"vertex {v} not in host")
            if v in owner:
                return WitnessCheck(
                    False, "overlap", f"vertex {v} in branch sets {owner[v]} and {i}"
                )
            owner[v] = i
    for i, bset in enumerate(w.branch_sets):
        if not bset:
            return WitnessCheck(False, "disconnected", f"branch set {i} is empty")
        start = next(iter(bset))
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for x in host.adj[u]:
                if x in bset and x not in seen:
                    seen.add(x)
                    stack.append(x)
        if len(seen) != len(bset):
            return WitnessCheck(False, "disconnected", f"branch set {i} is not connected")
    linked = set()
    for u, v in host.edges:
        a, b = owner.get(u), owner.get(v)
        if a is not None and b is not None and a != b:
            linked.add((min(a, b), max(a, b)))
    for i, j in target.edges:
        if (i, j) not in linked:
            return WitnessCheck(False, "missing_edge", f"no host edge between sets {i} and {j}")
    return WitnessCheck(True)


def _connected_masks(host: Graph) -> list[int]:
    adjmask = [0] * host.n
    for u, v in host.edges:
        adjmask[u] |= 1 << v
        adjmask[v] |= 1 << u
    out = []
    for mask in range(1, 1 << host.n):
        low = mask & -mask
        reach = low
        frontier = low
        while frontier:
            v = frontier.bit_length() - 1
            frontier &= ~(1 << v)
            new = adjmask[v] & mask & ~reach
            reach |= new
            frontier |= new
        if reach == mask:
            out.append(mask)
    return out


def brute_force_minor(host: Graph, target: Graph) -> MinorWitness | None:
    """Exhaustive minor search, meant as a test oracle for hosts of at most
    12 vertices.

    Branch sets are drawn from the connected vertex subsets of the host and
    assigned to target vertices in order, pruning as soon as a required
    target edge has no host edge behind it.
    """
    if host.n > 12:
        raise GraphError("brute_force_minor is limited to hosts with <= 12 vertices")
    k = target.n
    if k > host.n:
        return None
    masks = _connected_masks(host)
    adjmask = [0] * host.n
    for u, v in host.edges:
        adjmask[u] |= 1 << v
        adjmask[v] |= 1 << u
    nbhd = {}
    for mask in masks:
        acc = 0
        for v in range(host.n):
            if mask >> v & 1:
                acc |= adjmask[v]
        nbhd[mask] = acc
    chosen: list[int] = []

    def place(i: int, used: int) -> bool:
        if i == k:
            return True
        for mask in masks:
            if mask & used:
                continue
            if any(nbhd[mask] & chosen[j] == 0 for j in target.adj[i] if j < i):
                continue
            chosen.append(mask)
            if place(i + 1, used | mask):
                return True
            chosen.pop()
        return False

    if not place(0, 0):
        return None
    sets = [[v for v in range(host.n) if m >> v & 1] for m in chosen]
    return MinorWitness.of(sets, target)


def contract_branch_sets(host: Graph, branch_sets: Sequence[Iterable[int]]) -> Graph:
    """Quotient graph obtained by contracting each branch set to one vertex."""
    owner = {}
    for i, b in enumerate(branch_sets):
        for v in b:
            owner[v] = i
    edges = set()
    for u, v in host.edges:
        a, b = owner.get(u), owner.get(v)
        if a is not None and b is not None and a != b:
            edges.add((min(a, b), max(a, b)))
    return make_graph(len(branch_sets), edges)


def is_homomorphism(g: Graph, h: Graph, phi: Sequence[int]) -> bool:
    return all(h.has_edge(phi[u], phi[v]) for u, v in g.edges)
