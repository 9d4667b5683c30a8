"""Cubic graphs with resolution coefficient sqrt(2) and a K_n minor.

Pipeline: expand every vertex of K_n into a cycle (a cubic graph with a
K_n minor), draw it rectilinearly on the lattice 4Z x 4Z, turn every
crossing into a diagonal one, then put a vertex on every lattice point of
every route. All distances are then at least 1 and all edges at most
sqrt(2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .geometry import RatioReport, Representation, eval_ratios, verify_noncrossing
from .graph import Graph, GraphError, MinorWitness, complete, make_graph, max_degree, verify_minor_witness

Point = tuple
Edge = tuple[int, int]

SPACING = 12
PORT_OFFSET = {"L": -4, "U": 0, "R": 4}


class DrawingError(ValueError):
    """A drawing violates the rectilinear drawing conditions."""

    def __init__(self, msg: str, pair: tuple | None = None):
        super().__init__(msg)
        self.pair = pair


@dataclass(frozen=True)
class RectilinearDrawing:
    """Lattice drawing of a graph.

    ``edge_routes`` maps each edge ``(u, v)`` with ``u < v`` to the points
    of its polyline, from ``u``'s point to ``v``'s point. Before rotation the
    routes are axis-parallel with breakpoints on 4Z x 4Z; after rotation they
    are lattice paths with unit or diagonal steps. ``crossings`` holds
    ``(edge, edge, point)`` triples.
    """

    vertex_points: tuple[tuple[int, int], ...]
    edge_routes: dict[Edge, tuple[Point, ...]]
    crossings: frozenset = field(default_factory=frozenset)
    rotated: bool = False

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)


# -- cubic expansion ------------------------------------------------------------------------------


def expansion_vertex(n: int, v: int, u: int) -> int:
    """Label of the cycle vertex of ``v`` that faces ``u``."""
    return v * (n - 1) + (u if u < v else u - 1)


def cubic_expansion(n: int) -> tuple[Graph, MinorWitness]:
    """Replace each vertex of K_n by an (n-1)-cycle, one cycle vertex per
    former neighbour; the cycles are the branch sets of a K_n minor."""
    if n < 5:
        raise GraphError(f"cubic expansion needs n >= 5, got {n}")
    k = n - 1
    edges = []
    for v in range(n):
        edges += [(v * k + i, v * k + (i + 1) % k) for i in range(k)]
        edges += [(expansion_vertex(n, v, u), expansion_vertex(n, u, v)) for u in range(v + 1, n)]
    g = make_graph(n * k, edges)
    w = MinorWitness.of([range(v * k, (v + 1) * k) for v in range(n)], complete(n))
    return g, w


# -- exact segment geometry -------------------------------------------------------------------------


def _orient(a, b, c) -> int:
    v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (v > 0) - (v < 0)


def _on_segment(p, a, b) -> bool:
    """Collinear ``p`` lies in the closed box of ``a, b``."""
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def _intersection(a, b, c, d):
    """Classify the intersection of closed segments ab and cd.

    Returns None, ("cross", point) for a single interior-interior point,
    ("touch", point) for a single point that is an endpoint of either, or
    ("overlap", None) for collinear overlap of positive length.
    """
    o1, o2 = _orient(a, b, c), _orient(a, b, d)
    o3, o4 = _orient(c, d, a), _orient(c, d, b)
    if o1 == o2 == o3 == o4 == 0:
        if not (_on_segment(c, a, b) or _on_segment(d, a, b) or _on_segment(a, c, d)):
            return None
        pts = {p for p in (a, b) if _on_segment(p, c, d)} | {p for p in (c, d) if _on_segment(p, a, b)}
        if len(pts) == 1:
            return ("touch", next(iter(pts)))
        return ("overlap", None)
    if o1 * o2 > 0 or o3 * o4 > 0:
        return None
    for p, s, t in ((c, a, b), (d, a, b), (a, c, d), (b, c, d)):
        if _orient(s, t, p) == 0 and _on_segment(p, s, t):
            return ("touch", p)
    # proper crossing; solve exactly
    den = (b[0] - a[0]) * (d[1] - c[1]) - (b[1] - a[1]) * (d[0] - c[0])
    t = Fraction((c[0] - a[0]) * (d[1] - c[1]) - (c[1] - a[1]) * (d[0] - c[0]), den)
    x = a[0] + t * (b[0] - a[0])
    y = a[1] + t * (b[1] - a[1])
    return ("cross", (_simplify(x), _simplify(y)))


def _simplify(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def _merged_segments(route: Sequence[Point]) -> list[tuple[Point, Point]]:
    """Maximal straight pieces of a lattice polyline."""
    segs = []
    start = route[0]
    for i in range(1, len(route)):
        if i + 1 < len(route):
            d1 = (route[i][0] - route[i - 1][0], route[i][1] - route[i - 1][1])
            d2 = (route[i + 1][0] - route[i][0], route[i + 1][1] - route[i][1])
            if d1[0] * d2[1] - d1[1] * d2[0] == 0 and d1[0] * d2[0] + d1[1] * d2[1] > 0:
                continue
        segs.append((start, route[i]))
        start = route[i]
    return segs


def validate_drawing(d: RectilinearDrawing, g: Graph) -> frozenset:
    """Check the drawing conditions and return the crossing set.

    Conditions: every edge has a route between its endpoint points; vertex
    points are distinct; routes meet only at shared endpoints or at proper
    crossings of their interiors; no route passes through a vertex or
    another route's breakpoint; routes do not self-intersect; no two routes
    share a segment. Raises DrawingError naming the offending pair.
    """
    pts = d.vertex_points
    if len(pts) != g.n:
        raise DrawingError(f"drawing has {len(pts)} vertex points for {g.n} vertices")
    if len(set(pts)) != len(pts):
        raise DrawingError("two vertices share a point")
    if set(d.edge_routes) != set(g.edges):
        raise DrawingError("routes do not match the edge set")
    segs = []  # (edge, index, a, b)
    for e in g.edges:
        route = d.edge_routes[e]
        if len(route) < 2 or tuple(route[0]) != pts[e[0]] or tuple(route[-1]) != pts[e[1]]:
            raise DrawingError(f"route of {e} does not join its endpoints", (e,))
        for i, (a, b) in enumerate(_merged_segments([tuple(p) for p in route])):
            if a == b:
                raise DrawingError(f"route of {e} has a zero-length step", (e,))
            segs.append((e, i, a, b))
    if not segs:
        return frozenset()
    box = np.array(
        [[min(a[0], b[0]), max(a[0], b[0]), min(a[1], b[1]), max(a[1], b[1])] for _, _, a, b in segs],
        dtype=float,
    )
    crossings = set()
    for i, (e, si, a, b) in enumerate(segs):
        j = np.arange(i + 1, len(segs))
        hit = j[
            (box[j, 0] <= box[i, 1]) & (box[j, 1] >= box[i, 0]) & (box[j, 2] <= box[i, 3]) & (box[j, 3] >= box[i, 2])
        ]
        for jj in hit:
            f, sj, c, dd = segs[jj]
            res = _intersection(a, b, c, dd)
            if res is None:
                continue
            kind, p = res
            if e == f:
                if kind == "touch" and abs(si - sj) == 1 and p == (b if sj > si else a):
                    continue
                raise DrawingError(f"route of {e} intersects itself at {p}", (e, e))
            if kind == "overlap":
                raise DrawingError(f"routes of {e} and {f} share a segment", (e, f))
            if kind == "touch":
                shared = set(e) & set(f)
                if any(p == pts[v] for v in shared):
                    continue
                raise DrawingError(f"routes of {e} and {f} touch at {p}", (e, f))
            crossings.add((e, f, p))
    vset = {p: v for v, p in enumerate(pts)}
    for e, _, a, b in segs:
        for p in (a, b):
            v = vset.get(p)
            if v is not None and v not in e:
                raise DrawingError(f"route of {e} passes through vertex {v}", (e, v))
    for v, p in enumerate(pts):
        if g.degree(v) == 0:
            for e, _, a, b in segs:
                if _orient(a, b, p) == 0 and _on_segment(p, a, b):
                    raise DrawingError(f"route of {e} passes through vertex {v}", (e, v))
    return frozenset(crossings)


# -- rectilinear layout --------------------------------------------------------------------------------


def _assign_ports(g: Graph) -> dict[tuple[int, int], str]:
    """Port of vertex ``v`` used by its edge to ``u``, keyed ``(v, u)``."""
    ports = {}
    for v in range(g.n):
        free = ["L", "U", "R"]
        for u in sorted(g.adj[v]):
            if abs(u - v) == 1:
                side = "R" if u == v + 1 else "L"
                ports[(v, u)] = side
                free.remove(side)
        rest = sorted(u for u in g.adj[v] if abs(u - v) != 1)
        for u, side in zip(rest, free):
            ports[(v, u)] = side
    return ports


def rectilinear_layout(g: Graph) -> RectilinearDrawing:
    """Row-and-track drawing of a graph of maximum degree at most 3.

    Vertex ``i`` sits at ``(12 i, 0)`` with three ports: left and right
    stubs of length 4 and straight up. Edges between consecutive labels run
    along the row; every other edge leaves through a port, rises to its own
    horizontal track ``y = 4 (k + 1)`` and comes back down. Tracks are
    handed out by increasing span so short edges stay low. All coordinates
    are multiples of 4.
    """
    if g.n and max_degree(g) > 3:
        raise GraphError(f"rectilinear layout needs maximum degree <= 3, got {max_degree(g)}")
    pts = tuple((SPACING * i, 0) for i in range(g.n))
    ports = _assign_ports(g)
    routes: dict[Edge, tuple[Point, ...]] = {}
    tracked = sorted((e for e in g.edges if e[1] - e[0] != 1), key=lambda e: (e[1] - e[0], e))
    for e in g.edges:
        if e[1] - e[0] == 1:
            routes[e] = (pts[e[0]], pts[e[1]])
    for k, (u, v) in enumerate(tracked):
        y = 4 * (k + 1)
        xu = pts[u][0] + PORT_OFFSET[ports[(u, v)]]
        xv = pts[v][0] + PORT_OFFSET[ports[(v, u)]]
        route = [pts[u]]
        if xu != pts[u][0]:
            route.append((xu, 0))
        route += [(xu, y), (xv, y)]
        if xv != pts[v][0]:
            route.append((xv, 0))
        route.append(pts[v])
        routes[(u, v)] = tuple(route)
    d = RectilinearDrawing(pts, routes)
    crossings = validate_drawing(d, g)
    return RectilinearDrawing(pts, routes, crossings)


# -- crossing rotation ------------------------------------------------------------------------------------


def _densify(route: Sequence[Point]) -> list[Point]:
    out = [tuple(route[0])]
    for a, b in zip(route, route[1:]):
        dx, dy = b[0] - a[0], b[1] - a[1]
        steps = max(abs(dx), abs(dy))
        if steps == 0 or (dx and dy and abs(dx) != abs(dy)):
            raise DrawingError(f"route piece {a}->{b} is not a lattice line")
        sx, sy = (dx > 0) - (dx < 0), (dy > 0) - (dy < 0)
        out += [(a[0] + sx * i, a[1] + sy * i) for i in range(1, steps + 1)]
    return out


def rotate_crossings(d: RectilinearDrawing, g: Graph) -> RectilinearDrawing:
    """Replace every orthogonal crossing by a diagonal one.

    At a crossing ``c = (x, y)`` the horizontal route is rerouted from
    ``c`` to ``(x+1, y+1)`` and back to ``(x+2, y)``, and the vertical route
    is bent through ``(x+1, y)`` instead of ``c``. The routes now cross at
    ``(x+1/2, y+1/2)``, away from any lattice point, and every step has
    length 1 or sqrt(2). Routes are returned densified to lattice steps.
    """
    for p in d.vertex_points:
        if p[0] % 4 or p[1] % 4:
            raise DrawingError(f"vertex point {p} is not on 4Z x 4Z")
    routes = {e: _densify(r) for e, r in d.edge_routes.items()}
    for e, f, c in sorted(d.crossings, key=lambda t: (t[2], t[0], t[1])):
        if not all(isinstance(z, int) and z % 4 == 0 for z in c):
            raise DrawingError(f"crossing {c} is not on 4Z x 4Z", (e, f))
        x, y = c
        horiz = vert = None
        for edge in (e, f):
            r = routes[edge]
            i = r.index(c)
            if 0 < i < len(r) - 1 and r[i - 1][1] == y == r[i + 1][1]:
                horiz = edge
            elif 0 < i < len(r) - 1 and r[i - 1][0] == x == r[i + 1][0]:
                vert = edge
        if horiz is None or vert is None:
            raise DrawingError(f"crossing at {c} is not orthogonal", (e, f))
        rh = routes[horiz]
        rh[rh.index((x + 1, y))] = (x + 1, y + 1)
        rv = routes[vert]
        rv[rv.index(c)] = (x + 1, y)
    out = RectilinearDrawing(d.vertex_points, {e: tuple(r) for e, r in routes.items()}, rotated=True)
    crossings = validate_drawing(out, g)
    if len(crossings) != len(d.crossings):
        raise DrawingError(f"rotation changed the crossing count from {len(d.crossings)} to {len(crossings)}")
    return RectilinearDrawing(out.vertex_points, out.edge_routes, crossings, rotated=True)


# -- subdivision -----------------------------------------------------------------------------------------------


def subdivide_on_lattice(
    d: RectilinearDrawing, g: Graph, w: MinorWitness | None = None
) -> tuple[Graph, Representation, MinorWitness | None]:
    """Put a vertex on every lattice point of every route.

    Original vertices keep their labels; route vertices follow in edge
    order. Route vertices join the branch set containing the route's first
    endpoint, which keeps every branch set connected.
    """
    routes = {e: _densify(r) for e, r in d.edge_routes.items()}
    owner = {p: ("v", v) for v, p in enumerate(d.vertex_points)}
    points = list(d.vertex_points)
    edges = []
    branch_of = {}
    if w is not None:
        for i, bset in enumerate(w.branch_sets):
            for v in bset:
                branch_of[v] = i
    extra: list[list[int]] = [[] for _ in (w.branch_sets if w is not None else ())]
    for e in g.edges:
        r = routes[e]
        chain = [e[0]]
        for p in r[1:-1]:
            if p in owner:
                raise DrawingError(f"lattice point {p} used twice ({owner[p]} and edge {e})", (e,))
            owner[p] = ("e", e)
            chain.append(len(points))
            points.append(p)
            if w is not None:
                extra[branch_of[e[0]]].append(chain[-1])
        chain.append(e[1])
        edges += zip(chain, chain[1:])
    host = make_graph(len(points), edges)
    rep = Representation(2, tuple((int(x), int(y)) for x, y in points))
    lifted = None
    if w is not None:
        lifted = MinorWitness.of([set(b) | set(x) for b, x in zip(w.branch_sets, extra)], w.target)
    return host, rep, lifted


def contract_subdivisions(host: Graph, n_original: int) -> Graph:
    """Suppress the degree-2 vertices labelled ``>= n_original``."""
    edges = set()
    for s in range(n_original):
        for first in host.adj[s]:
            prev, cur = s, first
            while cur >= n_original:
                if host.degree(cur) != 2:
                    raise GraphError(f"vertex {cur} is not a subdivision vertex")
                nxt = next(x for x in host.adj[cur] if x != prev)
                prev, cur = cur, nxt
            edges.add((min(s, cur), max(s, cur)))
    return make_graph(n_original, edges)


# -- full pipeline ------------------------------------------------------------------------------------------------


@dataclass(frozen=True)
class MinorRichGraph:
    """A cubic-ish lattice graph with a K_n minor and resolution ratio at most sqrt(2)."""

    n: int
    graph: Graph
    representation: Representation
    witness: MinorWitness
    report: RatioReport
    base_graph: Graph
    drawing: RectilinearDrawing
    noncrossing: bool
    lower_bound: float = math.sqrt(2)

    def checks(self) -> dict[str, bool]:
        return {
            "min_pair >= 1": self.report.min_pair >= 1.0,
            "max_edge <= sqrt2": self.report.max_edge <= math.sqrt(2) + 1e-12,
            "minor witness": bool(verify_minor_witness(self.graph, self.witness)),
            "nonplanar drawing": not self.noncrossing,
            "max degree <= 3": max_degree(self.graph) <= 3,
        }

    def transcript(self) -> str:
        r = self.report
        ok = verify_minor_witness(self.graph, self.witness)
        lines = [
            f"graph: {self.graph.n} vertices, {self.graph.m} edges, max degree {max_degree(self.graph)}",
            f"base cubic graph: {self.base_graph.n} vertices, {self.drawing.crossing_count} crossings",
            f"re_ratio ≤ {math.ceil(r.re_ratio * 1e8) / 1e8:.8f}, min_pair = {r.min_pair:g}, "
            f"K{self.n} witness {'OK' if ok else 'FAILED (' + ok.reason + ')'}, "
            f"noncrossing = {str(self.noncrossing).lower()}",
        ]
        for name, passed in self.checks().items():
            lines.append(f"{'PASS' if passed else 'FAIL'} {name}")
        return "\n".join(lines) + "\n"


def minor_rich_graph(n: int) -> MinorRichGraph:
    """Run the whole pipeline for K_n (n >= 5)."""
    base, w = cubic_expansion(n)
    drawing = rotate_crossings(rectilinear_layout(base), base)
    host, rep, lifted = subdivide_on_lattice(drawing, base, w)
    report = eval_ratios(host, rep)
    noncrossing = verify_noncrossing(host, rep)
    return MinorRichGraph(n, host, rep, lifted, report, base, drawing, noncrossing)
