"""Concrete representations: ratio evaluation, geometric verifiers, the
square-grid coloring and disk-packing lower bounds.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import cached_property
from numbers import Real
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import kernels
from .graph import Graph, GraphError, cubic_tree_size, radius

SQRT2 = math.sqrt(2.0)
RTOL = 1e-9


class RepresentationError(ValueError):
    """A representation does not fit its graph or violates a precondition."""


class DegenerateDrawing(RepresentationError):
    """A vertex sits in the open interior of an edge segment."""

    def __init__(self, vertex: int, edge: tuple[int, int]):
        super().__init__(f"vertex {vertex} lies inside edge {edge}")
        self.vertex = vertex
        self.edge = edge


@dataclass(frozen=True)
class Representation:
    """Map from vertices ``0..n-1`` to points of R^1 or R^2.

    ``points`` keeps the coordinate objects as given (ints, floats or
    Fractions), so 1-D procedures can work exactly; ``array`` is the float
    view used for distance computations.
    """

    dim: int
    points: tuple[tuple[Real, ...], ...]

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise RepresentationError(f"dimension must be 1 or 2, got {self.dim}")
        for v, pt in enumerate(self.points):
            if len(pt) != self.dim:
                raise RepresentationError(f"vertex {v} has {len(pt)} coordinates")
            if not all(math.isfinite(c) for c in pt):
                raise RepresentationError(f"vertex {v} has a non-finite coordinate")

    @classmethod
    def from_array(cls, arr) -> Representation:
        a = np.asarray(arr, dtype=np.float64)
        if a.ndim == 1:
            a = a[:, None]
        return cls(a.shape[1], tuple(tuple(float(c) for c in row) for row in a))

    @classmethod
    def line(cls, values: Iterable[Real]) -> Representation:
        return cls(1, tuple((x,) for x in values))

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, Sequence[Real]], n: int | None = None) -> Representation:
        if n is None:
            n = max(mapping) + 1 if mapping else 0
        missing = [v for v in range(n) if v not in mapping]
        if missing:
            raise RepresentationError(f"missing point for vertex {missing[0]}")
        extra = [v for v in mapping if not 0 <= v < n]
        if extra:
            raise RepresentationError(f"point given for unknown vertex {extra[0]}")
        pts = tuple(tuple(mapping[v]) for v in range(n))
        dim = len(pts[0]) if pts else 2
        return cls(dim, pts)

    @property
    def n(self) -> int:
        return len(self.points)

    @cached_property
    def array(self) -> np.ndarray:
        a = np.array([[float(c) for c in pt] for pt in self.points], dtype=np.float64)
        a = a.reshape(len(self.points), self.dim)
        a.flags.writeable = False
        return a

    def scaled(self, factor: Real) -> Representation:
        return Representation(self.dim, tuple(tuple(c * factor for c in pt) for pt in self.points))

    def pullback(self, phi: Sequence[int]) -> Representation:
        """Representation of G given a map ``phi: V(G) -> V(H)`` into this one."""
        return Representation(self.dim, tuple(self.points[phi[v]] for v in range(len(phi))))

    def restrict(self, vertices: Sequence[int]) -> Representation:
        return Representation(self.dim, tuple(self.points[v] for v in vertices))


@dataclass(frozen=True)
class RatioReport:
    """Distance extremes of one representation and the three ratios.

    A ratio is None when its denominator vanishes.
    """

    max_edge: float
    min_edge: float
    max_pair: float
    min_pair: float
    dc_ratio: float | None
    pw_ratio: float | None
    re_ratio: float | None
    ned: bool
    nvd: bool
    max_edge_at: tuple[int, int]
    min_edge_at: tuple[int, int]
    max_pair_at: tuple[int, int]
    min_pair_at: tuple[int, int]

    def ratio(self, target: str) -> float | None:
        return {"dc": self.dc_ratio, "pw": self.pw_ratio, "re": self.re_ratio, "h": self.re_ratio}[target]

    def to_dict(self) -> dict:
        d = asdict(self)
        for key in ("max_edge_at", "min_edge_at", "max_pair_at", "min_pair_at"):
            d[key] = list(d[key])
        return d

    @classmethod
    def from_dict(cls, d: Mapping) -> RatioReport:
        kw = dict(d)
        for key in ("max_edge_at", "min_edge_at", "max_pair_at", "min_pair_at"):
            kw[key] = tuple(kw[key])
        return cls(**kw)


def _check_cover(g: Graph, rep: Representation) -> None:
    if rep.n < g.n:
        raise RepresentationError(f"missing point for vertex {rep.n}")
    if rep.n > g.n:
        raise RepresentationError(f"representation has {rep.n} points for {g.n} vertices")


def eval_ratios(g: Graph, rep: Representation) -> RatioReport:
    """Exact distance extremes by an exhaustive scan over edges and pairs."""
    g.require_edge()
    _check_cover(g, rep)
    eu = np.fromiter((u for u, _ in g.edges), dtype=np.int64, count=g.m)
    ev = np.fromiter((v for _, v in g.edges), dtype=np.int64, count=g.m)
    (max_e, i_max, min_e, i_min, max_p, mpu, mpv, min_p, npu, npv) = kernels.pair_extremes(
        rep.array, eu, ev
    )
    ned = min_e > 0
    nvd = min_p > 0
    return RatioReport(
        max_edge=max_e,
        min_edge=min_e,
        max_pair=max_p,
        min_pair=min_p,
        dc_ratio=max_e / min_e if ned else None,
        pw_ratio=max_p / min_e if ned else None,
        re_ratio=max_e / min_p if nvd else None,
        ned=ned,
        nvd=nvd,
        max_edge_at=g.edges[i_max],
        min_edge_at=g.edges[i_min],
        max_pair_at=(mpu, mpv),
        min_pair_at=(npu, npv),
    )


def leq(a: float, b: float, rtol: float = RTOL) -> bool:
    """``a <= b`` up to a relative tolerance."""
    return a <= b + rtol * max(abs(a), abs(b), 1.0)


def check_unit_distance(g: Graph, rep: Representation, tol: float = 1e-9) -> bool:
    rpt = eval_ratios(g, rep)
    if not rpt.ned:
        return False
    return rpt.max_edge / rpt.min_edge <= 1.0 + tol


# -- crossings ------------------------------------------------------------------------


def _is_exact(c) -> bool:
    return isinstance(c, (int, Fraction)) or (isinstance(c, float) and c.is_integer())


def verify_noncrossing(g: Graph, rep: Representation) -> bool:
    """True iff the straight-line drawing has no two crossing edges.

    Only edges with disjoint endpoint sets are compared. Integral or
    rational coordinates use exact orientation tests; other floats use a
    1e-12 relative guard. Raises :class:`RepresentationError` if the drawing
    is vertex-degenerate and :class:`DegenerateDrawing` if a vertex lies in
    the interior of an edge.
    """
    _check_cover(g, rep)
    if rep.dim != 2:
        raise RepresentationError("noncrossing check needs a planar representation")
    if len(set(rep.points)) < rep.n:
        raise RepresentationError("representation is vertex-degenerate")
    exact = all(_is_exact(c) for pt in rep.points for c in pt)
    if exact:
        pts = [tuple(Fraction(c) if not isinstance(c, int) else c for c in pt) for pt in rep.points]
        pts = [tuple(int(c) if isinstance(c, Fraction) and c.denominator == 1 else c for c in pt) for pt in pts]
        eps = 0
    else:
        pts = [tuple(float(c) for c in pt) for pt in rep.points]
        span = max(max(abs(c) for c in pt) for pt in pts) or 1.0
        eps = 1e-12 * span * span

    def orient(a, b, c):
        val = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        if val > eps:
            return 1
        if val < -eps:
            return -1
        return 0

    def on_segment(a, b, c):
        # c collinear with a-b: inside the closed bounding box
        return min(a[0], b[0]) <= c[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])

    arr = rep.array
    lengths = [float(np.hypot(*(arr[u] - arr[v]))) for u, v in g.edges]
    cell = max(lengths) if lengths else 1.0
    if cell <= 0:
        cell = 1.0

    def key(x, y):
        return (math.floor(x / cell), math.floor(y / cell))

    seg_cells = defaultdict(list)
    for i, (u, v) in enumerate(g.edges):
        (x0, y0), (x1, y1) = arr[u], arr[v]
        k0 = key(min(x0, x1), min(y0, y1))
        k1 = key(max(x0, x1), max(y0, y1))
        for cx in range(k0[0], k1[0] + 1):
            for cy in range(k0[1], k1[1] + 1):
                seg_cells[(cx, cy)].append(i)
    point_cells = defaultdict(list)
    for v in range(rep.n):
        point_cells[key(*arr[v])].append(v)

    for ck, segs in seg_cells.items():
        for i in segs:
            u, v = g.edges[i]
            a, b = pts[u], pts[v]
            for w in point_cells.get(ck, ()):
                if w == u or w == v:
                    continue
                c = pts[w]
                if orient(a, b, c) == 0 and on_segment(a, b, c):
                    raise DegenerateDrawing(w, (u, v))

    for segs in seg_cells.values():
        for x in range(len(segs)):
            u, v = g.edges[segs[x]]
            a, b = pts[u], pts[v]
            for y in range(x + 1, len(segs)):
                s, t = g.edges[segs[y]]
                if s in (u, v) or t in (u, v):
                    continue
                c, d = pts[s], pts[t]
                o1, o2 = orient(a, b, c), orient(a, b, d)
                o3, o4 = orient(c, d, a), orient(c, d, b)
                if o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4):
                    return False
                if (
                    (o1 == 0 and on_segment(a, b, c))
                    or (o2 == 0 and on_segment(a, b, d))
                    or (o3 == 0 and on_segment(c, d, a))
                    or (o4 == 0 and on_segment(c, d, b))
                ):
                    return False
    return True


# -- square-grid coloring -------------------------------------------------------------------


@dataclass(frozen=True)
class Coloring:
    colors: tuple

    @property
    def count(self) -> int:
        return len(set(self.colors))

    def is_proper(self, g: Graph) -> bool:
        return all(self.colors[u] != self.colors[v] for u, v in g.edges)


def _ceil_snap(x: float) -> int:
    # ceil that ignores float noise just above an integer
    r = round(x)
    if abs(x - r) <= RTOL * max(1.0, abs(x)):
        return int(r)
    return math.ceil(x)


def grid_coloring(g: Graph, rep: Representation) -> tuple[Coloring, int]:
    """Color vertices by their half-open cell inside a periodic square grid.

    After scaling the shortest edge to 1, the plane is tiled by squares of
    side ``t / sqrt(2)`` with ``t = ceil(sqrt(2) * dc_ratio) + 1``, each cut
    into ``t * t`` cells of side ``1 / sqrt(2)``. A vertex gets the (row,
    column) of its cell, 1-based. Two vertices in the same cell are closer
    than 1, two with the same label in different squares are farther apart
    than the longest edge, so the coloring is proper. Returns the coloring
    and ``t``.
    """
    if rep.dim != 2:
        raise RepresentationError("grid coloring needs a planar representation")
    rpt = eval_ratios(g, rep)
    if not rpt.ned:
        u, v = rpt.min_edge_at
        raise RepresentationError(f"degenerate edge ({u}, {v})")
    t = _ceil_snap(SQRT2 * rpt.dc_ratio) + 1
    for attempt in (t, math.ceil(SQRT2 * rpt.dc_ratio) + 1):
        scaled = rep.array * (SQRT2 / rpt.min_edge)
        cells = np.floor(scaled).astype(np.int64)
        labels = np.mod(cells, attempt) + 1
        coloring = Coloring(tuple((int(i), int(j)) for i, j in labels))
        if coloring.is_proper(g):
            return coloring, attempt
    raise RepresentationError("grid coloring came out improper (floating point breakdown)")


# -- packing bounds ---------------------------------------------------------------------------


def packing_radius_bound(n: int) -> float:
    """Radius certain to be reached: among ``n`` points with pairwise
    distance at least 1, some point lies at least ``(sqrt(n) - 1) / 2`` from
    any fixed one of them (disjoint radius-1/2 disks fit in a disk of radius
    R + 1/2)."""
    if n < 1:
        raise ValueError("packing_radius_bound needs n >= 1")
    return (math.sqrt(n) - 1.0) / 2.0


def spread_lower_bound(n: int) -> float:
    """Lower bound on h(n): ``n`` points with pairwise distance at least 1
    and diameter D fit in a disk of radius ``D / sqrt(3)`` (Jung), so their
    radius-1/2 disks fit in radius ``D / sqrt(3) + 1/2``; comparing areas
    gives ``D >= (sqrt(3) / 2) (sqrt(n) - 1)``."""
    if n < 1:
        raise ValueError("spread_lower_bound needs n >= 1")
    return math.sqrt(3.0) / 2.0 * (math.sqrt(n) - 1.0)


def re_lower_bound(g: Graph) -> float:
    """Certified lower bound on re(G) for a connected graph.

    Normalize the closest pair to distance 1. From a center vertex some other
    vertex is at least ``packing_radius_bound(n)`` away but at most
    ``radius(G)`` edges away, so one of those edges is long.
    """
    g.require_edge()
    if not g.is_connected():
        raise GraphError("re_lower_bound needs a connected graph; split into components")
    return packing_radius_bound(g.n) / radius(g)


def cubic_tree_re_bound(k: int) -> float:
    """:func:`re_lower_bound` of the full cubic tree with ``k`` layers,
    evaluated from the formula (the root is the center, eccentricity k)."""
    return packing_radius_bound(cubic_tree_size(k)) / k


# -- named coordinates -----------------------------------------------------------------------


def moser_coordinates() -> Representation:
    """Unit-distance coordinates for :func:`graph.moser_spindle`.

    Each rhombus has its apex at the origin and its far tip at distance
    sqrt(3); the rhombi are turned by +-alpha with 2 sqrt(3) sin(alpha) = 1
    so the tips are at unit distance.
    """
    alpha = math.asin(1.0 / (2.0 * math.sqrt(3.0)))
    pts = [(0.0, 0.0)]
    for sign in (1.0, -1.0):
        phi = sign * alpha
        for off in (math.pi / 6, -math.pi / 6):
            pts.append((math.cos(phi + off), math.sin(phi + off)))
        pts.append((math.sqrt(3.0) * math.cos(phi), math.sqrt(3.0) * math.sin(phi)))
    return Representation(2, tuple(pts))


def regular_polygon(k: int, radius: float = 1.0, phase: float = 0.0) -> np.ndarray:
    ang = phase + 2.0 * math.pi * np.arange(k) / k
    return radius * np.column_stack([np.cos(ang), np.sin(ang)])


def lattice_representation(g: Graph, coords: Sequence[tuple[int, int]]) -> Representation:
    if len(coords) != g.n:
        raise RepresentationError("one lattice point per vertex expected")
    return Representation(2, tuple((int(x), int(y)) for x, y in coords))


# -- SVG ------------------------------------------------------------------------------------------


def to_svg(g: Graph, rep: Representation, report: RatioReport | None = None, size: int = 480) -> str:
    """Static SVG: edges as segments, vertices as labeled circles; the
    extreme edge and pair distances are highlighted when a report is given."""
    arr = rep.array
    if rep.dim == 1:
        arr = np.column_stack([arr[:, 0], np.zeros(rep.n)])
    lo, hi = arr.min(axis=0), arr.max(axis=0)
    span = float(max(hi[0] - lo[0], hi[1] - lo[1], 1e-12))
    pad = 24.0
    scale = (size - 2 * pad) / span
    pts = [(pad + (x - lo[0]) * scale, size - pad - (y - lo[1]) * scale) for x, y in arr]
    small = rep.n > 200
    r = 1.5 if small else 6.0
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    for u, v in g.edges:
        (x0, y0), (x1, y1) = pts[u], pts[v]
        out.append(f'<line x1="{x0:.2f}" y1="{y0:.2f}" x2="{x1:.2f}" y2="{y1:.2f}" stroke="#555" stroke-width="1"/>')
    if report is not None:
        marks = [
            (report.max_edge_at, "#d62728", "max edge"),
            (report.min_edge_at, "#1f77b4", "min edge"),
            (report.max_pair_at, "#ff7f0e", "max pair"),
            (report.min_pair_at, "#2ca02c", "min pair"),
        ]
        for (u, v), colour, title in marks:
            if u < 0:
                continue
            (x0, y0), (x1, y1) = pts[u], pts[v]
            out.append(
                f'<line x1="{x0:.2f}" y1="{y0:.2f}" x2="{x1:.2f}" y2="{y1:.2f}" stroke="{colour}" '
                f'stroke-width="2.5" stroke-dasharray="6 3"><title>{title}</title></line>'
            )
    for v, (x, y) in enumerate(pts):
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{r}" fill="#fff" stroke="#000"/>')
        if not small:
            out.append(
                f'<text x="{x:.2f}" y="{y + 3:.2f}" font-size="8" text-anchor="middle">{v}</text>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
