import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from planewidth.geometry import (
    DegenerateDrawing,
    RatioReport,
    Representation,
    RepresentationError,
    check_unit_distance,
    cubic_tree_re_bound,
    eval_ratios,
    grid_coloring,
    moser_coordinates,
    packing_radius_bound,
    re_lower_bound,
    regular_polygon,
    to_svg,
    verify_noncrossing,
)
from planewidth.graph import (
    GraphError,
    complete,
    cycle,
    full_cubic_tree,
    grid,
    make_graph,
    moser_spindle,
    path,
    star,
)
from strategies import points_2d, small_graphs

SQUARE = Representation(2, ((0, 0), (1, 0), (1, 1), (0, 1)))


def test_equilateral_triangle():
    rep = Representation.from_array(regular_polygon(3))
    r = eval_ratios(complete(3), rep)
    assert r.dc_ratio == pytest.approx(1) and r.pw_ratio == pytest.approx(1)
    assert r.re_ratio == pytest.approx(1)


def test_square_ratios_for_k4():
    r = eval_ratios(complete(4), SQUARE)
    assert r.pw_ratio == pytest.approx(math.sqrt(2))
    assert r.max_pair_at in ((0, 2), (1, 3))
    assert RatioReport.from_dict(r.to_dict()) == r


def test_vertex_degenerate_c4():
    rep = Representation(2, ((0, 0), (1, 0), (0, 0), (1, 0)))
    r = eval_ratios(cycle(4), rep)
    assert r.pw_ratio == pytest.approx(1)
    assert not r.nvd and r.re_ratio is None


def test_missing_vertex_rejected():
    with pytest.raises(RepresentationError, match="missing point for vertex 3"):
        eval_ratios(complete(4), Representation(2, ((0, 0), (1, 0), (0, 1))))


def test_bad_representations():
    with pytest.raises(RepresentationError):
        Representation(3, ((0, 0, 0),))
    with pytest.raises(RepresentationError, match="non-finite"):
        Representation(1, ((math.nan,),))
    with pytest.raises(RepresentationError, match="coordinates"):
        Representation(2, ((0,),))


def test_array_is_read_only():
    with pytest.raises(ValueError):
        SQUARE.array[0, 0] = 5


def test_unit_distance():
    assert check_unit_distance(moser_spindle(), moser_coordinates(), tol=1e-9)
    assert not check_unit_distance(complete(4), SQUARE)
    assert check_unit_distance(complete(2), Representation(2, ((3, 4), (-1, 7.5))))


def test_noncrossing_examples():
    assert not verify_noncrossing(complete(4), SQUARE)
    lattice = Representation(2, tuple((i, j) for i in range(3) for j in range(3)))
    assert verify_noncrossing(grid(3, 3), lattice)
    quad = Representation(2, ((0, 0), (3, 0), (2, 2), (0, 1)))
    assert verify_noncrossing(cycle(4), quad)
    # floats away from the exact path
    assert verify_noncrossing(cycle(5), Representation.from_array(regular_polygon(5)))


def test_noncrossing_rejects_degenerate_inputs():
    with pytest.raises(DegenerateDrawing) as info:
        verify_noncrossing(make_graph(3, [(0, 2)]), Representation(2, ((0, 0), (1, 0), (2, 0))))
    assert info.value.vertex == 1
    with pytest.raises(RepresentationError, match="vertex-degenerate"):
        verify_noncrossing(path(3), Representation(2, ((0, 0), (0, 0), (1, 1))))


def test_collinear_overlap_is_degenerate():
    # overlapping collinear edges always put an endpoint inside the other edge
    g = make_graph(4, [(0, 2), (1, 3)])
    rep = Representation(2, ((0, 0), (1, 0), (2, 0), (3, 0)))
    with pytest.raises(DegenerateDrawing):
        verify_noncrossing(g, rep)


def test_noncrossing_on_large_sparse_drawing():
    g = grid(10, 10)
    rep = Representation(2, tuple((i, j) for i in range(10) for j in range(10)))
    assert verify_noncrossing(g, rep)
    g2 = make_graph(100, list(g.edges) + [(0, 11), (1, 10)])
    assert not verify_noncrossing(g2, rep)


@given(points_2d(5))
def test_noncrossing_agrees_after_exact_rotation(pts):
    # the Pythagorean rotation (3/5, 4/5) maps integer points to exact rationals
    g = cycle(5)
    rep = Representation(2, tuple(pts))
    c, s = Fraction(3, 5), Fraction(4, 5)
    rot = Representation(2, tuple((c * x - s * y, s * x + c * y) for x, y in pts))
    try:
        expected = verify_noncrossing(g, rep)
    except DegenerateDrawing:
        with pytest.raises(DegenerateDrawing):
            verify_noncrossing(g, rot)
        return
    assert verify_noncrossing(g, rot) == expected


@given(small_graphs(), st.data())
def test_ratios_invariant_under_similarity(g, data):
    pts = data.draw(points_2d(g.n))
    rep = Representation(2, tuple(pts))
    base = eval_ratios(g, rep)
    angle = data.draw(st.floats(0, 2 * math.pi))
    scale = data.draw(st.floats(0.01, 100))
    shift = np.array(data.draw(st.tuples(st.floats(-50, 50), st.floats(-50, 50))))
    rot = np.array([[math.cos(angle), -math.sin(angle)], [math.sin(angle), math.cos(angle)]])
    moved = eval_ratios(g, Representation.from_array(scale * rep.array @ rot.T + shift))
    for key in ("dc", "pw", "re"):
        a, b = base.ratio(key), moved.ratio(key)
        assert (a is None) == (b is None)
        if a is not None:
            assert b == pytest.approx(a, rel=1e-9)


@given(small_graphs(), st.data())
def test_dc_is_the_smallest_ratio(g, data):
    rep = Representation(2, tuple(data.draw(points_2d(g.n))))
    r = eval_ratios(g, rep)
    assert r.dc_ratio >= 1
    assert r.dc_ratio <= r.pw_ratio * (1 + 1e-12)
    assert r.dc_ratio <= r.re_ratio * (1 + 1e-12)


def test_grid_coloring_examples():
    col, t = grid_coloring(complete(4), SQUARE)
    assert t == 3 and col.is_proper(complete(4)) and col.count <= 9
    col, t = grid_coloring(complete(2), Representation(2, ((0.3, 0.1), (1.3, 0.1))))
    assert t == 3 and col.is_proper(complete(2))
    col, t = grid_coloring(moser_spindle(), moser_coordinates())
    assert t == 3 and col.is_proper(moser_spindle())


@given(small_graphs(), st.data())
def test_grid_coloring_is_always_proper(g, data):
    rep = Representation(2, tuple(data.draw(points_2d(g.n))))
    if not eval_ratios(g, rep).ned:
        return
    col, t = grid_coloring(g, rep)
    assert col.is_proper(g)
    assert col.count <= t * t


def test_grid_coloring_rejects_degenerate_edge():
    with pytest.raises(RepresentationError, match="degenerate edge"):
        grid_coloring(path(3), Representation(2, ((0, 0), (0, 0), (1, 0))))


def test_packing_bounds():
    assert packing_radius_bound(1) == 0
    assert packing_radius_bound(9) == 1
    assert packing_radius_bound(101) == pytest.approx(4.525, abs=1e-3)
    assert re_lower_bound(star(100)) == pytest.approx((math.sqrt(101) - 1) / 2)
    assert cubic_tree_re_bound(3) == pytest.approx(re_lower_bound(full_cubic_tree(3)))
    with pytest.raises(GraphError):
        re_lower_bound(make_graph(4, [(0, 1), (2, 3)]))
    with pytest.raises(ValueError):
        packing_radius_bound(0)


def _packing_violation(n, radius, step=0.05):
    """Try to place n points with spacing >= 1 inside the closed disk of the
    given radius around the first point, greedily on a fine lattice."""
    ticks = np.arange(-radius, radius + 1e-12, step)
    cand = [(x, y) for x in ticks for y in ticks if x * x + y * y <= radius * radius + 1e-12]
    placed = [(0.0, 0.0)]
    for p in sorted(cand, key=lambda q: (q[0] ** 2 + q[1] ** 2, q)):
        if all((p[0] - a) ** 2 + (p[1] - b) ** 2 >= 1 - 1e-12 for a, b in placed):
            placed.append(p)
            if len(placed) >= n:
                return True
    return False


@pytest.mark.parametrize("n", [4, 9, 16])
def test_packing_bound_not_beaten_by_lattice_search(n):
    # strictly inside the certified radius there is no room for n points
    assert not _packing_violation(n, packing_radius_bound(n) * 0.999)


def test_svg_marks_extremes():
    svg = to_svg(complete(4), SQUARE, eval_ratios(complete(4), SQUARE))
    assert svg.startswith("<svg") and svg.count("<circle") == 4
    assert "max pair" in svg
    assert "<svg" in to_svg(path(3), Representation.line([0, 1, 2]))
