import math

import numpy as np
import pytest

from planewidth.geometry import Representation, eval_ratios, verify_noncrossing
from planewidth.graph import complete, cycle, grid, make_graph, moser_spindle, star, wheel
from planewidth.optimize import (
    NotApplicable,
    OptimizerConfig,
    h_table,
    h_upper,
    optimize,
    pattern_polish,
    perfect_pw,
    re_packing_bound,
    stress_layout,
    structured_seeds,
    target_pairs,
)

QUICK = OptimizerConfig(starts=8, iterations=600)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"starts": 0},
        {"iterations": 0},
        {"smoothing_schedule": ()},
        {"smoothing_schedule": (0.1, 0.1, 1e-3)},
        {"smoothing_schedule": (0.1, 0.01)},
        {"smoothing_schedule": (0.1, -1.0)},
        {"step_rule": "newton"},
        {"tolerance": 0},
    ],
)
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        OptimizerConfig(**kwargs)


def test_unknown_target_and_edgeless_graph():
    with pytest.raises(ValueError, match="unknown target"):
        optimize(complete(3), "xx", QUICK)
    with pytest.raises(Exception):
        optimize(make_graph(3, []), "re", QUICK)


def test_k4_plane_width_is_square():
    res = optimize(complete(4), "pw", QUICK)
    assert res.upper_bound <= math.sqrt(2) + 1e-3
    assert res.upper_bound >= math.sqrt(2) - 1e-9


def test_pentagon_is_unit_distance():
    assert optimize(cycle(5), "dc", QUICK).upper_bound <= 1 + 1e-6


def test_star6_fits_a_hexagon():
    res = optimize(star(6), "re", QUICK)
    assert res.upper_bound <= 1 + 1e-3
    assert res.lower_bound == pytest.approx(re_packing_bound(star(6)))


@pytest.mark.parametrize("target", ["dc", "pw", "re"])
def test_witness_reproduces_the_bound(target):
    g = wheel(5)
    res = optimize(g, target, QUICK)
    rpt = eval_ratios(g, res.witness)
    assert rpt.ratio(target) == pytest.approx(res.upper_bound, rel=1e-12)
    assert rpt.dc_ratio <= rpt.pw_ratio and rpt.dc_ratio <= rpt.re_ratio
    assert res.lower_bound <= res.upper_bound
    # the witness is normalized: smallest denominator distance is 1
    den = rpt.min_edge if target in ("dc", "pw") else rpt.min_pair
    assert den == pytest.approx(1.0, rel=1e-12)


def test_determinism():
    a = optimize(moser_spindle(), "re", QUICK)
    b = optimize(moser_spindle(), "re", QUICK)
    assert a.upper_bound == b.upper_bound
    assert a.witness == b.witness and a.start_index == b.start_index


def test_thread_count_does_not_change_the_result(monkeypatch):
    base = optimize(grid(3, 3), "pw", QUICK)
    monkeypatch.setenv("GML_THREADS", "3")
    threaded = optimize(grid(3, 3), "pw", QUICK)
    assert threaded.to_dict() == base.to_dict()


def test_more_starts_never_hurt():
    # the first starts of a larger run are the same starts (in the same
    # descent batches), so the best can only improve
    g = wheel(6)
    small = optimize(g, "re", OptimizerConfig(starts=8, iterations=400))
    large = optimize(g, "re", OptimizerConfig(starts=16, iterations=400))
    assert large.upper_bound <= small.upper_bound


def test_homomorphism_pullback():
    # C9 -> C3 by i -> i mod 3; composing keeps every edge an edge of the triangle
    h = optimize(cycle(3), "dc", QUICK)
    g = cycle(9)
    rep = h.witness.pullback([i % 3 for i in range(9)])
    assert eval_ratios(g, rep).dc_ratio <= h.upper_bound * (1 + 1e-12)


def test_perfect_pw():
    assert perfect_pw(complete(4), QUICK).upper_bound == pytest.approx(math.sqrt(2), abs=1e-3)
    assert perfect_pw(cycle(4), QUICK).upper_bound == pytest.approx(1.0)
    res = perfect_pw(grid(3, 3), QUICK)
    assert res.upper_bound == pytest.approx(1.0)
    assert res.upper_bound <= h_upper(2, QUICK).upper_bound + 1e-12
    with pytest.raises(NotApplicable, match="weakly perfect"):
        perfect_pw(cycle(5), QUICK)


def test_structured_seeds_shapes():
    g = grid(3, 4)
    seeds = structured_seeds(g)
    assert seeds and all(s.shape == (12, 2) for s in seeds)
    X = stress_layout(g)
    assert X.shape == (12, 2) and np.all(np.isfinite(X))


def test_pattern_polish_never_worsens():
    g = complete(5)
    (nu, nv), (du, dv) = target_pairs(g, "re")
    X = np.random.default_rng(3).normal(size=(5, 2))
    start = eval_ratios(g, Representation.from_array(X)).re_ratio
    Y, val = pattern_polish(X, nu, nv, du, dv)
    assert val <= math.log(start) + 1e-15
    assert eval_ratios(g, Representation.from_array(Y)).re_ratio == pytest.approx(math.exp(val))


def test_good_witnesses_are_planar():
    for g in (grid(3, 3), cycle(6), star(5)):
        res = optimize(g, "re", QUICK)
        if res.upper_bound < math.sqrt(2) - 1e-6:
            assert verify_noncrossing(g, res.witness)


@pytest.mark.slow
def test_complete_graph_bounds_grow():
    tab = h_table(12, OptimizerConfig(starts=16, iterations=1000))
    values = [tab[n].upper_bound for n in range(4, 13)]
    assert all(a <= b for a, b in zip(values, values[1:]))
