import itertools

import pytest

from planewidth.graph import (
    GraphError,
    MinorWitness,
    brute_force_minor,
    cartesian_product,
    clique_number,
    complete,
    contract_branch_sets,
    cubic_tree_size,
    cycle,
    full_cubic_tree,
    grid,
    is_homomorphism,
    make_graph,
    max_clique,
    max_degree,
    moser_spindle,
    path,
    radius,
    shortest_odd_cycle,
    star,
    verify_minor_witness,
    wheel,
)


def test_make_graph_canonical():
    k3 = make_graph(3, [(0, 1), (1, 2), (0, 2)])
    assert k3 == complete(3)
    k2 = make_graph(2, [(0, 1), (1, 0)])
    assert k2.m == 1 and k2.edges == ((0, 1),)


@pytest.mark.parametrize("edges, msg", [([(0, 0)], "self-loop"), ([(0, 3)], "out of range")])
def test_make_graph_rejects(edges, msg):
    with pytest.raises(GraphError, match=msg):
        make_graph(3, edges)


def test_generators_small_cases():
    s = star(4)
    assert s.n == 5 and s.degree(0) == 4
    g22 = grid(2, 2)
    assert (g22.n, g22.m) == (4, 4) and all(g22.degree(v) == 2 for v in range(4))
    w = wheel(4)
    assert (w.n, w.m) == (5, 8) and w.degree(4) == 4
    assert grid(3, 4) == cartesian_product(path(3), path(4))
    assert cycle(5).m == 5 and path(5).m == 4


@pytest.mark.parametrize("bad", [lambda: cycle(2), lambda: wheel(2), lambda: path(0), lambda: full_cubic_tree(0)])
def test_generators_reject_small(bad):
    with pytest.raises(GraphError):
        bad()


def test_generators_deterministic():
    assert full_cubic_tree(3) == full_cubic_tree(3)
    assert moser_spindle() == moser_spindle()


def test_moser_spindle_shape():
    m = moser_spindle()
    assert (m.n, m.m) == (7, 11)
    assert clique_number(m) == 3


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_full_cubic_tree(k):
    t = full_cubic_tree(k)
    assert t.n == cubic_tree_size(k) == 3 * 2**k - 2
    assert t.m == t.n - 1 and t.is_connected()
    assert t.degree(0) == 3 and max_degree(t) == 3
    degrees = sorted({t.degree(v) for v in range(t.n)})
    assert degrees == [1, 3]
    assert radius(t) == k


def test_cubic_tree_k1_is_claw():
    assert full_cubic_tree(1) == star(3)


def test_degree_and_cliques():
    assert max_degree(star(7)) == 7
    for n in range(1, 8):
        assert clique_number(complete(n)) == n
    assert clique_number(cycle(5)) == 2
    assert clique_number(grid(3, 3)) == 2
    clique = max_clique(wheel(5))
    assert len(clique) == 3


def test_clique_matches_bruteforce():
    g = moser_spindle()
    best = max(
        len(s) for r in range(1, g.n + 1) for s in itertools.combinations(range(g.n), r)
        if all(g.has_edge(a, b) for a, b in itertools.combinations(s, 2))
    )
    assert clique_number(g) == best


def test_odd_cycles_and_radius():
    assert shortest_odd_cycle(cycle(7)) == 7
    assert shortest_odd_cycle(grid(3, 3)) is None
    assert shortest_odd_cycle(moser_spindle()) == 3
    assert radius(star(9)) == 1
    assert radius(path(5)) == 2
    with pytest.raises(GraphError):
        radius(make_graph(4, [(0, 1), (2, 3)]))


def test_components_and_induced():
    g = make_graph(5, [(0, 1), (2, 3)])
    assert sorted(map(sorted, g.components())) == [[0, 1], [2, 3], [4]]
    sub, labels = grid(3, 3).induced([0, 1, 3, 4])
    assert sub == cycle(4) or sub.m == 4
    assert labels == [0, 1, 3, 4]


def test_minor_witness_identity():
    k4 = complete(4)
    w = MinorWitness.of([{i} for i in range(4)], k4)
    assert verify_minor_witness(k4, w)


def test_minor_witness_reasons():
    p5 = path(5)
    k3 = complete(3)
    assert verify_minor_witness(p5, MinorWitness.of([{0}, {1}, {2}], k3)).reason == "missing_edge"
    assert verify_minor_witness(p5, MinorWitness.of([{0, 2}, {1}, {3}], k3)).reason == "disconnected"
    assert verify_minor_witness(p5, MinorWitness.of([{0, 1}, {1}, {3}], k3)).reason == "overlap"
    assert verify_minor_witness(p5, MinorWitness.of([{0}, {1}], k3)).reason == "size"
    assert verify_minor_witness(p5, MinorWitness.of([{0}, {1}, {9}], k3)).reason == "range"


def test_trees_have_no_triangle_minor():
    assert brute_force_minor(path(5), complete(3)) is None
    assert brute_force_minor(full_cubic_tree(2), complete(3)) is None


def test_grid_has_k4_minor():
    g = grid(3, 3)
    w = brute_force_minor(g, complete(4))
    assert w is not None and verify_minor_witness(g, w)
    assert brute_force_minor(g, complete(5)) is None


def test_identity_witness_iff_subgraph():
    host = cycle(5)
    for target in (path(5), cycle(5), complete(5)):
        w = MinorWitness.of([{i} for i in range(5)], target)
        expect = all(host.has_edge(u, v) for u, v in target.edges)
        assert bool(verify_minor_witness(host, w)) == expect


def test_contract_branch_sets():
    g = cycle(6)
    assert contract_branch_sets(g, [{0, 1}, {2, 3}, {4, 5}]) == complete(3)


def test_homomorphism():
    assert is_homomorphism(cycle(9), cycle(3), [v % 3 for v in range(9)])
    assert not is_homomorphism(cycle(5), complete(2), [v % 2 for v in range(5)])
