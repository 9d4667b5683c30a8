from fractions import Fraction

import pytest

from planewidth.geometry import Representation, RepresentationError
from planewidth.graph import complete, full_cubic_tree, moser_spindle
from planewidth.io import (
    ParseError,
    format_graph,
    format_representation,
    parse_graph,
    parse_representation,
    read_graph,
    witness_from_json,
    witness_to_json,
    write_graph,
)
from planewidth.graph import MinorWitness


@pytest.mark.parametrize("fmt", ["edgelist", "dimacs"])
def test_graph_round_trip(fmt, tmp_path):
    g = moser_spindle()
    assert parse_graph(format_graph(g, fmt)) == g
    path = tmp_path / "g.txt"
    write_graph(full_cubic_tree(2), path, fmt)
    assert read_graph(path) == full_cubic_tree(2)


def test_edgelist_header():
    assert format_graph(complete(5)).splitlines()[0] == "5 10"


def test_dimacs_is_one_based():
    g = parse_graph("c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n")
    assert g == complete(3)


def test_comments_and_blank_lines():
    g = parse_graph("# K2\n2 1\n\n0 1  # the edge\n")
    assert g.edges == ((0, 1),)


@pytest.mark.parametrize(
    "text, line, msg",
    [
        ("3 2\n0 1\n1 x\n", 3, "integer"),
        ("3 1\n0 0\n", 2, "self-loop"),
        ("3 1\n0 5\n", 2, "out of range"),
        ("3 2\n0 1\n", 2, "promises 2 edges"),
        ("p edge 3 1\ne 1 2 3\n", 2, "e u v"),
        ("p edge 3 1\nq 1 2\n", 2, "unknown"),
        ("", 1, "empty"),
    ],
)
def test_parse_errors_carry_line_numbers(text, line, msg):
    with pytest.raises(ParseError, match=msg) as info:
        parse_graph(text)
    assert info.value.lineno == line
    assert str(info.value).startswith(f"line {line}:")


def test_representation_round_trip():
    rep = Representation(2, ((0, 0), (Fraction(1, 3), 2.5), (-1, 1e-7)))
    back = parse_representation(format_representation(rep))
    assert back == rep


def test_representation_1d_and_errors():
    rep = parse_representation("0 0\n1 1.5\n2 3/2\n")
    assert rep.dim == 1 and rep.points[2] == (Fraction(3, 2),)
    with pytest.raises(ParseError, match="mixed"):
        parse_representation("0 0\n1 1 2\n")
    with pytest.raises(ParseError, match="twice"):
        parse_representation("0 0\n0 1\n")
    with pytest.raises(RepresentationError, match="missing point for vertex 1"):
        parse_representation("0 0\n2 1\n")
    with pytest.raises(RepresentationError, match="missing point"):
        parse_representation("0 0\n1 1\n", n=3)


def test_witness_json_round_trip():
    w = MinorWitness.of([{0, 1}, {2}, {3, 4}], complete(3))
    assert witness_from_json(witness_to_json(w)) == w
    with pytest.raises(ValueError, match="malformed"):
        witness_from_json('{"branch_sets": []}')
