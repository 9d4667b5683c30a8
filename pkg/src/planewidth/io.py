"""Text formats: edge lists, DIMACS graphs, representation files, witnesses.

Edge list::

    n m
    u v        (m lines, 0-based)

DIMACS (1-based, converted on read)::

    c comment
    p edge n m
    e u v

Representation (one vertex per line, 1 or 2 coordinates)::

    v x [y]
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from pathlib import Path
from typing import Iterable

from .geometry import Representation
from .graph import Graph, GraphError, MinorWitness, make_graph


class ParseError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


def _lines(text: str) -> Iterable[tuple[int, list[str]]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(lineno, f"expected an integer, got {tok!r}") from None


def parse_graph(text: str) -> Graph:
    """Parse either format; DIMACS is detected by a ``p`` or ``c`` line."""
    rows = list(_lines(text))
    if not rows:
        raise ParseError(1, "empty graph file")
    if any(toks[0] in ("p", "c", "e") for _, toks in rows):
        return _parse_dimacs(rows)
    lineno, head = rows[0]
    if len(head) != 2:
        raise ParseError(lineno, "header must be 'n m'")
    n, m = _int(head[0], lineno), _int(head[1], lineno)
    edges = []
    for lineno, toks in rows[1:]:
        if len(toks) != 2:
            raise ParseError(lineno, "edge line must be 'u v'")
        edges.append((lineno, _int(toks[0], lineno), _int(toks[1], lineno)))
    if len(edges) != m:
        raise ParseError(rows[-1][0], f"header promises {m} edges, found {len(edges)}")
    return _build(n, edges, base=0)


def _parse_dimacs(rows) -> Graph:
    n = m = None
    edges = []
    for lineno, toks in rows:
        tag = toks[0]
        if tag == "c":
            continue
        if tag == "p":
            if len(toks) != 4 or toks[1] not in ("edge", "col"):
                raise ParseError(lineno, "problem line must be 'p edge n m'")
            n, m = _int(toks[2], lineno), _int(toks[3], lineno)
        elif tag == "e":
            if n is None:
                raise ParseError(lineno, "edge before problem line")
            if len(toks) != 3:
                raise ParseError(lineno, "edge line must be 'e u v'")
            edges.append((lineno, _int(toks[1], lineno), _int(toks[2], lineno)))
        else:
            raise ParseError(lineno, f"unknown DIMACS line type {tag!r}")
    if n is None:
        raise ParseError(rows[-1][0], "missing problem line")
    return _build(n, edges, base=1)


def _build(n: int, edges, base: int) -> Graph:
    if n < 1:
        raise ParseError(1, f"vertex count must be >= 1, got {n}")
    pairs = []
    for lineno, u, v in edges:
        u, v = u - base, v - base
        if u == v:
            raise ParseError(lineno, f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(lineno, f"endpoint out of range in ({u}, {v}) for n={n}")
        pairs.append((u, v))
    return make_graph(n, pairs)


def format_graph(g: Graph, fmt: str = "edgelist") -> str:
    if fmt == "edgelist":
        lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges]
    elif fmt == "dimacs":
        lines = [f"p edge {g.n} {g.m}"] + [f"e {u + 1} {v + 1}" for u, v in g.edges]
    else:
        raise ValueError(f"unknown graph format {fmt!r}")
    return "\n".join(lines) + "\n"


def read_graph(path: str | os.PathLike) -> Graph:
    return parse_graph(Path(path).read_text())


def write_graph(g: Graph, path: str | os.PathLike, fmt: str = "edgelist") -> None:
    Path(path).write_text(format_graph(g, fmt))


# -- representations ----------------------------------------------------------------


def _number(tok: str, lineno: int):
    try:
        return Fraction(tok) if "/" in tok else int(tok)
    except (ValueError, ZeroDivisionError):
        pass
    try:
        return float(tok)
    except ValueError:
        raise ParseError(lineno, f"expected a number, got {tok!r}") from None


def parse_representation(text: str, n: int | None = None) -> Representation:
    points = {}
    dim = None
    for lineno, toks in _lines(text):
        if len(toks) not in (2, 3):
            raise ParseError(lineno, "representation line must be 'v x [y]'")
        v = _int(toks[0], lineno)
        coords = tuple(_number(t, lineno) for t in toks[1:])
        if dim is None:
            dim = len(coords)
        elif dim != len(coords):
            raise ParseError(lineno, "mixed 1-D and 2-D coordinates")
        if v in points:
            raise ParseError(lineno, f"vertex {v} listed twice")
        points[v] = coords
    if dim is None:
        raise ParseError(1, "empty representation file")
    return Representation.from_mapping(points, n=n)


def _fmt_num(x) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return str(x)
    return repr(float(x))


def format_representation(rep: Representation) -> str:
    lines = [
        " ".join([str(v)] + [_fmt_num(c) for c in pt]) for v, pt in enumerate(rep.points)
    ]
    return "\n".join(lines) + "\n"


def read_representation(path: str | os.PathLike, n: int | None = None) -> Representation:
    return parse_representation(Path(path).read_text(), n=n)


def write_representation(rep: Representation, path: str | os.PathLike) -> None:
    Path(path).write_text(format_representation(rep))


# -- minor witnesses -----------------------------------------------------------------


def witness_to_json(w: MinorWitness) -> str:
    data = {
        "target": {"n": w.target.n, "edges": [list(e) for e in w.target.edges]},
        "branch_sets": [sorted(b) for b in w.branch_sets],
    }
    return json.dumps(data, indent=1)


def witness_from_json(text: str) -> MinorWitness:
    data = json.loads(text)
    try:
        target = make_graph(data["target"]["n"], data["target"]["edges"])
        return MinorWitness.of(data["branch_sets"], target)
    except (KeyError, TypeError, GraphError) as exc:
        raise ValueError(f"malformed witness: {exc}") from exc
