"""Command line: ``planewidth {gen,invariants,optimize,construct,verify}``.

Exit codes: 0 when every executed check passes, 1 on a failed check, 2 on
usage errors (bad arguments, unreadable input, out-of-range parameters).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import geometry as geo
from . import graph as gr
from . import io
from .constructions import cubic_expansion, minor_rich_graph
from .onedim import bandwidth, chromatic_number, circular_chromatic, dc1, local_density, pw1, re1
from .optimize import OptimizerConfig, optimize, re_packing_bound
from .suites import SUITES, Check, graph_identity_checks, run_suite

SCHEMA = "planewidth-report/1"
FAMILIES = ("complete", "star", "cycle", "path", "wheel", "grid", "moser", "cubictree", "cubexp")


class UsageError(Exception):
    pass


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# -- graph arguments ---------------------------------------------------------------------------------


def generate(family: str, params: list[int]) -> gr.Graph:
    arity = {"moser": 0, "grid": 2}.get(family, 1)
    if family not in FAMILIES:
        raise UsageError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    if len(params) != arity:
        raise UsageError(f"family {family!r} takes {arity} integer parameter(s), got {len(params)}")
    try:
        if family == "complete":
            return gr.complete(params[0])
        if family == "star":
            return gr.star(params[0])
        if family == "cycle":
            return gr.cycle(params[0])
        if family == "path":
            return gr.path(params[0])
        if family == "wheel":
            return gr.wheel(params[0])
        if family == "grid":
            return gr.grid(params[0], params[1])
        if family == "moser":
            return gr.moser_spindle()
        if family == "cubictree":
            return gr.full_cubic_tree(params[0])
        return cubic_expansion(params[0])[0]
    except (gr.GraphError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


_SHORTHAND = [
    (r"K(\d+)", "complete"),
    (r"C(\d+)", "cycle"),
    (r"P(\d+)", "path"),
    (r"W(\d+)", "wheel"),
    (r"star(\d+)", "star"),
    (r"grid(\d+)x(\d+)", "grid"),
    (r"moser", "moser"),
    (r"cubictree(\d+)", "cubictree"),
    (r"cubexp(\d+)", "cubexp"),
]


def load_graph(spec: str) -> gr.Graph:
    """A graph file path, or a shorthand such as K7, C5, star16, grid3x4."""
    if os.path.exists(spec):
        try:
            return io.read_graph(spec)
        except io.ParseError as exc:
            raise UsageError(f"{spec}: {exc}") from exc
    for pattern, family in _SHORTHAND:
        m = re.fullmatch(pattern, spec)
        if m:
            return generate(family, [int(x) for x in m.groups()])
    raise UsageError(f"{spec!r} is neither a readable file nor a known graph shorthand")


# -- report ---------------------------------------------------------------------------------------------


@dataclass
class Report:
    """Machine-readable result of one command.

    Sections: ``graph`` (n, m, max_degree, clique_number), ``exact_1d``
    (chi, chi_c, bandwidth, dc1, pw1, re1, local_density; rationals as
    "p/q" strings), ``bounds_2d`` (per target: upper_bound, lower_bound,
    witness ratios; plus re_lower_bound) and ``checks``.
    """

    graph: dict = field(default_factory=dict)
    exact_1d: dict | None = None
    bounds_2d: dict | None = None
    checks: list[Check] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "graph": self.graph,
            "exact_1d": self.exact_1d,
            "bounds_2d": self.bounds_2d,
            "checks": [c.to_dict() for c in self.checks],
            "extra": self.extra,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> Report:
        if d.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        return cls(
            graph=d["graph"],
            exact_1d=d["exact_1d"],
            bounds_2d=d["bounds_2d"],
            checks=[Check.from_dict(c) for c in d["checks"]],
            extra=d.get("extra", {}),
        )

    @classmethod
    def from_json(cls, text: str) -> Report:
        return cls.from_dict(json.loads(text))


def graph_summary(g: gr.Graph) -> dict:
    return {"n": g.n, "m": g.m, "max_degree": gr.max_degree(g), "clique_number": gr.clique_number(g)}


def exact_section(g: gr.Graph) -> dict:
    return {
        "chi": chromatic_number(g)[0],
        "chi_c": _frac(circular_chromatic(g)[0]),
        "bandwidth": bandwidth(g)[0],
        "dc1": _frac(dc1(g).value),
        "pw1": _frac(pw1(g).value),
        "re1": _frac(re1(g).value),
        "local_density": _frac(local_density(g)),
    }


def bound_entry(res) -> dict:
    r = res.report
    return {
        "upper_bound": res.upper_bound,
        "lower_bound": res.lower_bound,
        "start_index": res.start_index,
        "witness_dc_ratio": r.dc_ratio,
        "witness_pw_ratio": r.pw_ratio,
        "witness_re_ratio": r.re_ratio,
    }


def witness_checks(g: gr.Graph, target: str, res) -> list[Check]:
    r = res.report
    checks = [
        Check(f"{target} witness reproduces its bound",
              abs(r.ratio(target) - res.upper_bound) <= 1e-6 * max(1.0, res.upper_bound)),
    ]
    if r.pw_ratio is not None:
        checks.append(Check(f"{target} witness: dc <= pw", geo.leq(r.dc_ratio, r.pw_ratio)))
    if r.re_ratio is not None and r.dc_ratio is not None:
        checks.append(Check(f"{target} witness: dc <= re", geo.leq(r.dc_ratio, r.re_ratio)))
    if target == "re":
        checks.append(Check("re upper bound >= packing lower bound",
                            res.upper_bound >= res.lower_bound - 1e-9,
                            f"{res.upper_bound:.9f} >= {res.lower_bound:.9f}"))
    if r.nvd and r.re_ratio < math.sqrt(2) - 1e-6:
        checks.append(Check(f"{target} witness with re < sqrt(2) is noncrossing",
                            geo.verify_noncrossing(g, res.witness)))
    return checks


# -- commands ---------------------------------------------------------------------------------------------


def _config(args) -> OptimizerConfig:
    if args.starts is not None and args.starts <= 0:
        raise UsageError("--starts must be positive")
    if args.iters is not None and args.iters <= 0:
        raise UsageError("--iters must be positive")
    if args.tol is not None and args.tol <= 0:
        raise UsageError("--tol must be positive")
    kw = {"seed": args.seed}
    if args.starts is not None:
        kw["starts"] = args.starts
    if args.iters is not None:
        kw["iterations"] = args.iters
    if args.tol is not None:
        kw["tolerance"] = args.tol
    return OptimizerConfig(**kw)


def _emit(text: str, out: str | None, name: str) -> None:
    if out:
        Path(out).mkdir(parents=True, exist_ok=True)
        (Path(out) / name).write_text(text)


def cmd_gen(args) -> int:
    g = generate(args.family, args.params)
    text = io.format_graph(g, args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_invariants(args) -> int:
    g = load_graph(args.graph)
    if g.m == 0:
        raise UsageError("graph has no edges")
    rep = Report(graph_summary(g), exact_section(g))
    rep.checks += graph_identity_checks(args.graph, g)
    if args.optimize:
        cfg = _config(args)
        rep.bounds_2d = {}
        for target in ("dc", "pw", "re"):
            res = optimize(g, target, cfg)
            rep.bounds_2d[target] = bound_entry(res)
            rep.checks += witness_checks(g, target, res)
        rep.bounds_2d["re_lower_bound"] = re_packing_bound(g)
    text = rep.to_json()
    sys.stdout.write(text)
    _emit(text, args.out, "report.json")
    return 0 if rep.ok else 1


def cmd_optimize(args) -> int:
    g = load_graph(args.graph)
    if g.m == 0:
        raise UsageError("graph has no edges")
    cfg = _config(args)
    res = optimize(g, args.target, cfg)
    rep = Report(graph_summary(g))
    rep.bounds_2d = {args.target: bound_entry(res)}
    rep.bounds_2d["re_lower_bound"] = res.lower_bound if args.target == "re" else None
    rep.checks += witness_checks(g, args.target, res)
    rep.extra["witness"] = [list(p) for p in res.witness.points]
    text = rep.to_json()
    sys.stdout.write(text)
    out = args.out or "."
    _emit(text, out, "report.json")
    _emit(io.format_representation(res.witness), out, f"witness_{args.target}.txt")
    _emit(geo.to_svg(g, res.witness, res.report), out, f"witness_{args.target}.svg")
    return 0 if rep.ok else 1


def cmd_construct(args) -> int:
    if args.n < 5:
        raise UsageError(f"construct needs n >= 5, got {args.n}")
    res = minor_rich_graph(args.n)
    transcript = res.transcript()
    sys.stdout.write(transcript)
    if args.out:
        _emit(io.format_graph(res.graph, args.format), args.out, "graph.txt")
        _emit(io.format_representation(res.representation), args.out, "representation.txt")
        _emit(io.witness_to_json(res.witness), args.out, "witness.json")
        _emit(geo.to_svg(res.graph, res.representation, res.report), args.out, "drawing.svg")
        _emit(transcript, args.out, "transcript.txt")
    return 0 if all(res.checks().values()) else 1


def cmd_verify(args) -> int:
    checks = run_suite(args.suite, args.seed)
    for c in checks:
        print(c.line())
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    if args.out:
        rep = Report(checks=checks, extra={"suite": args.suite, "seed": args.seed})
        _emit(rep.to_json(), args.out, f"verify_{args.suite}.json")
    return 0 if failed == 0 else 1


# -- parser ---------------------------------------------------------------------------------------------------


def _budget_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--starts", type=int, help="number of optimizer starts (default 64)")
    p.add_argument("--iters", type=int, help="descent iterations per start (default 2000)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, help="gradient tolerance of the smoothed descent")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="planewidth", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a generated graph")
    p.add_argument("family", help="|".join(FAMILIES))
    p.add_argument("params", nargs="*", type=int)
    p.add_argument("--format", choices=("edgelist", "dimacs"), default="edgelist")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("invariants", help="exact 1-D invariants and identity checks")
    p.add_argument("graph", help="graph file or shorthand (K7, C5, star16, grid3x4, moser, cubictree3)")
    p.add_argument("--optimize", action="store_true", help="also compute 2-D upper bounds")
    _budget_flags(p)
    p.add_argument("--out", help="directory for report.json")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("optimize", help="upper bound on dc, pw or re with a witness")
    p.add_argument("graph")
    p.add_argument("--target", choices=("dc", "pw", "re"), required=True)
    _budget_flags(p)
    p.add_argument("--out", help="directory for report, witness and SVG (default .)")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("construct", help="lattice graph with re = sqrt(2) and a K_n minor")
    p.add_argument("n", type=int)
    p.add_argument("--out", help="directory for graph, representation, witness, SVG, transcript")
    p.add_argument("--format", choices=("edgelist", "dimacs"), default="edgelist")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=tuple(SUITES) + ("all",))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="directory for the JSON summary")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"planewidth: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"planewidth: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
