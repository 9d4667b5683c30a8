"""Dilation coefficient, plane-width and resolution coefficient of graphs."""

from .constructions import cubic_expansion, minor_rich_graph
from .geometry import (
    RatioReport,
    Representation,
    eval_ratios,
    grid_coloring,
    re_lower_bound,
    verify_noncrossing,
)
from .graph import (
    Graph,
    GraphError,
    MinorWitness,
    clique_number,
    complete,
    cycle,
    full_cubic_tree,
    grid,
    make_graph,
    max_degree,
    moser_spindle,
    path,
    star,
    verify_minor_witness,
    wheel,
)
from .kernels import BACKEND
from .onedim import bandwidth, chromatic_number, circular_chromatic, dc1, local_density, pw1, re1
from .optimize import BoundResult, OptimizerConfig, h_upper, optimize, perfect_pw

__all__ = [
    "BACKEND",
    "BoundResult",
    "Graph",
    "GraphError",
    "MinorWitness",
    "OptimizerConfig",
    "RatioReport",
    "Representation",
    "bandwidth",
    "chromatic_number",
    "circular_chromatic",
    "clique_number",
    "complete",
    "cubic_expansion",
    "cycle",
    "dc1",
    "eval_ratios",
    "full_cubic_tree",
    "grid",
    "grid_coloring",
    "h_upper",
    "local_density",
    "make_graph",
    "max_degree",
    "minor_rich_graph",
    "moser_spindle",
    "optimize",
    "path",
    "perfect_pw",
    "pw1",
    "re1",
    "re_lower_bound",
    "star",
    "verify_minor_witness",
    "verify_noncrossing",
    "wheel",
]
