"""Optimistic-limit complex volumes of link diagrams and their transport across Reidemeister moves."""

from .coloring import (
    ShadowColoring,
    SolutionVector,
    construct_solution,
    propagate_regions,
    normalize_arc_colors,
    reconstruct_coloring,
    select_generic,
    validate_arc_coloring,
)
from .diagram import LinkDiagram, compute_regions, load_diagram, mirror, parse_diagram
from .dilog import BACKEND, li2, log_principal
from .moves import MoveDescriptor, RegionCorrespondence, apply_move, parse_move_plan
from .potential import build_potential, eval_W, evaluate
from .quandle import INF, ParabolicElement, det2, hopf, mobius_apply, star, star_inv
from .transform import transport_sequence
from .volume import ComplexVolume, compare_mod_pi2, eval_W0

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ComplexVolume",
    "INF",
    "LinkDiagram",
    "MoveDescriptor",
    "ParabolicElement",
    "RegionCorrespondence",
    "ShadowColoring",
    "SolutionVector",
    "apply_move",
    "build_potential",
    "compare_mod_pi2",
    "compute_regions",
    "construct_solution",
    "det2",
    "eval_W",
    "eval_W0",
    "evaluate",
    "hopf",
    "li2",
    "load_diagram",
    "log_principal",
    "mirror",
    "mobius_apply",
    "parse_diagram",
    "parse_move_plan",
    "propagate_regions",
    "normalize_arc_colors",
    "reconstruct_coloring",
    "select_generic",
    "star",
    "star_inv",
    "transport_sequence",
    "validate_arc_coloring",
]
