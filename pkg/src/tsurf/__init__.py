"""Twisted-squares surfaces from admissible solutions of the Q-matching equations."""
from .triangulation import (
    IdealTriangulation, Perm4, TriangulationError, builtin, compute_cusp_links,
    compute_edge_classes, emit_triangulation, load_triangulation, parse_triangulation,
)

__all__ = [
    "IdealTriangulation", "Perm4", "TriangulationError", "builtin", "compute_cusp_links",
    "compute_edge_classes", "emit_triangulation", "load_triangulation", "parse_triangulation",
]

__version__ = "0.1.0"
