"""Simulation and verification lab for local (LOCAL-model) graph algorithms."""

from .graph import Graph, girth, khop_view, line_graph, subdivide_for_cds, distance_power_graph
from .viewtree import ViewTree, views_equal

__all__ = [
    "Graph",
    "ViewTree",
    "distance_power_graph",
    "girth",
    "khop_view",
    "line_graph",
    "subdivide_for_cds",
    "views_equal",
]
