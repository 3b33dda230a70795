"""Deterministic (Delta+1) edge coloring at almost-linear desk-scale cost.

Public surface: graph construction and generators, partial colorings with
alternating-path machinery, separable u-fan collections, the type
sparsification pipeline, the recursive driver, classical oracles, and the
bench harness behind the `vizing` CLI.
"""

from .graph import (Graph, GraphError, load_edge_list, write_edge_list,
                    gen_random_graph, gen_random_regular, euler_partition)
from .coloring import (AlternatingPath, ColoringError, PartialColoring,
                       init_coloring, validate_coloring, dump_coloring,
                       load_coloring)
from .separable import UFan, CollectionError, SeparableCollection, initialize
from . import kernel

__all__ = [
    "Graph", "GraphError", "load_edge_list", "write_edge_list",
    "gen_random_graph", "gen_random_regular", "euler_partition",
    "AlternatingPath", "ColoringError", "PartialColoring", "init_coloring",
    "validate_coloring", "dump_coloring", "load_coloring",
    "UFan", "CollectionError", "SeparableCollection", "initialize",
    "kernel",
]

__version__ = "0.1.0"
