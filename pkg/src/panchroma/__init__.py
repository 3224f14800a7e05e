"""Randomized interval coloring for panchromatic colorings of uniform
hypergraphs, with failure analysis, exact oracles and log-space bounds."""

from .hypergraph import Hypergraph, edge_degrees, random_uniform, read_hg, validate, write_hg
from .coloring import PartitionParams, assign_weights, compute_p, interval_layout, is_panchromatic, run_coloring
from .conflicts import SnakeBall, extract_snake_ball, find_short_edges, verify_snake_ball

__version__ = "0.1.0"

__all__ = [
    "Hypergraph", "edge_degrees", "random_uniform", "read_hg", "validate", "write_hg",
    "PartitionParams", "assign_weights", "compute_p", "interval_layout", "is_panchromatic", "run_coloring",
    "SnakeBall", "extract_snake_ball", "find_short_edges", "verify_snake_ball",
]
