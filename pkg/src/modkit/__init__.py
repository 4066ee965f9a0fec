"""Modularity of graphs: exact optima, heuristics, random regular graphs and bounds."""

from .errors import DomainError, ModkitError
from .exact import brute_force_optimum, random_partition_expectation
from .graph import Graph, Partition, ScoreBreakdown, read_edgelist, score, write_edgelist

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "Graph",
    "ModkitError",
    "Partition",
    "ScoreBreakdown",
    "brute_force_optimum",
    "random_partition_expectation",
    "read_edgelist",
    "score",
    "write_edgelist",
]
