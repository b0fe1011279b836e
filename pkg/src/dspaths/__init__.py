"""Disjoint and minimum-overlap shortest paths for two terminal pairs."""
from .dsp2 import decide, report
from .errors import DSPError, InternalError, RandomizedFailure
from .graph import WeightedGraph, bidirect, gen_random, gen_random_dag, parse, read_graph, write_graph
from .min2dsp_dag import solve_dag
from .min2dsp_directed import min_k
from .min2dsp_undirected import solve_undirected

__all__ = [
    "DSPError", "InternalError", "RandomizedFailure", "WeightedGraph", "bidirect", "decide",
    "gen_random", "gen_random_dag", "min_k", "parse", "read_graph", "report", "solve_dag",
    "solve_undirected", "write_graph",
]
