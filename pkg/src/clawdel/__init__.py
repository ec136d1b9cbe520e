"""Exact and approximate solvers for (weighted) claw-free vertex deletion."""

from .baselines import brute_force_min, greedy_4_approx
from .block import compute_block_tables, reconstruct_block_solution, solve_block_graph
from .claws import ClawWitness, find_claw, is_claw_free, verify_solution
from .errors import (
    ClawdelError,
    DecompositionError,
    GraphError,
    ParseError,
    ResourceError,
)
from .forest import (
    RootedTree,
    cdn_full_binary,
    cdn_full_kary,
    claw_deletion_set_tree,
    deletion_fraction,
    solve_forest,
)
from .generators import ReductionMap, gen_full_kary, gen_random, vc_to_split
from .graph import (
    BlockCutTree,
    WeightedGraph,
    block_cutpoint_tree,
    connected_components,
    delete_vertices,
    is_block_graph,
    parse_graph,
    serialize_graph,
)
from .solution import Solution
from .treewidth import (
    NiceTreeDecomposition,
    TreeDecomposition,
    heuristic_decomposition,
    make_nice,
    parse_td,
    solve_treewidth,
)

__version__ = "0.1.0"

__all__ = [
    "BlockCutTree",
    "ClawWitness",
    "ClawdelError",
    "DecompositionError",
    "GraphError",
    "NiceTreeDecomposition",
    "ParseError",
    "ReductionMap",
    "ResourceError",
    "RootedTree",
    "Solution",
    "TreeDecomposition",
    "WeightedGraph",
    "block_cutpoint_tree",
    "brute_force_min",
    "cdn_full_binary",
    "cdn_full_kary",
    "claw_deletion_set_tree",
    "compute_block_tables",
    "connected_components",
    "delete_vertices",
    "deletion_fraction",
    "find_claw",
    "gen_full_kary",
    "gen_random",
    "greedy_4_approx",
    "heuristic_decomposition",
    "is_block_graph",
    "is_claw_free",
    "make_nice",
    "parse_graph",
    "parse_td",
    "reconstruct_block_solution",
    "serialize_graph",
    "solve_block_graph",
    "solve_forest",
    "solve_treewidth",
    "vc_to_split",
    "verify_solution",
]
