"""Tree decompositions and the bounded-treewidth solver."""

from .decomposition import (
    NiceTreeDecomposition,
    TreeDecomposition,
    decomposition_from_order,
    format_td,
    heuristic_decomposition,
    make_nice,
    min_fill_order,
    parse_td,
)
from .dp import DPResult, assign_slots, decode_state, run_dp, solve_treewidth

__all__ = [
    "DPResult",
    "NiceTreeDecomposition",
    "TreeDecomposition",
    "assign_slots",
    "decode_state",
    "decomposition_from_order",
    "format_td",
    "heuristic_decomposition",
    "make_nice",
    "min_fill_order",
    "parse_td",
    "run_dp",
    "solve_treewidth",
]
