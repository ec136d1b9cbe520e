"""Minimum-weight claw-deletion sets of block graphs.

Dynamic programming over the block-cutpoint tree rooted at a cutpoint.  For
a cutpoint ``v`` with subgraph ``G_v`` (the blocks below it):

* ``f1(v)``: best deletion set of ``G_v`` that contains ``v``;
* ``f2(v)``: best deletion set of ``G_v`` that keeps ``v``;
* ``f3(v)``: best deletion set of ``G_v`` plus the parent block that keeps
  ``v`` and keeps some other vertex of the parent block.

For a block ``b`` with parent cutpoint ``p`` and ``G_b^- = G_b - p``:

* ``f1(b)``: best set of ``G_b^-`` that removes all of ``b - p``;
* ``f2(b)``: best set of ``G_b^-``;
* ``f3(b)``: best set of ``G_b`` that keeps ``p``.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .errors import GraphError
from .graph import BlockCutTree, WeightedGraph, block_cutpoint_tree, is_block_graph, is_connected
from .solution import Solution

# which function a node is expanded with during reconstruction
F1, F2, F3 = 1, 2, 3


@dataclass(eq=False)
class BlockDPTables:
    """Per-node values of the three functions, indexed by tree node.

    ``f3`` at the root is ``None``.  ``spared`` records, for a cutpoint, the
    child blocks left intact by its ``f2`` choice (with three or more child
    blocks) and ``spared3`` the one kept by ``f3``.  ``keeper`` records, for a
    block, the child cutpoint left alive by the second ``f2`` alternative, or
    ``-1`` when the first alternative won.
    """

    f1: list[int]
    f2: list[int]
    f3: list[int | None]
    s: list[int]
    spared: dict[int, tuple[int, ...]]
    spared3: dict[int, int]
    keeper: list[int]
    root: int

    @property
    def optimum(self) -> int:
        r = self.root
        return min(self.f1[r], self.f2[r])


def _block_sums(bct: BlockCutTree, g: WeightedGraph) -> list[int]:
    w = g.weights.tolist()
    cut = bct.cut_node
    return [sum(w[v] for v in block if v not in cut) for block in bct.blocks]


def compute_block_tables(bct: BlockCutTree, g: WeightedGraph) -> BlockDPTables:
    if bct.root is None:
        raise GraphError("the tree must be rooted at a cutpoint")
    nc = bct.num_cut
    size = nc + len(bct.blocks)
    w = g.weights.tolist()
    cutpoints = bct.cutpoints
    children = bct.children
    f1 = [0] * size
    f2 = [0] * size
    f3: list[int | None] = [0] * size
    s = [0] * size
    for i, x in enumerate(_block_sums(bct, g)):
        s[nc + i] = x
    spared: dict[int, tuple[int, ...]] = {}
    spared3: dict[int, int] = {}
    keeper = [-1] * size

    for x in reversed(bct.order):
        ch = children[x]
        if x >= nc:
            if not ch:
                f1[x], f2[x], f3[x] = s[x], 0, 0
                continue
            sum1 = 0
            sum13 = 0
            best_v, best_d = -1, None
            for v in ch:
                a, c = f1[v], f3[v]
                sum1 += a
                sum13 += a if a < c else c
                d = f2[v] - a
                if best_d is None or d < best_d:
                    best_v, best_d = v, d
            f1[x] = s[x] + sum1
            f3[x] = sum13
            alt = s[x] + sum1 + best_d
            if alt < sum13:
                f2[x] = alt
                keeper[x] = best_v
            else:
                f2[x] = sum13
            continue

        f1[x] = w[cutpoints[x]] + sum(f2[b] for b in ch)
        sum1 = sum(f1[b] for b in ch)
        if len(ch) <= 2:
            f2[x] = sum(f3[b] for b in ch)
        else:
            pair = heapq.nsmallest(2, ch, key=lambda b: (f3[b] - f1[b], b))
            f2[x] = sum1 + sum(f3[b] - f1[b] for b in pair)
            spared[x] = tuple(pair)
        if bct.parent[x] == -1:
            f3[x] = None
        elif len(ch) == 1:
            f3[x] = f3[ch[0]]
            spared3[x] = ch[0]
        else:
            b1 = min(ch, key=lambda b: (f3[b] - f1[b], b))
            f3[x] = sum1 + f3[b1] - f1[b1]
            spared3[x] = b1
    return BlockDPTables(f1, f2, f3, s, spared, spared3, keeper, bct.root)


def reconstruct_block_solution(tables: BlockDPTables, bct: BlockCutTree) -> list[int]:
    """Replay the recorded choices top-down; returns the deleted vertices."""
    if bct.root is None:
        return []
    nc = bct.num_cut
    f1, f3 = tables.f1, tables.f3
    cut = bct.cut_node
    r = tables.root
    out = []
    stack = [(r, F1 if f1[r] < tables.f2[r] else F2)]
    while stack:
        x, fn = stack.pop()
        ch = bct.children[x]
        if x < nc:
            if fn == F1:
                out.append(bct.cutpoints[x])
                stack.extend((b, F2) for b in ch)
            elif fn == F2:
                keep = tables.spared.get(x, ch)
                stack.extend((b, F3 if b in keep else F1) for b in ch)
            else:
                b1 = tables.spared3[x]
                stack.extend((b, F3 if b == b1 else F1) for b in ch)
            continue
        whole = fn == F1 or (fn == F2 and tables.keeper[x] != -1)
        if whole:
            out.extend(v for v in bct.block_of(x) if v not in cut)
        if fn == F1:
            stack.extend((v, F1) for v in ch)
        elif fn == F2 and tables.keeper[x] != -1:
            k = tables.keeper[x]
            stack.extend((v, F2 if v == k else F1) for v in ch)
        else:
            stack.extend((v, F1 if f1[v] < f3[v] else F3) for v in ch)
    out.sort()
    return out


def solve_block_graph(g: WeightedGraph, check: bool = True) -> Solution:
    """Minimum-weight claw-deletion set of a connected block graph."""
    if check:
        if not is_connected(g):
            raise GraphError("input is disconnected; solve each component separately")
        if not is_block_graph(g):
            raise GraphError("input is not a block graph")
    if 2 * g.m == g.n * (g.n - 1):
        return Solution((), 0, "block")
    bct = block_cutpoint_tree(g)
    tables = compute_block_tables(bct, g)
    vs = reconstruct_block_solution(tables, bct)
    sol = Solution(tuple(vs), g.weight_of(vs), "block")
    assert sol.weight == tables.optimum, "reconstruction does not match the table optimum"
    return sol


def format_tables(tables: BlockDPTables, bct: BlockCutTree) -> str:
    """Tab-separated dump of the three functions per tree node."""
    rows = ["node\tkind\tvertices\tf1\tf2\tf3"]
    for x in range(len(tables.f1)):
        if bct.is_block(x):
            kind, verts = "block", ",".join(map(str, bct.block_of(x)))
        else:
            kind, verts = "cut", str(bct.cutpoints[x])
        f3 = "-" if tables.f3[x] is None else str(tables.f3[x])
        rows.append(f"{x}\t{kind}\t{verts}\t{tables.f1[x]}\t{tables.f2[x]}\t{f3}")
    return "\n".join(rows) + "\n"
