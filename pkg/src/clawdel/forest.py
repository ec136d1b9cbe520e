"""Minimum claw-deletion sets of unweighted trees and forests.

A forest is claw-free exactly when it is a linear forest (max degree 2), so
the solver decides, bottom-up, which vertices to remove so that every vertex
keeps at most two neighbours.  Closed forms for full k-ary trees live here
too.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order

from .errors import GraphError
from .graph import WeightedGraph, component_labels
from .solution import Solution


@dataclass(frozen=True, eq=False)
class RootedTree:
    """A tree together with a root; ``parent[root] == -1``.

    ``order`` is a breadth-first order from the root, so every vertex
    appears after its parent.
    """

    graph: WeightedGraph
    root: int
    parent: np.ndarray
    order: np.ndarray

    @classmethod
    def from_graph(cls, g: WeightedGraph, root: int = 0) -> "RootedTree":
        if g.n == 0:
            raise GraphError("a tree needs at least one vertex")
        if not 0 <= root < g.n:
            raise GraphError(f"root {root} out of range")
        if g.m != g.n - 1 or component_labels(g)[0] != 1:
            raise GraphError("input is not a tree")
        order, pred = breadth_first_order(g.to_csr(), root, directed=True, return_predecessors=True)
        parent = pred.astype(np.int64)
        parent[root] = -1
        return cls(g, root, parent, order.astype(np.int64))

    @property
    def n(self) -> int:
        return self.graph.n

    def children(self, v: int) -> list[int]:
        p = self.parent[v]
        return [u for u in self.graph.adj[v] if u != p]


def _deletion_set(order, parent, n: int) -> np.ndarray:
    """Bottom-up pass shared by trees and forests; returns a boolean membership array.

    ``kept[i]`` counts the children of the ``i``-th vertex in ``order`` that
    stayed out of the set.  A child's membership is final before its parent
    is visited: it can only be added by itself or by one of its own children.
    Working in order positions keeps parent lookups nearly sequential.
    """
    order = np.asarray(order, dtype=np.int64)
    parent = np.asarray(parent, dtype=np.int64)
    pos = np.empty(n, dtype=np.int64)
    pos[order] = np.arange(len(order))
    par = parent[order]
    ppos = np.where(par >= 0, pos[np.maximum(par, 0)], -1).tolist()
    in_set = bytearray(n)
    kept = [0] * n
    for i in range(len(ppos) - 1, -1, -1):
        p = ppos[i]
        c = kept[i]
        if c >= 3:
            in_set[i] = 1
        elif c == 2 and p >= 0 and not in_set[i]:
            in_set[p] = 1
        if p >= 0 and not in_set[i]:
            kept[p] += 1
    out = np.zeros(n, dtype=bool)
    out[order] = np.frombuffer(in_set, dtype=np.uint8).astype(bool)
    return out


def claw_deletion_set_tree(t: RootedTree) -> list[int]:
    """Minimum claw-deletion set of a rooted tree, as a sorted vertex list."""
    return np.flatnonzero(_deletion_set(t.order, t.parent, t.n)).tolist()


def forest_order(g: WeightedGraph, components=None) -> tuple[np.ndarray, np.ndarray]:
    """BFS order and parents for a forest, each tree rooted at its smallest vertex.

    A virtual vertex ``n`` joined to every root lets a single C-level BFS
    cover all components; it is stripped from the result.  ``components``
    may pass in a precomputed ``component_labels(g)``.
    """
    n = g.n
    k, labels = components if components is not None else component_labels(g)
    _, roots = np.unique(labels, return_index=True)
    src = np.repeat(np.arange(n, dtype=np.int64), np.diff(g.indptr))
    rows = np.concatenate([src, np.full(k, n), roots])
    cols = np.concatenate([g.indices, roots, np.full(k, n)])
    csr = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n + 1, n + 1))
    order, pred = breadth_first_order(csr, n, directed=True, return_predecessors=True)
    parent = pred[:n].astype(np.int64)
    parent[roots] = -1
    return order[1:].astype(np.int64), parent


def solve_forest(g: WeightedGraph) -> Solution:
    """Minimum-cardinality claw-deletion set of a forest (weights are ignored)."""
    if g.n == 0:
        return Solution((), 0, "forest")
    order, pred = breadth_first_order(g.to_csr(), 0, directed=False, return_predecessors=True)
    if len(order) == g.n:
        # connected: a tree rooted at vertex 0
        if g.m != g.n - 1:
            raise GraphError("input contains a cycle")
        parent = pred.astype(np.int64)
        parent[0] = -1
    else:
        comps = component_labels(g)
        if g.m != g.n - comps[0]:
            raise GraphError("input contains a cycle")
        order, parent = forest_order(g, comps)
    vs = np.flatnonzero(_deletion_set(order, parent, g.n))
    return Solution(tuple(vs.tolist()), len(vs), "forest")


# closed forms for full k-ary trees


def _exact_log(x: int, base: int) -> int | None:
    e = 0
    while x > 1 and x % base == 0:
        x //= base
        e += 1
    return e if x == 1 else None


def cdn_full_binary(n: int) -> int:
    """Claw-deletion number of the full binary tree on ``n`` vertices."""
    e = _exact_log(n + 1, 2) if n >= 1 else None
    if e is None:
        raise ValueError(f"no full binary tree has {n} vertices")
    t = e % 3
    return (n + 1 - 2 ** t) // 7


def cdn_full_kary(k: int, n: int) -> int:
    """Claw-deletion number of the full ``k``-ary tree (``k >= 3``) on ``n`` vertices."""
    if k < 3:
        raise ValueError("arity must be at least 3; use cdn_full_binary for k = 2")
    x = n * k - n + 1
    e = _exact_log(x, k) if n >= 1 else None
    if e is None:
        raise ValueError(f"no full {k}-ary tree has {n} vertices")
    t = e % 2
    return (x - k ** t) // (k * k - 1)


def full_kary_size(k: int, h: int) -> int:
    return h + 1 if k == 1 else (k ** (h + 1) - 1) // (k - 1)


def deletion_fraction(k: int, h: int) -> Fraction:
    """Fraction of vertices removed by a minimum claw-deletion set of a full k-ary tree of height h."""
    if k < 2 or h < 0:
        raise ValueError("need k >= 2 and h >= 0")
    top = k ** (h + 1)
    if k == 2:
        t = (h + 1) % 3
        return Fraction(top - 2 ** t, 7 * (top - 1))
    t = (h - 1) % 2
    return Fraction(top - k ** t, (k + 1) * (top - 1))
