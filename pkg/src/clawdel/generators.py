"""Instance generators: the vertex-cover reduction and random graph families."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import GraphError
from .graph import WeightedGraph
from .treewidth.decomposition import TreeDecomposition

MAX_GENERATED = 10_000_000
FAMILIES = ("tree", "block", "partial-ktree", "split")


@dataclass(eq=False)
class ReductionMap:
    """Split graph built from a vertex-cover instance.

    ``independent[j]`` is the image of source vertex ``j``; ``parts[i]`` is
    the clique part attached to source edge ``source_edges[i]``, and the last
    part is attached to nothing.
    """

    source: WeightedGraph
    graph: WeightedGraph
    independent: list[int]
    parts: list[list[int]]
    source_edges: list[tuple[int, int]]

    @property
    def clique(self) -> list[int]:
        return [v for part in self.parts for v in part]


def vc_to_split(g: WeightedGraph, clique_weight: int = 1) -> ReductionMap:
    """Split graph whose minimum claw-deletion size equals the vertex cover number of ``g``.

    The independent side is a copy of ``V(g)``; the clique consists of
    ``m + 1`` parts of ``2n`` vertices, and both endpoints of the ``i``-th
    edge (lexicographic order) see all of part ``i``.  ``clique_weight > 1``
    makes clique vertices expensive, for exercising weighted solvers.
    """
    n, m = g.n, g.m
    if m == 0:
        raise GraphError("the reduction needs at least one edge")
    total = n + 2 * n * (m + 1)
    if total > MAX_GENERATED:
        raise GraphError(f"reduction would produce {total} vertices (limit {MAX_GENERATED})")
    src_edges = list(g.edges())
    parts = [list(range(n + 2 * n * i, n + 2 * n * (i + 1))) for i in range(m + 1)]
    clique = np.arange(n, total, dtype=np.int64)
    iu, ju = np.triu_indices(len(clique), k=1)
    edges = [np.stack([clique[iu], clique[ju]], axis=1)]
    for i, (a, b) in enumerate(src_edges):
        part = np.asarray(parts[i], dtype=np.int64)
        for end in (a, b):
            edges.append(np.stack([np.full(len(part), end), part], axis=1))
    w = np.ones(total, dtype=np.int64)
    w[n:] = clique_weight
    labels = [f"i{v}" for v in range(n)] + [f"c{i}.{j}" for i in range(m + 1) for j in range(2 * n)]
    gp = WeightedGraph.from_edges(total, np.concatenate(edges), w, labels)
    return ReductionMap(g, gp, list(range(n)), parts, src_edges)


def gen_full_kary(k: int, h: int) -> WeightedGraph:
    """Full ``k``-ary tree of height ``h``; root 0, children of ``i`` are ``k*i+1 .. k*i+k``."""
    if k < 1 or h < 0:
        raise ValueError("need k >= 1 and h >= 0")
    n = h + 1 if k == 1 else (k ** (h + 1) - 1) // (k - 1)
    if n > MAX_GENERATED:
        raise GraphError(f"tree would have {n} vertices (limit {MAX_GENERATED})")
    child = np.arange(1, n, dtype=np.int64)
    return WeightedGraph.from_edges(n, np.stack([(child - 1) // k, child], axis=1))


def _weights(rng, n, weight_range):
    lo, hi = weight_range
    if lo < 1 or hi < lo:
        raise ValueError("weight range must satisfy 1 <= lo <= hi")
    return rng.integers(lo, hi + 1, size=n, dtype=np.int64)


def prufer_tree_edges(seq: list[int], n: int) -> list[tuple[int, int]]:
    """Decode a Prüfer sequence of length ``n - 2`` in linear time."""
    if n <= 1:
        return []
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    ptr = 0
    while degree[ptr] != 1:
        ptr += 1
    leaf = ptr
    edges = []
    for x in seq:
        edges.append((leaf, x))
        degree[x] -= 1
        if x < ptr and degree[x] == 1:
            leaf = x
        else:
            ptr += 1
            while degree[ptr] != 1:
                ptr += 1
            leaf = ptr
    edges.append((leaf, n - 1))
    return edges


def random_tree(n: int, rng: np.random.Generator, weight_range=(1, 1)) -> WeightedGraph:
    seq = rng.integers(0, n, size=max(n - 2, 0)).tolist() if n > 2 else []
    edges = prufer_tree_edges(seq, n)
    return WeightedGraph.from_edges(n, np.asarray(edges, dtype=np.int64).reshape(-1, 2),
                                    _weights(rng, n, weight_range))


def random_block_graph(n: int, rng: np.random.Generator, max_clique: int = 4,
                       weight_range=(1, 1)) -> WeightedGraph:
    """Connected block graph: cliques of random size glued at random vertices."""
    if n < 1 or max_clique < 2:
        raise ValueError("need n >= 1 and max_clique >= 2")
    edges = []
    size = 1
    while size < n:
        at = int(rng.integers(0, size))
        k = int(rng.integers(2, max_clique + 1))
        k = min(k, n - size + 1)
        members = [at, *range(size, size + k - 1)]
        edges.extend(combinations(members, 2))
        size += k - 1
    return WeightedGraph.from_edges(n, np.asarray(edges, dtype=np.int64).reshape(-1, 2),
                                    _weights(rng, n, weight_range))


def random_partial_ktree(n: int, k: int, p: float, rng: np.random.Generator,
                         weight_range=(1, 1)) -> tuple[WeightedGraph, TreeDecomposition]:
    """Random ``k``-tree with each edge then dropped with probability ``p``.

    Also returns the width-``k`` decomposition that the construction yields
    (one bag per added vertex).
    """
    if k < 1 or n < 1 or not 0 <= p <= 1:
        raise ValueError("need n >= 1, k >= 1 and 0 <= p <= 1")
    base = min(n, k + 1)
    edges = list(combinations(range(base), 2))
    bags = [tuple(range(base))]
    tree_edges = []
    cliques = [tuple(c) for c in combinations(range(base), k)] if base == k + 1 else []
    clique_bag = [0] * len(cliques)
    for v in range(base, n):
        i = int(rng.integers(0, len(cliques)))
        cl = cliques[i]
        edges.extend((u, v) for u in cl)
        bags.append(tuple(sorted((*cl, v))))
        tree_edges.append((clique_bag[i], len(bags) - 1))
        for j in range(k):
            cliques.append(tuple(sorted(cl[:j] + cl[j + 1:] + (v,))))
            clique_bag.append(len(bags) - 1)
    e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    if p > 0 and len(e):
        e = e[rng.random(len(e)) >= p]
    g = WeightedGraph.from_edges(n, e, _weights(rng, n, weight_range))
    return g, TreeDecomposition(bags, tree_edges, n)


def random_split_graph(n: int, rng: np.random.Generator, clique_size: int | None = None,
                       p: float = 0.5, weight_range=(1, 1)) -> WeightedGraph:
    """Clique on the first ``clique_size`` vertices, independent rest, random cross edges."""
    c = n // 2 if clique_size is None else clique_size
    if not 0 <= c <= n:
        raise ValueError("clique size out of range")
    edges = list(combinations(range(c), 2))
    if c and n > c:
        cross = rng.random((n - c, c)) < p
        ii, cc = np.nonzero(cross)
        edges.extend(zip((ii + c).tolist(), cc.tolist()))
    return WeightedGraph.from_edges(n, np.asarray(edges, dtype=np.int64).reshape(-1, 2),
                                    _weights(rng, n, weight_range))


def gen_random(family: str, n: int, seed: int = 0, *, k: int = 2, p: float = 0.3,
               max_clique: int = 4, weight_range=(1, 1)) -> WeightedGraph:
    """Seed-deterministic random instance from one of :data:`FAMILIES`."""
    if n > MAX_GENERATED:
        raise GraphError(f"n = {n} exceeds the generator limit {MAX_GENERATED}")
    rng = np.random.default_rng(seed)
    if family == "tree":
        return random_tree(n, rng, weight_range)
    if family == "block":
        return random_block_graph(n, rng, max_clique, weight_range)
    if family == "partial-ktree":
        return random_partial_ktree(n, k, p, rng, weight_range)[0]
    if family == "split":
        return random_split_graph(n, rng, p=p, weight_range=weight_range)
    raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
