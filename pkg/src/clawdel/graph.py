"""Weighted simple graphs, text formats, and structural decompositions.

Graphs are stored in compressed sparse row form: ``indptr``/``indices`` give
each vertex's neighbours in strictly increasing order.  Python-level views
(lists, sets, bitmasks) are built lazily for the algorithms that want them.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components as _cc

from .errors import GraphError, ParseError

FORMATS = ("edge-list", "dimacs")


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    """Undirected simple graph with positive integer vertex weights.

    Build instances with :meth:`from_edges` (or :func:`parse_graph`); the raw
    constructor trusts its arrays to already be canonical.
    """

    indptr: np.ndarray
    indices: np.ndarray
    weights: np.ndarray
    labels: tuple[str, ...] | None = None

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]] | np.ndarray = (),
        weights: Sequence[int] | np.ndarray | None = None,
        labels: Sequence[str] | None = None,
    ) -> "WeightedGraph":
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        e = np.asarray(edges if isinstance(edges, np.ndarray) else list(edges), dtype=np.int64)
        e = e.reshape(-1, 2)
        if e.size and (e.min() < 0 or e.max() >= n):
            raise GraphError("edge endpoint out of range")
        if np.any(e[:, 0] == e[:, 1]):
            u = int(e[e[:, 0] == e[:, 1]][0, 0])
            raise GraphError(f"self-loop at vertex {u}")
        lo = np.minimum(e[:, 0], e[:, 1])
        hi = np.maximum(e[:, 0], e[:, 1])
        key = lo * max(n, 1) + hi
        if np.unique(key).size != key.size:
            raise GraphError("duplicate edge")
        src = np.concatenate([lo, hi])
        dst = np.concatenate([hi, lo])
        order = np.lexsort((dst, src))
        indices = dst[order]
        counts = np.bincount(src, minlength=n)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        if weights is None:
            w = np.ones(n, dtype=np.int64)
        else:
            w = np.asarray(weights, dtype=np.int64).copy()
            if w.shape != (n,):
                raise GraphError("weights must have one entry per vertex")
            if n and w.min() < 1:
                raise GraphError("vertex weights must be positive integers")
        if labels is not None:
            labels = tuple(str(x) for x in labels)
            if len(labels) != n:
                raise GraphError("labels must have one entry per vertex")
        return cls(indptr, indices, w, labels)

    # basic queries

    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    @property
    def m(self) -> int:
        return len(self.indices) // 2

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def has_edge(self, u: int, v: int) -> bool:
        row = self.neighbors(u)
        i = np.searchsorted(row, v)
        return bool(i < len(row) and row[i] == v)

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield each edge once as ``(u, v)`` with ``u < v``, in lexicographic order."""
        adj = self.adj
        for u in range(self.n):
            for v in adj[u]:
                if v > u:
                    yield u, v

    def edge_array(self) -> np.ndarray:
        src = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.indptr))
        keep = src < self.indices
        return np.stack([src[keep], self.indices[keep]], axis=1)

    def weight_of(self, vertices: Iterable[int]) -> int:
        w = self.weights
        return int(sum(int(w[v]) for v in vertices))

    @property
    def total_weight(self) -> int:
        return int(self.weights.sum())

    @property
    def unit_weights(self) -> bool:
        return bool(np.all(self.weights == 1))

    # lazily built views

    @cached_property
    def adj(self) -> list[list[int]]:
        """Neighbour lists as plain Python lists (sorted)."""
        flat = self.indices.tolist()
        ptr = self.indptr.tolist()
        return [flat[ptr[v]:ptr[v + 1]] for v in range(self.n)]

    @cached_property
    def adj_sets(self) -> list[frozenset[int]]:
        return [frozenset(row) for row in self.adj]

    @cached_property
    def adj_masks(self) -> list[int]:
        """Neighbourhoods as Python int bitmasks; intended for small graphs."""
        masks = []
        for row in self.adj:
            m = 0
            for u in row:
                m |= 1 << u
            masks.append(m)
        return masks

    def to_csr(self) -> csr_matrix:
        data = np.ones(len(self.indices), dtype=np.int8)
        return csr_matrix((data, self.indices, self.indptr), shape=(self.n, self.n))

    def with_weights(self, weights: Sequence[int] | np.ndarray) -> "WeightedGraph":
        w = np.asarray(weights, dtype=np.int64).copy()
        if w.shape != (self.n,) or (self.n and w.min() < 1):
            raise GraphError("weights must be positive, one per vertex")
        return WeightedGraph(self.indptr, self.indices, w, self.labels)

    def __eq__(self, other):
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return (
            np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
            and np.array_equal(self.weights, other.weights)
            and [self.label(v) for v in range(self.n)] == [other.label(v) for v in range(other.n)]
        )

    __hash__ = None

    def __repr__(self):
        return f"WeightedGraph(n={self.n}, m={self.m})"


# parsing and serialization


def _int(tok, lineno, what):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected integer {what}, got {tok!r}", lineno) from None


def _parse_dimacs(lines):
    n = None
    edges = []
    weights = {}
    for lineno, raw in lines:
        parts = raw.split()
        tag = parts[0]
        if tag == "c":
            continue
        if tag == "p":
            if n is not None:
                raise ParseError("repeated problem line", lineno)
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise ParseError("problem line must be 'p edge <n> <m>'", lineno)
            n = _int(parts[2], lineno, "vertex count")
            m_decl = _int(parts[3], lineno, "edge count")
            continue
        if n is None:
            raise ParseError("data before 'p edge' line", lineno)
        if tag == "e":
            if len(parts) != 3:
                raise ParseError("edge line must be 'e <u> <v>'", lineno)
            u, v = (_int(p, lineno, "vertex") for p in parts[1:])
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"vertex out of range 1..{n}", lineno)
            edges.append((u - 1, v - 1, lineno))
        elif tag == "n":
            if len(parts) != 3:
                raise ParseError("weight line must be 'n <u> <w>'", lineno)
            u, w = (_int(p, lineno, "value") for p in parts[1:])
            if not 1 <= u <= n:
                raise ParseError(f"vertex out of range 1..{n}", lineno)
            if w <= 0:
                raise ParseError(f"non-positive weight {w}", lineno)
            weights[u - 1] = w
        else:
            raise ParseError(f"unknown line type {tag!r}", lineno)
    if n is None:
        raise ParseError("missing 'p edge' line")
    if len(edges) != m_decl:
        raise ParseError(f"declared {m_decl} edges, found {len(edges)}")
    labels = [str(i + 1) for i in range(n)]
    return n, edges, weights, labels


def _parse_edge_list(lines):
    header = None
    rows = []
    vrows = []
    for lineno, raw in lines:
        parts = raw.split()
        if header is None:
            if len(parts) != 2:
                raise ParseError("first line must be the header '<n> <m>'", lineno)
            header = (_int(parts[0], lineno, "vertex count"), _int(parts[1], lineno, "edge count"))
            continue
        if parts[0] == "v":
            if len(parts) != 3:
                raise ParseError("vertex line must be 'v <id> <weight>'", lineno)
            w = _int(parts[2], lineno, "weight")
            if w <= 0:
                raise ParseError(f"non-positive weight {w}", lineno)
            vrows.append((parts[1], w, lineno))
        elif len(parts) == 2:
            rows.append((parts[0], parts[1], lineno))
        else:
            raise ParseError("edge line must be '<u> <v>'", lineno)
    if header is None:
        raise ParseError("empty input")
    n, m_decl = header
    tokens = [t for u, v, _ in rows for t in (u, v)] + [t for t, _, _ in vrows]
    numeric = all(t.lstrip("-").isdigit() for t in tokens)
    if numeric:
        index = {}
        labels = [str(i) for i in range(n)]

        def lookup(tok, lineno):
            i = int(tok)
            if not 0 <= i < n:
                raise ParseError(f"vertex {i} out of range 0..{n - 1}", lineno)
            return i
    else:
        index = {}
        labels = []

        def lookup(tok, lineno):
            if tok not in index:
                if len(index) >= n:
                    raise ParseError(f"more than {n} distinct vertex labels", lineno)
                index[tok] = len(index)
                labels.append(tok)
            return index[tok]

    # resolve tokens in file order so labels are numbered by first appearance
    weights = {}
    edges = []
    events = sorted([(ln, 0, u, v) for u, v, ln in rows] + [(ln, 1, t, w) for t, w, ln in vrows])
    for ln, is_vertex, a, b in events:
        if is_vertex:
            weights[lookup(a, ln)] = b
        else:
            edges.append((lookup(a, ln), lookup(b, ln), ln))
    if not numeric:
        taken = set(labels)
        k = 0
        while len(labels) < n:
            while f"_{k}" in taken:
                k += 1
            labels.append(f"_{k}")
            k += 1
    if len(edges) != m_decl:
        raise ParseError(f"declared {m_decl} edges, found {len(edges)}")
    return n, edges, weights, labels


def parse_graph(text: str | io.TextIOBase, format: str = "edge-list") -> WeightedGraph:
    """Parse a graph from ``edge-list`` or ``dimacs`` text.

    Duplicate edges, self-loops, and non-positive weights are rejected with a
    :class:`ParseError` naming the line.
    """
    if format not in FORMATS:
        raise ValueError(f"unknown format {format!r}")
    if not isinstance(text, str):
        text = text.read()
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        s = raw.split("#", 1)[0].strip() if format == "edge-list" else raw.strip()
        if s:
            lines.append((lineno, s))
    parser = _parse_dimacs if format == "dimacs" else _parse_edge_list
    n, edges, weights, labels = parser(lines)
    seen = {}
    for u, v, lineno in edges:
        if u == v:
            raise ParseError(f"self-loop at vertex {labels[u]}", lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"duplicate edge {labels[u]}-{labels[v]} (first on line {seen[key]})", lineno)
        seen[key] = lineno
    w = np.ones(n, dtype=np.int64)
    for v, x in weights.items():
        w[v] = x
    return WeightedGraph.from_edges(n, [(u, v) for u, v, _ in edges], w, labels)


def serialize_graph(g: WeightedGraph, format: str = "edge-list") -> str:
    """Inverse of :func:`parse_graph` (canonical vertex and edge order)."""
    out = []
    if format == "dimacs":
        out.append(f"p edge {g.n} {g.m}")
        for v in range(g.n):
            if g.weights[v] != 1:
                out.append(f"n {v + 1} {int(g.weights[v])}")
        out.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    elif format == "edge-list":
        plain = g.labels is None or all(g.labels[i] == str(i) for i in range(g.n))
        name = (lambda v: str(v)) if plain else g.label
        out.append(f"{g.n} {g.m}")
        for v in range(g.n):
            if g.weights[v] != 1 or not plain:
                out.append(f"v {name(v)} {int(g.weights[v])}")
        out.extend(f"{name(u)} {name(v)}" for u, v in g.edges())
    else:
        raise ValueError(f"unknown format {format!r}")
    return "\n".join(out) + "\n"


# induced subgraphs and components


def _as_index_array(g: WeightedGraph, s: Iterable[int]) -> np.ndarray:
    arr = np.fromiter((int(x) for x in s), dtype=np.int64)
    if arr.size and (arr.min() < 0 or arr.max() >= g.n):
        raise GraphError("vertex index out of range")
    return arr


def induced_subgraph(g: WeightedGraph, keep: Iterable[int]) -> tuple[WeightedGraph, np.ndarray]:
    """Subgraph induced by ``keep``; returns it with the new-to-old index map."""
    old = np.unique(_as_index_array(g, keep))
    remap = np.full(g.n, -1, dtype=np.int64)
    remap[old] = np.arange(len(old))
    e = g.edge_array()
    if len(e):
        mask = (remap[e[:, 0]] >= 0) & (remap[e[:, 1]] >= 0)
        e = remap[e[mask]]
    labels = [g.label(int(v)) for v in old]
    sub = WeightedGraph.from_edges(len(old), e, g.weights[old], labels)
    return sub, old


def delete_vertices(g: WeightedGraph, s: Iterable[int]) -> tuple[WeightedGraph, np.ndarray]:
    """``G - s``: the subgraph induced by the remaining vertices, plus index map."""
    gone = np.zeros(g.n, dtype=bool)
    gone[_as_index_array(g, s)] = True
    return induced_subgraph(g, np.flatnonzero(~gone))


def component_labels(g: WeightedGraph) -> tuple[int, np.ndarray]:
    if g.n == 0:
        return 0, np.zeros(0, dtype=np.int64)
    k, labels = _cc(g.to_csr(), directed=False)
    return int(k), labels


def connected_components(g: WeightedGraph) -> list[list[int]]:
    """Vertex sets of the connected components, ordered by smallest member."""
    k, labels = component_labels(g)
    order = np.argsort(labels, kind="stable")
    bounds = np.cumsum(np.bincount(labels, minlength=k))[:-1]
    comps = [part.tolist() for part in np.split(order, bounds)] if k else []
    comps.sort(key=lambda c: c[0])
    return comps


def is_connected(g: WeightedGraph) -> bool:
    return component_labels(g)[0] <= 1


def is_forest(g: WeightedGraph) -> bool:
    return g.m == g.n - component_labels(g)[0]


# biconnected components and the block-cutpoint tree


def biconnected_components(g: WeightedGraph) -> tuple[list[list[int]], list[int]]:
    """Blocks (sorted vertex lists) and cutpoints of ``g``.

    Iterative Hopcroft-Tarjan over vertices, so long paths do not hit the
    recursion limit.  Isolated vertices form single-vertex blocks.
    """
    n = g.n
    adj = g.adj
    disc = [-1] * n
    low = [0] * n
    is_cut = bytearray(n)
    blocks = []
    time = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = time
        time += 1
        if not adj[root]:
            blocks.append([root])
            continue
        vstack = [root]
        # frames: vertex, parent, next neighbour position
        frames = [[root, -1, 0]]
        root_children = 0
        while frames:
            frame = frames[-1]
            v, p, i = frame
            row = adj[v]
            if i < len(row):
                frame[2] = i + 1
                u = row[i]
                if disc[u] == -1:
                    disc[u] = low[u] = time
                    time += 1
                    vstack.append(u)
                    frames.append([u, v, 0])
                    if v == root:
                        root_children += 1
                elif u != p and disc[u] < low[v]:
                    low[v] = disc[u]
                continue
            frames.pop()
            if p == -1:
                continue
            if low[v] < low[p]:
                low[p] = low[v]
            if low[v] >= disc[p]:
                if p != root:
                    is_cut[p] = 1
                block = [p]
                while True:
                    x = vstack.pop()
                    block.append(x)
                    if x == v:
                        break
                block.sort()
                blocks.append(block)
        if root_children >= 2:
            is_cut[root] = 1
    blocks.sort()
    cutpoints = [v for v in range(n) if is_cut[v]]
    return blocks, cutpoints


@dataclass(eq=False)
class BlockCutTree:
    """Block-cutpoint tree of a connected graph, rooted at a cutpoint.

    Tree nodes ``0..len(cutpoints)-1`` are cutpoints; the following
    ``len(blocks)`` nodes are blocks.  ``parent`` is ``-1`` at the root and
    ``order`` lists nodes top-down (BFS), so reversing it gives a valid
    bottom-up schedule.  With no cutpoint the tree is a single block,
    ``trivial`` is set, and ``root`` is ``None``.
    """

    blocks: list[list[int]]
    cutpoints: list[int]
    children: list[list[int]]
    parent: list[int]
    order: list[int]
    root: int | None
    trivial: bool
    cut_node: dict[int, int] = field(default_factory=dict)

    @property
    def num_cut(self) -> int:
        return len(self.cutpoints)

    def is_block(self, node: int) -> bool:
        return node >= len(self.cutpoints)

    def block_of(self, node: int) -> list[int]:
        return self.blocks[node - len(self.cutpoints)]

    def tree_edges(self) -> list[tuple[int, int]]:
        return [(p, c) for c, p in enumerate(self.parent) if p != -1]


def block_cutpoint_tree(g: WeightedGraph, root: int | None = None) -> BlockCutTree:
    """Build the block-cutpoint tree of connected ``g``.

    The root is the cutpoint vertex ``root`` if given, else the smallest
    cutpoint vertex.  Children lists are in ascending node order.
    """
    if g.n and not is_connected(g):
        raise GraphError("block_cutpoint_tree needs a connected graph; split components first")
    blocks, cutpoints = biconnected_components(g)
    nc = len(cutpoints)
    cut_node = {v: i for i, v in enumerate(cutpoints)}
    size = nc + len(blocks)
    nbrs = [[] for _ in range(size)]
    for bi, block in enumerate(blocks):
        b = nc + bi
        for v in block:
            c = cut_node.get(v)
            if c is not None:
                nbrs[b].append(c)
                nbrs[c].append(b)
    if nc == 0:
        parent = [-1] * size
        return BlockCutTree(blocks, cutpoints, [[] for _ in range(size)], parent,
                            list(range(size)), None, True, cut_node)
    if root is None:
        r = 0
    elif root in cut_node:
        r = cut_node[root]
    else:
        raise GraphError(f"vertex {root} is not a cutpoint")
    parent = [-1] * size
    children = [[] for _ in range(size)]
    seen = bytearray(size)
    seen[r] = 1
    order = [r]
    head = 0
    while head < len(order):
        x = order[head]
        head += 1
        for y in sorted(nbrs[x]):
            if not seen[y]:
                seen[y] = 1
                parent[y] = x
                children[x].append(y)
                order.append(y)
    return BlockCutTree(blocks, cutpoints, children, parent, order, r, False, cut_node)


def is_block_graph(g: WeightedGraph) -> bool:
    """True iff every block of every component is a clique."""
    blocks, _ = biconnected_components(g)
    # every edge lies in exactly one block, and a block on b vertices holds at
    # most b(b-1)/2 of them, with equality iff it is complete
    return sum(len(b) * (len(b) - 1) // 2 for b in blocks) == g.m
