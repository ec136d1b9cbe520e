"""Tree decompositions: .td exchange format, min-fill heuristic, nice form."""

from __future__ import annotations

import heapq
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations

from ..errors import DecompositionError, ParseError
from ..graph import WeightedGraph


@dataclass(eq=False)
class TreeDecomposition:
    """Bags over vertices ``0..n-1`` on a tree whose edges join bag indices."""

    bags: list[tuple[int, ...]]
    edges: list[tuple[int, int]]
    n: int

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def validate(self, g: WeightedGraph) -> "TreeDecomposition":
        """Check the three decomposition conditions; raise on the first violation."""
        if g.n != self.n:
            raise DecompositionError(f"decomposition is for {self.n} vertices, graph has {g.n}")
        nb = len(self.bags)
        if nb == 0:
            if g.n:
                raise DecompositionError("no bags")
            return self
        if len(self.edges) != nb - 1:
            raise DecompositionError(f"{nb} bags need {nb - 1} tree edges, got {len(self.edges)}")
        tree = _adjacency(nb, self.edges)
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in tree[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) != nb:
            raise DecompositionError("decomposition tree is not connected")
        holders = defaultdict(list)
        for i, bag in enumerate(self.bags):
            for v in bag:
                if not 0 <= v < g.n:
                    raise DecompositionError(f"bag {i} names vertex {v} outside the graph")
                holders[v].append(i)
        for v in range(g.n):
            if v not in holders:
                raise DecompositionError(f"vertex {v} is not covered by any bag")
        bag_sets = [frozenset(b) for b in self.bags]
        for u, v in g.edges():
            hu, hv = holders[u], holders[v]
            small, other = (hu, v) if len(hu) <= len(hv) else (hv, u)
            if not any(other in bag_sets[i] for i in small):
                raise DecompositionError(f"edge {u}-{v} is not contained in any bag")
        # in a tree, the bags holding v are connected iff they span |bags| - 1 tree edges
        inside = defaultdict(int)
        for a, b in self.edges:
            for v in bag_sets[a] & bag_sets[b]:
                inside[v] += 1
        for v, hs in holders.items():
            if inside[v] != len(hs) - 1:
                raise DecompositionError(f"bags containing vertex {v} are not connected in the tree")
        return self


def _adjacency(k, edges):
    adj = [[] for _ in range(k)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    return adj


def parse_td(text: str, g: WeightedGraph) -> TreeDecomposition:
    """Read a PACE-style ``.td`` description (1-based bags and vertices) and validate it."""
    header = None
    bags = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        try:
            if parts[0] == "s":
                if len(parts) != 5 or parts[1] != "td":
                    raise ParseError("solution line must be 's td <bags> <width+1> <n>'", lineno)
                header = tuple(int(x) for x in parts[2:])
            elif parts[0] == "b":
                if header is None:
                    raise ParseError("bag before 's td' line", lineno)
                i = int(parts[1])
                if not 1 <= i <= header[0]:
                    raise ParseError(f"bag id {i} out of range", lineno)
                if i in bags:
                    raise ParseError(f"bag {i} defined twice", lineno)
                vs = [int(x) for x in parts[2:]]
                if any(not 1 <= v <= header[2] for v in vs):
                    raise ParseError("bag vertex out of range", lineno)
                bags[i] = tuple(sorted(set(v - 1 for v in vs)))
            else:
                if header is None or len(parts) != 2:
                    raise ParseError("expected a tree edge '<i> <j>'", lineno)
                a, b = int(parts[0]), int(parts[1])
                if not (1 <= a <= header[0] and 1 <= b <= header[0]):
                    raise ParseError("tree edge names an unknown bag", lineno)
                edges.append((a - 1, b - 1))
        except ValueError:
            raise ParseError(f"non-integer token in {raw.strip()!r}", lineno) from None
    if header is None:
        raise ParseError("missing 's td' line")
    count, size, n = header
    if len(bags) != count:
        raise ParseError(f"declared {count} bags, found {len(bags)}")
    td = TreeDecomposition([bags[i + 1] for i in range(count)], edges, n)
    if count and td.width + 1 != size:
        raise ParseError(f"declared max bag size {size}, actual {td.width + 1}")
    return td.validate(g)


def format_td(td: TreeDecomposition) -> str:
    lines = [f"s td {len(td.bags)} {td.width + 1} {td.n}"]
    for i, bag in enumerate(td.bags, 1):
        lines.append(" ".join(["b", str(i), *(str(v + 1) for v in bag)]))
    lines.extend(f"{a + 1} {b + 1}" for a, b in td.edges)
    return "\n".join(lines) + "\n"


def _fill(v, nbrs):
    row = nbrs[v]
    return sum(1 for a, b in combinations(row, 2) if b not in nbrs[a])


def min_fill_order(g: WeightedGraph) -> list[int]:
    """Greedy elimination order: fewest fill edges, then lowest degree, then index."""
    nbrs = [set(row) for row in g.adj]
    stamp = [0] * g.n
    heap = [(_fill(v, nbrs), len(nbrs[v]), v, 0) for v in range(g.n)]
    heapq.heapify(heap)
    done = bytearray(g.n)
    order = []
    while heap:
        _, _, v, st = heapq.heappop(heap)
        if done[v] or st != stamp[v]:
            continue
        done[v] = 1
        order.append(v)
        row = nbrs[v]
        for a in row:
            nbrs[a].discard(v)
            nbrs[a].update(row)
            nbrs[a].discard(a)
        touched = set(row)
        for a in row:
            touched.update(nbrs[a])
        for u in touched:
            if not done[u]:
                stamp[u] += 1
                heapq.heappush(heap, (_fill(u, nbrs), len(nbrs[u]), u, stamp[u]))
        nbrs[v] = set()
    return order


def decomposition_from_order(g: WeightedGraph, order: list[int]) -> TreeDecomposition:
    """Tree decomposition induced by eliminating vertices in ``order``."""
    pos = {v: i for i, v in enumerate(order)}
    nbrs = [set(row) for row in g.adj]
    bags = []
    later = []
    for v in order:
        row = nbrs[v]
        bags.append(tuple(sorted(row | {v})))
        later.append(min(row, key=pos.__getitem__) if row else None)
        for a in row:
            nbrs[a].discard(v)
            nbrs[a].update(row)
            nbrs[a].discard(a)
        nbrs[v] = set()
    edges = []
    roots = []
    for i, nxt in enumerate(later):
        if nxt is None:
            roots.append(i)
        else:
            edges.append((i, pos[nxt]))
    # bags of different components share no vertex, so any linking is valid
    edges.extend((a, b) for a, b in zip(roots, roots[1:]))
    return TreeDecomposition(bags, edges, g.n)


def heuristic_decomposition(g: WeightedGraph) -> TreeDecomposition:
    """Valid (not necessarily optimal) tree decomposition by min-fill elimination."""
    return decomposition_from_order(g, min_fill_order(g))


# nice tree decompositions

LEAF, INTRODUCE, FORGET, JOIN = "leaf", "introduce", "forget", "join"


@dataclass(eq=False)
class NiceTreeDecomposition:
    """Rooted nice decomposition stored as parallel per-node lists.

    Children always have smaller indices than their parent, so iterating
    ``range(len(kind))`` is a bottom-up schedule; the root is the last node
    and has an empty bag.  ``vertex`` is the introduced or forgotten vertex
    (``-1`` for leaf and join nodes).
    """

    kind: list[str]
    vertex: list[int]
    children: list[tuple[int, ...]]
    bags: list[tuple[int, ...]]
    n: int

    @property
    def root(self) -> int:
        return len(self.kind) - 1

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def __len__(self):
        return len(self.kind)

    def validate(self, g: WeightedGraph) -> "NiceTreeDecomposition":
        """Check node-kind rules, empty root, and the decomposition conditions for ``g``."""
        if g.n != self.n:
            raise DecompositionError(f"decomposition is for {self.n} vertices, graph has {g.n}")
        if not self.kind or self.bags[self.root]:
            raise DecompositionError("root bag must be empty")
        forgotten = [0] * g.n
        seen_parent = [0] * len(self.kind)
        adj = g.adj_sets
        for t, (k, v, ch, bag) in enumerate(zip(self.kind, self.vertex, self.children, self.bags)):
            for c in ch:
                if not 0 <= c < t:
                    raise DecompositionError(f"node {t} has child {c} out of order")
                seen_parent[c] += 1
            child_bag = set(self.bags[ch[0]]) if ch else set()
            if k == LEAF:
                ok = not ch and not bag
            elif k == INTRODUCE:
                ok = len(ch) == 1 and v not in child_bag and set(bag) == child_bag | {v}
            elif k == FORGET:
                ok = len(ch) == 1 and v in child_bag and set(bag) == child_bag - {v}
                if ok:
                    forgotten[v] += 1
            elif k == JOIN:
                ok = len(ch) == 2 and self.bags[ch[0]] == bag == self.bags[ch[1]]
            else:
                ok = False
            if not ok:
                raise DecompositionError(f"node {t} violates the rules for a {k} node")
        if any(seen_parent[t] != 1 for t in range(len(self.kind) - 1)):
            raise DecompositionError("nodes do not form a single rooted tree")
        for v in range(g.n):
            if forgotten[v] == 0:
                raise DecompositionError(f"vertex {v} is not covered by any bag")
            if forgotten[v] > 1:
                raise DecompositionError(f"bags containing vertex {v} are not connected in the tree")
        # an edge lies in some bag iff one endpoint is introduced while the other is present
        covered = set()
        for t, k in enumerate(self.kind):
            if k == INTRODUCE:
                v = self.vertex[t]
                for u in self.bags[t]:
                    if u != v and u in adj[v]:
                        covered.add((min(u, v), max(u, v)))
        if len(covered) != g.m:
            for e in g.edges():
                if e not in covered:
                    raise DecompositionError(f"edge {e[0]}-{e[1]} is not contained in any bag")
        return self


class _Builder:
    def __init__(self, n):
        self.kind, self.vertex, self.children, self.bags = [], [], [], []
        self.n = n

    def add(self, kind, vertex, children, bag):
        self.kind.append(kind)
        self.vertex.append(vertex)
        self.children.append(tuple(children))
        self.bags.append(bag)
        return len(self.kind) - 1

    def chain(self, top, target):
        """Forget then introduce vertices until the bag of ``top`` equals ``target``."""
        bag = self.bags[top]
        cur = set(bag)
        for v in sorted(cur - set(target)):
            cur.discard(v)
            top = self.add(FORGET, v, (top,), tuple(sorted(cur)))
        for v in sorted(set(target) - cur):
            cur.add(v)
            top = self.add(INTRODUCE, v, (top,), tuple(sorted(cur)))
        return top

    def build(self):
        return NiceTreeDecomposition(self.kind, self.vertex, self.children, self.bags, self.n)


def make_nice(td: TreeDecomposition, root: int = 0) -> NiceTreeDecomposition:
    """Convert ``td`` into a nice decomposition of the same width rooted at bag ``root``."""
    out = _Builder(td.n)
    if not td.bags:
        out.add(LEAF, -1, (), ())
        return out.build()
    tree = _adjacency(len(td.bags), td.edges)
    parent = [-1] * len(td.bags)
    parent[root] = root
    order = [root]
    for x in order:
        for y in tree[x]:
            if parent[y] == -1:
                parent[y] = x
                order.append(y)
    parent[root] = -1
    kids = defaultdict(list)
    for x in order[1:]:
        kids[parent[x]].append(x)
    top = {}
    for x in reversed(order):
        target = td.bags[x]
        tops = [out.chain(top.pop(c), target) for c in sorted(kids[x])]
        if not tops:
            tops = [out.chain(out.add(LEAF, -1, (), ()), target)]
        node = tops[0]
        for other in tops[1:]:
            node = out.add(JOIN, -1, (node, other), tuple(target))
        top[x] = node
    out.chain(top[root], ())
    return out.build()
