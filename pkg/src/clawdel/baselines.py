"""Exact search oracle and the local-ratio 4-approximation.

Both work on bitmask adjacency, so they are meant for small and medium
graphs.  The oracle branches four ways on a claw (some vertex of it must
go); it runs iterative deepening on the cost bound, with a greedy packing
of vertex-disjoint claws as the lower bound.
"""

from __future__ import annotations

from .claws import claw_in_mask, independent_triple
from .errors import ResourceError
from .graph import WeightedGraph
from .solution import Solution

DEFAULT_NODE_BUDGET = 5_000_000
_INF = float("inf")


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


class _Search:
    def __init__(self, g: WeightedGraph, budget: int):
        self.adj = g.adj_masks
        self.w = g.weights.tolist()
        self.budget = budget
        self.nodes = 0

    def lower_bound(self, alive: int, kept: int):
        """Greedy disjoint-claw packing; returns (bound, first claw or None)."""
        adj, w = self.adj, self.w
        bound = 0
        first = None
        rest = alive
        while True:
            claw = claw_in_mask(adj, rest)
            if claw is None:
                return bound, first
            if first is None:
                first = claw
            free = [w[v] for v in claw.vertices if not kept >> v & 1]
            if not free:
                return _INF, first
            bound += min(free)
            for v in claw.vertices:
                rest &= ~(1 << v)

    def dfs(self, alive: int, kept: int, cost: int, limit: int, deleted: list[int]):
        self.nodes += 1
        if self.nodes > self.budget:
            raise ResourceError(f"search exceeded node budget {self.budget}")
        h, claw = self.lower_bound(alive, kept)
        f = cost + h
        if f > limit:
            self.next_limit = min(self.next_limit, f)
            return None
        if claw is None:
            return list(deleted)
        # branch i deletes the i-th claw vertex and keeps the earlier ones
        newly_kept = 0
        for v in claw.vertices:
            bit = 1 << v
            if kept & bit:
                continue
            deleted.append(v)
            found = self.dfs(alive & ~bit, kept | newly_kept, cost + self.w[v], limit, deleted)
            deleted.pop()
            if found is not None:
                return found
            newly_kept |= bit
            kept_now = kept | newly_kept
            if all(kept_now >> u & 1 for u in claw.vertices):
                break
        return None


def brute_force_min(g: WeightedGraph, budget: int = DEFAULT_NODE_BUDGET) -> Solution:
    """Exact minimum-weight claw-deletion set by bounded search.

    Raises :class:`ResourceError` once more than ``budget`` search nodes have
    been expanded.
    """
    search = _Search(g, budget)
    alive = (1 << g.n) - 1
    limit, _ = search.lower_bound(alive, 0)
    while True:
        search.next_limit = _INF
        found = search.dfs(alive, 0, 0, limit, [])
        if found is not None:
            return Solution.of(g, found, "oracle")
        if search.next_limit == _INF:
            raise AssertionError("search space exhausted without a solution")
        limit = search.next_limit


def greedy_4_approx(g: WeightedGraph) -> Solution:
    """Local-ratio approximation: weight at most four times the optimum.

    While a claw survives, lower the residual weight of its four vertices by
    their minimum residual and delete every vertex that reaches zero.  With
    unit weights this removes all four vertices of each claw found.  Deleting
    vertices never creates a claw, so centers are scanned once, in order.
    """
    adj, adj_sets = g.adj, g.adj_sets
    residual = g.weights.tolist()
    alive = bytearray(b"\x01") * g.n
    deleted = []
    for c in range(g.n):
        while alive[c] and len(adj[c]) >= 3:
            leaves = independent_triple([x for x in adj[c] if alive[x]], adj_sets)
            if leaves is None:
                break
            claw = (c, *leaves)
            eps = min(residual[v] for v in claw)
            for v in claw:
                residual[v] -= eps
                if residual[v] == 0:
                    deleted.append(v)
                    alive[v] = 0
    return Solution.of(g, deleted, "approx", exact=False)


def min_vertex_cover(g: WeightedGraph, max_n: int = 24) -> int:
    """Vertex cover number by exhaustive search over subsets (small graphs only)."""
    from itertools import combinations

    if g.n > max_n:
        raise ResourceError(f"exhaustive vertex cover limited to {max_n} vertices")
    edges = list(g.edges())
    for k in range(g.n + 1):
        for cover in combinations(range(g.n), k):
            chosen = set(cover)
            if all(u in chosen or v in chosen for u, v in edges):
                return k
    return g.n
