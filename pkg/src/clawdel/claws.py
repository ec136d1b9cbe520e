"""Induced claw detection and claw-deletion-set verification."""

from __future__ import annotations

from typing import Iterable, NamedTuple

from .errors import GraphError
from .graph import WeightedGraph


class ClawWitness(NamedTuple):
    """An induced K_{1,3}: ``center`` plus three pairwise non-adjacent ``leaves``."""

    center: int
    leaves: tuple[int, int, int]

    @property
    def vertices(self) -> tuple[int, int, int, int]:
        return (self.center, *self.leaves)

    def is_valid(self, g: WeightedGraph) -> bool:
        a, b, c = self.leaves
        adj = g.adj_sets
        return (
            len({self.center, a, b, c}) == 4
            and all(x in adj[self.center] for x in self.leaves)
            and b not in adj[a] and c not in adj[a] and c not in adj[b]
        )


def independent_triple(nbrs: list[int], adj_sets) -> tuple[int, int, int] | None:
    # lexicographically smallest (a, b, c) with a < b < c pairwise non-adjacent
    k = len(nbrs)
    for i in range(k - 2):
        a = nbrs[i]
        na = adj_sets[a]
        rest = [x for x in nbrs[i + 1:] if x not in na]
        for j in range(len(rest) - 1):
            b = rest[j]
            nb = adj_sets[b]
            for c in rest[j + 1:]:
                if c not in nb:
                    return a, b, c
    return None


def _lowbit_index(x: int) -> int:
    return (x & -x).bit_length() - 1


def claw_in_mask(adj_masks: list[int], alive: int) -> ClawWitness | None:
    """Bitmask claw search restricted to the vertices set in ``alive``.

    Same deterministic witness as :func:`find_claw` on the induced subgraph
    (smallest center, then lexicographically smallest leaf triple).
    """
    rest_c = alive
    while rest_c:
        c = _lowbit_index(rest_c)
        rest_c &= rest_c - 1
        nb = adj_masks[c] & alive
        if nb.bit_count() < 3:
            continue
        ra = nb
        while ra:
            a = _lowbit_index(ra)
            ra &= ra - 1
            cand_b = ra & ~adj_masks[a]
            while cand_b:
                b = _lowbit_index(cand_b)
                cand_b &= cand_b - 1
                cand_c = cand_b & ~adj_masks[b]
                if cand_c:
                    return ClawWitness(c, (a, b, _lowbit_index(cand_c)))
    return None


def find_claw(g: WeightedGraph, removed: Iterable[int] = ()) -> ClawWitness | None:
    """Return an induced claw of ``g - removed``, or ``None`` if there is none.

    The witness has the smallest possible center and, for that center, the
    lexicographically smallest leaf triple.
    """
    gone = set(int(v) for v in removed)
    for v in gone:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range")
    adj = g.adj
    adj_sets = g.adj_sets
    for c in range(g.n):
        if c in gone or len(adj[c]) < 3:
            continue
        nbrs = [x for x in adj[c] if x not in gone] if gone else adj[c]
        if len(nbrs) < 3:
            continue
        leaves = independent_triple(nbrs, adj_sets)
        if leaves is not None:
            return ClawWitness(c, leaves)
    return None


def is_claw_free(g: WeightedGraph) -> bool:
    return find_claw(g) is None


def verify_solution(g: WeightedGraph, s: Iterable[int]) -> bool:
    """True iff deleting ``s`` from ``g`` leaves a claw-free graph."""
    return find_claw(g, s) is None
