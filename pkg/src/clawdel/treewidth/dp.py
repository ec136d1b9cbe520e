"""Weighted claw-deletion DP over a nice tree decomposition.

For a node ``t`` let ``V_t`` be the vertices in the subtree and ``F_t = V_t
- X_t`` the forgotten ones.  Relative to a deletion set, each bag vertex is

* ``S``: deleted;
* ``A``: kept, with no kept neighbour in ``F_t``;
* ``B``: kept, its kept neighbours in ``F_t`` form a non-empty clique;
* ``C``: kept, with two non-adjacent kept neighbours in ``F_t``;

and ``Z`` holds ordered pairs ``(x, y)`` of adjacent kept bag vertices such
that some kept ``w`` in ``F_t`` is adjacent to ``y`` but not to ``x``.

Every vertex of the bag carries a fixed *slot* (``0..width``) for its whole
lifetime in the decomposition, so sets are bitmasks over slots and ``Z`` is
a bitmask over ``slot_x * W + slot_y``.  A state packs into one int as
``S | A << W | B << 2W | C << 3W | Z << 4W``.

A claw is rejected at the first node where all four of its vertices are in
``V_t``: at the introduce node of its last vertex, or at a join when its
vertices are split between the two subtrees.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import DecompositionError, ResourceError
from ..graph import WeightedGraph
from ..solution import Solution
from .decomposition import FORGET, INTRODUCE, JOIN, LEAF, NiceTreeDecomposition

DEFAULT_STATE_BUDGET = 20_000_000


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def assign_slots(ntd: NiceTreeDecomposition) -> list[int]:
    """Give each vertex a slot distinct from every vertex it shares a bag with.

    Walking top-down, a vertex first appears below the node that forgets it
    and takes the smallest slot unused by that node's bag.
    """
    slot = [-1] * ntd.n
    for t in range(len(ntd) - 1, -1, -1):
        if ntd.kind[t] == FORGET:
            used = {slot[u] for u in ntd.bags[t]}
            s = 0
            while s in used:
                s += 1
            slot[ntd.vertex[t]] = s
    return slot


@dataclass(eq=False)
class DPResult:
    """Raw DP output; ``tables`` and ``back`` are kept only on request."""

    weight: int
    deleted: list[int] | None
    width: int
    slots: list[int]
    tables: list[dict[int, int] | None]
    states: int


class _Bag:
    """Slot-level view of one bag: its vertices and adjacency among them."""

    __slots__ = ("by_slot", "nbr")

    def __init__(self, bag, slot, adj_sets, W):
        by_slot = [-1] * W
        for v in bag:
            by_slot[slot[v]] = v
        nbr = [0] * W
        for v in bag:
            row = adj_sets[v]
            m = 0
            for u in bag:
                if u in row:
                    m |= 1 << slot[u]
            nbr[slot[v]] = m
        self.by_slot = by_slot
        self.nbr = nbr


def _has_independent_pair(mask: int, nbr) -> bool:
    for x in _bits(mask):
        if mask & ~nbr[x] & ~(1 << x):
            return True
    return False


def _has_independent_triple(mask: int, nbr) -> bool:
    rest = mask
    for a in _bits(mask):
        rest &= ~(1 << a)
        cand = rest & ~nbr[a]
        for b in _bits(cand):
            if cand & ~nbr[b] & ~((1 << (b + 1)) - 1):
                return True
    return False


def _claw_through(s: int, alive: int, nbr) -> bool:
    """Is there a claw in the alive bag vertices that uses slot ``s``?"""
    ns = nbr[s] & alive
    if _has_independent_triple(ns, nbr):
        return True
    sb = 1 << s
    for y in _bits(ns):
        # s as a leaf of a claw centred at y: two more leaves, non-adjacent
        # to s and to each other
        if _has_independent_pair(nbr[y] & alive & ~nbr[s] & ~sb, nbr):
            return True
    return False


def run_dp(
    g: WeightedGraph,
    ntd: NiceTreeDecomposition,
    weight_only: bool = False,
    keep_tables: bool = False,
    budget: int = DEFAULT_STATE_BUDGET,
) -> DPResult:
    """Fill the tables bottom-up and (unless ``weight_only``) recover a set."""
    W = max(ntd.width + 1, 1)
    M = (1 << W) - 1
    W2, W3, W4 = 2 * W, 3 * W, 4 * W
    slot = assign_slots(ntd)
    adj_sets = g.adj_sets
    weights = g.weights.tolist()
    kinds, verts, children, bags = ntd.kind, ntd.vertex, ntd.children, ntd.bags
    n_nodes = len(kinds)
    tables: list[dict[int, int] | None] = [None] * n_nodes
    back: list[dict | None] = [None] * n_nodes
    live = 0
    peak = 0
    record = not weight_only

    for t in range(n_nodes):
        kind = kinds[t]
        table: dict[int, int] = {}
        bk: dict | None = {} if record else None
        if kind == LEAF:
            table[0] = 0
            if record:
                bk[0] = None
        elif kind == INTRODUCE:
            child = tables[children[t][0]]
            v = verts[t]
            s = slot[v]
            sb = 1 << s
            bag = _Bag(bags[t], slot, adj_sets, W)
            nbr = bag.nbr
            nv = nbr[s]
            wv = weights[v]
            # Z pairs (x, y) with y adjacent to v and x neither v nor adjacent
            bad_z = 0
            for y in _bits(nv):
                for x in _bits(M & ~nv & ~sb):
                    bad_z |= 1 << (x * W + y)
            claw_memo: dict[int, bool] = {}
            sbA = sb << W
            shift = s * W + W4
            for key, val in child.items():
                nk = key | sb
                table[nk] = val + wv
                if record:
                    bk[nk] = key
                C = (key >> W3) & M
                if nv & C:
                    continue
                Z = key >> W4
                if Z & bad_z:
                    continue
                A = (key >> W) & M
                B = (key >> W2) & M
                alive = A | B | C | sb
                bad = claw_memo.get(alive)
                if bad is None:
                    bad = claw_memo[alive] = _claw_through(s, alive, nbr)
                if bad:
                    continue
                nk = key | sbA | ((nv & (B | C)) << shift)
                table[nk] = val
                if record:
                    bk[nk] = key
        elif kind == FORGET:
            child = tables[children[t][0]]
            v = verts[t]
            s = slot[v]
            sb = 1 << s
            keep = ~sb & M
            bag = _Bag(bags[children[t][0]], slot, adj_sets, W)
            nbr = bag.nbr
            nv = nbr[s]
            drop_z = 0
            for i in range(W):
                if i != s:
                    for j in range(W):
                        if j != s:
                            drop_z |= 1 << (i * W + j)
            new_pairs: dict[int, int] = {}
            sW = s * W
            for key, val in child.items():
                S = key & M
                if S & sb:
                    nk = key & ~sb
                else:
                    A = (key >> W) & M
                    B = (key >> W2) & M
                    C = (key >> W3) & M
                    Z = key >> W4
                    row = (Z >> sW) & M
                    alive = (A | B | C) & keep
                    pairs = new_pairs.get(alive)
                    if pairs is None:
                        pairs = 0
                        for y in _bits(nv & alive):
                            for x in _bits(nbr[y] & alive & ~nv):
                                pairs |= 1 << (x * W + y)
                        new_pairs[alive] = pairs
                    A2 = A & ~nv & keep
                    B2 = ((B & ~row) | (A & nv)) & keep
                    C2 = (C | (B & row)) & keep
                    Z2 = (Z & drop_z) | pairs
                    nk = S | A2 << W | B2 << W2 | C2 << W3 | Z2 << W4
                old = table.get(nk)
                if old is None or val < old:
                    table[nk] = val
                    if record:
                        bk[nk] = key
        elif kind == JOIN:
            left_t, right_t = children[t]
            left, right = tables[left_t], tables[right_t]
            by_s: dict[int, list[tuple[int, int]]] = {}
            for key, val in right.items():
                by_s.setdefault(key & M, []).append((key, val))
            ws = {}
            for key1, val1 in left.items():
                S = key1 & M
                group = by_s.get(S)
                if not group:
                    continue
                wS = ws.get(S)
                if wS is None:
                    wS = ws[S] = sum(weights[v] for v in bags[t] if S >> slot[v] & 1)
                A1 = (key1 >> W) & M
                B1 = (key1 >> W2) & M
                C1 = (key1 >> W3) & M
                Z1 = key1 >> W4
                base = val1 - wS
                for key2, val2 in group:
                    Z2 = key2 >> W4
                    if Z1 & Z2:
                        continue
                    A2 = (key2 >> W) & M
                    C2 = (key2 >> W3) & M
                    if C1 & ~A2 or C2 & ~A1:
                        continue
                    B2 = (key2 >> W2) & M
                    nk = (S | (A1 & A2) << W | ((A1 & B2) | (A2 & B1)) << W2
                          | (C1 | C2 | (B1 & B2)) << W3 | (Z1 | Z2) << W4)
                    tot = base + val2
                    old = table.get(nk)
                    if old is None or tot < old:
                        table[nk] = tot
                        if record:
                            bk[nk] = (key1, key2)
        else:
            raise DecompositionError(f"unknown node kind {kind!r}")

        tables[t] = table
        back[t] = bk
        # back-references stay alive until reconstruction, tables only until the parent is done
        live += 2 * len(table) if record else len(table)
        peak = max(peak, live)
        if live > budget:
            raise ResourceError(
                f"DP state count {live} exceeds budget {budget} (decomposition width {ntd.width})"
            )
        if not keep_tables:
            for c in children[t]:
                live -= len(tables[c])
                tables[c] = None

    root = n_nodes - 1
    final = tables[root]
    if not final or 0 not in final:
        raise AssertionError("root table has no empty state")
    weight = final[0]
    deleted = None
    if record:
        deleted_set = set()
        stack = [(root, 0)]
        while stack:
            t, key = stack.pop()
            kind = kinds[t]
            if kind == LEAF:
                continue
            prev = back[t][key]
            if kind == JOIN:
                stack.append((children[t][0], prev[0]))
                stack.append((children[t][1], prev[1]))
                continue
            if kind == INTRODUCE and key >> slot[verts[t]] & 1:
                deleted_set.add(verts[t])
            stack.append((children[t][0], prev))
        deleted = sorted(deleted_set)
    return DPResult(weight, deleted, ntd.width, slot, tables if keep_tables else [], peak)


def solve_treewidth(
    g: WeightedGraph,
    ntd: NiceTreeDecomposition,
    weight_only: bool = False,
    budget: int = DEFAULT_STATE_BUDGET,
    validate: bool = True,
) -> Solution:
    """Minimum-weight claw-deletion set using a nice tree decomposition of ``g``.

    With ``weight_only`` the vertex set is not recovered and the returned
    solution has an empty ``vertices`` tuple.
    """
    if validate:
        ntd.validate(g)
    res = run_dp(g, ntd, weight_only=weight_only, budget=budget)
    if weight_only:
        return Solution((), res.weight, "treewidth", width=ntd.width)
    sol = Solution.of(g, res.deleted, "treewidth", width=ntd.width)
    assert sol.weight == res.weight, "reconstructed set does not match the DP optimum"
    return sol


def decode_state(key: int, W: int, slot_vertex: dict[int, int]):
    """Unpack a state key into vertex sets ``(S, A, B, C, Z)`` using a slot-to-vertex map."""
    M = (1 << W) - 1
    parts = []
    for i in range(4):
        m = (key >> (i * W)) & M
        parts.append(frozenset(slot_vertex[s] for s in _bits(m)))
    Z = key >> (4 * W)
    pairs = frozenset((slot_vertex[b // W], slot_vertex[b % W]) for b in _bits(Z))
    return (*parts, pairs)
