"""Shared helpers: a naive subset-enumeration oracle and small graph builders."""

from __future__ import annotations

import sys
from itertools import combinations

import numpy as np
import pytest

from clawdel import WeightedGraph


def graph(n, edges, weights=None):
    return WeightedGraph.from_edges(n, edges, weights)


def path(n):
    return graph(n, [(i, i + 1) for i in range(n - 1)])


def star(k):
    return graph(k + 1, [(0, i) for i in range(1, k + 1)])


def cycle(n):
    return graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return graph(n, list(combinations(range(n), 2)))


def all_claws(g):
    """Every induced claw as a 4-bit vertex mask, by testing all centers and leaf triples."""
    adj = g.adj_sets
    out = []
    for c in range(g.n):
        for a, b, d in combinations(sorted(adj[c]), 3):
            if b not in adj[a] and d not in adj[a] and d not in adj[b]:
                out.append((1 << c) | (1 << a) | (1 << b) | (1 << d))
    return out


def subset_min(g) -> int:
    """Minimum deletion weight by enumerating every vertex subset."""
    claws = all_claws(g)
    if not claws:
        return 0
    w = g.weights.tolist()
    best = sum(w)
    for mask in range(1 << g.n):
        if all(mask & c for c in claws):
            best = min(best, sum(w[i] for i in range(g.n) if mask >> i & 1))
    return best


def random_graph(n, p, rng, weight_range=(1, 1)):
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(len(iu)) < p
    w = rng.integers(weight_range[0], weight_range[1] + 1, size=n)
    return graph(n, np.stack([iu[keep], ju[keep]], axis=1), w)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        ok, detail = results[num]
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}")
