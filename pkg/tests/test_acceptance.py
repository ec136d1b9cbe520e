"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Under pytest the lines are collected into a summary section at the end of
the run (see ``conftest.py``); ``-s`` also shows them inline.  The file can
be run as a script (``python tests/test_acceptance.py``) as well.
"""

from __future__ import annotations

import sys
import time

import networkx as nx
import numpy as np
import pytest

from clawdel import (
    RootedTree,
    WeightedGraph,
    brute_force_min,
    cdn_full_binary,
    cdn_full_kary,
    claw_deletion_set_tree,
    gen_full_kary,
    greedy_4_approx,
    heuristic_decomposition,
    make_nice,
    solve_block_graph,
    solve_forest,
    solve_treewidth,
    vc_to_split,
    verify_solution,
)
from clawdel.baselines import min_vertex_cover
from clawdel.generators import random_block_graph, random_partial_ktree, random_tree

RESULTS: dict[int, tuple[bool, str]] = {}

# (instance, optimum) pairs collected by criteria 1, 3 and 4 for the approximation check
CORPUS: list[tuple[WeightedGraph, int]] = []


def report(num: int, ok: bool, detail: str) -> None:
    RESULTS[num] = (ok, detail)
    line = f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(line, flush=True)
    assert ok, line


def claws_of(g: WeightedGraph):
    """All induced claws, enumerated through independent triples of each neighbourhood."""
    adj = g.adj_sets
    for c in range(g.n):
        nb = sorted(adj[c])
        for i, a in enumerate(nb):
            rest = [b for b in nb[i + 1:] if b not in adj[a]]
            for j, b in enumerate(rest):
                for d in rest[j + 1:]:
                    if d not in adj[b]:
                        yield c, (a, b, d)


def test_criterion_1_forest_oracle():
    t0 = time.perf_counter()
    count = bad = 0
    for seed in range(50):
        rng = np.random.default_rng(1000 + seed)
        for _ in range(200):
            n = int(rng.integers(1, 16))
            g = random_tree(n, rng)
            s = claw_deletion_set_tree(RootedTree.from_graph(g, int(rng.integers(0, n))))
            opt = brute_force_min(g).weight
            if len(s) != opt or not verify_solution(g, s):
                bad += 1
            if len(CORPUS) < 2000:
                CORPUS.append((g, opt))
            count += 1
    elapsed = time.perf_counter() - t0
    report(1, count >= 10_000 and bad == 0 and elapsed < 60,
           f"{count} trees over 50 seeds, {bad} mismatches, {elapsed:.1f}s (limit 60s)")


def test_criterion_2_closed_forms():
    rows = []
    bad = []
    for k in range(2, 6):
        for h in range(0, 7):
            g = gen_full_kary(k, h)
            got = solve_forest(g).size
            want = cdn_full_binary(g.n) if k == 2 else cdn_full_kary(k, g.n)
            ok = got == want
            if h <= 3:
                ok = ok and brute_force_min(g).weight == want
            rows.append((k, h))
            if not ok:
                bad.append((k, h, got, want))
    report(2, not bad, f"{len(rows)} (k, h) pairs, k in 2..5, h <= 6; oracle for h <= 3; failures {bad}")


def test_criterion_3_block_oracle():
    t0 = time.perf_counter()
    rng = np.random.default_rng(3)
    count = bad = 0
    while count < 10_000:
        n = int(rng.integers(1, 15))
        g = random_block_graph(n, rng, int(rng.integers(2, 6)), (1, 9))
        sol = solve_block_graph(g)
        opt = brute_force_min(g).weight
        if not (sol.weight == opt == g.weight_of(sol.vertices) and verify_solution(g, sol.vertices)):
            bad += 1
        if count % 5 == 0:
            CORPUS.append((g, opt))
        count += 1
    elapsed = time.perf_counter() - t0
    report(3, bad == 0 and elapsed < 300,
           f"{count} block graphs, weights 1-9, {bad} mismatches, {elapsed:.1f}s (limit 300s)")


def test_criterion_4_treewidth_oracle():
    t0 = time.perf_counter()
    rng = np.random.default_rng(4)
    count = bad = 0
    while count < 10_000:
        n = int(rng.integers(1, 14))
        k = 1 + count % 3
        g, td = random_partial_ktree(n, k, float(rng.uniform(0, 0.5)), rng, (1, 9))
        sol = solve_treewidth(g, make_nice(td))
        opt = brute_force_min(g).weight
        if sol.weight != opt or not verify_solution(g, sol.vertices):
            bad += 1
        if count % 5 == 0:
            CORPUS.append((g, opt))
        count += 1
    elapsed = time.perf_counter() - t0
    report(4, bad == 0 and elapsed < 600,
           f"{count} partial k-trees (k <= 3), weights 1-9, {bad} mismatches, {elapsed:.1f}s (limit 600s)")


def test_criterion_5_cross_solver():
    rng = np.random.default_rng(5)
    bad_trees = 0
    for _ in range(1000):
        g = random_tree(int(rng.integers(1, 201)), rng)
        f = solve_forest(g).weight
        b = solve_block_graph(g).weight
        t = solve_treewidth(g, make_nice(heuristic_decomposition(g))).weight
        bad_trees += not (f == b == t)
    bad_blocks = 0
    widths = set()
    for _ in range(200):
        # cliques of size <= 4 keep the treewidth at most 3
        g = random_block_graph(int(rng.integers(1, 201)), rng, 4, (1, 9))
        td = heuristic_decomposition(g)
        widths.add(td.width)
        bad_blocks += solve_block_graph(g).weight != solve_treewidth(g, make_nice(td)).weight
    report(5, bad_trees == 0 and bad_blocks == 0 and max(widths) <= 3,
           f"1000 unit trees: {bad_trees} disagreements; 200 weighted block graphs "
           f"(widths {sorted(widths)}): {bad_blocks} disagreements")


def test_criterion_6_reduction():
    sources = []
    for h in nx.graph_atlas_g():
        if 2 <= h.number_of_nodes() <= 5 and nx.is_connected(h):
            sources.append(WeightedGraph.from_edges(h.number_of_nodes(), list(h.edges())))
    n_atlas = len(sources)
    rng = np.random.default_rng(6)
    iu, ju = np.triu_indices(6, k=1)
    while len(sources) < n_atlas + 100:
        keep = rng.random(len(iu)) < 0.5
        g = WeightedGraph.from_edges(6, np.stack([iu[keep], ju[keep]], axis=1))
        if g.m:
            sources.append(g)
    bad_opt = bad_split = claws = 0
    ratios = []
    for g in sources:
        red = vc_to_split(g)
        ind = set(red.independent)
        for c, leaves in claws_of(red.graph):
            claws += 1
            bad_split += sum(v in ind for v in (c, *leaves)) != 2
        opt = brute_force_min(red.graph).weight
        vc = min_vertex_cover(g)
        bad_opt += opt != vc
        ratios.append(greedy_4_approx(red.graph).weight / opt)
    report(6, bad_opt == 0 and bad_split == 0,
           f"{n_atlas} connected graphs on <= 5 vertices + 100 on 6: {bad_opt} vc mismatches; "
           f"{claws} claws, {bad_split} without exactly 2 independent vertices; "
           f"greedy/opt on reductions: min {min(ratios):.2f} max {max(ratios):.2f}")


def test_criterion_7_approximation():
    corpus = list(CORPUS)
    if len(corpus) < 1000:
        # criteria 1, 3, 4 were not run in this session; rebuild a corpus of the same kinds
        rng = np.random.default_rng(7)
        for i in range(1500):
            n = int(rng.integers(4, 14))
            if i % 3 == 0:
                g = random_tree(n, rng)
            elif i % 3 == 1:
                g = random_block_graph(n, rng, 4, (1, 9))
            else:
                g = random_partial_ktree(n, 1 + i % 3, 0.3, rng, (1, 9))[0]
            corpus.append((g, brute_force_min(g).weight))
    worst = 0.0
    bad = 0
    for g, opt in corpus:
        sol = greedy_4_approx(g)
        bad += sol.weight > 4 * opt or not verify_solution(g, sol.vertices)
        if opt:
            worst = max(worst, sol.weight / opt)
    report(7, len(corpus) >= 1000 and bad == 0,
           f"{len(corpus)} oracle-solved instances, {bad} over 4x; worst observed ratio {worst:.2f}")


def _scaling(sizes, build, solve):
    times = []
    for n in sizes:
        inst = build(n)
        t0 = time.perf_counter()
        solve(inst)
        times.append(time.perf_counter() - t0)
    ratios = [b / a for a, b in zip(times, times[1:])]
    return times, ratios


@pytest.mark.slow
def test_criterion_8_linear_scaling():
    rng = np.random.default_rng(8)
    parts = {
        "forest": _scaling((10**5, 10**6, 10**7), lambda n: random_tree(n, rng), solve_forest),
        "block": _scaling((10**4, 10**5, 10**6), lambda n: random_block_graph(n, rng, 4),
                          lambda g: solve_block_graph(g)),
        "treewidth": _scaling(
            (10**3, 10**4, 10**5),
            lambda n: random_partial_ktree(n, 3, 0.3, rng),
            lambda gt: solve_treewidth(gt[0], make_nice(gt[1])),
        ),
    }
    ok = all(max(r) <= 30 and t[-1] < 120 for t, r in parts.values())
    detail = "; ".join(
        f"{name} t=[{', '.join(f'{x:.2f}' for x in t)}]s ratios=[{', '.join(f'{x:.1f}' for x in r)}]"
        for name, (t, r) in parts.items()
    )
    report(8, ok, detail)


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) and len(RESULTS) == 8 else 1)
