import logging

import numpy as np

import pytest

from clawdel import ClawdelError, serialize_graph
from clawdel.dispatch import BENCH_FIELDS, bench, detect_class, dispatch, rows_to_csv
from clawdel.generators import gen_random, random_partial_ktree, vc_to_split

from conftest import complete, cycle, graph, path, random_graph, star, subset_min


class TestRouting:
    def test_unit_tree_goes_to_forest(self):
        assert dispatch(path(8)).cls == "forest"

    def test_weighted_tree_goes_to_block(self):
        r = dispatch(star(3).with_weights([5, 1, 1, 1]))
        assert r.cls == "block" and r.weight == 1

    def test_c4_goes_to_treewidth(self):
        r = dispatch(cycle(4))
        assert r.cls == "treewidth" and r.width == 2 and r.weight == 0

    def test_wide_small_graph_goes_to_oracle(self):
        g = complete(12)
        # remove a perfect matching so the graph is no longer a block graph
        g = graph(12, [e for e in g.edges() if not (e[0] % 2 == 0 and e[1] == e[0] + 1)])
        assert detect_class(g, tw_cap=3)[0] == "oracle"
        assert dispatch(g, tw_cap=3).cls == "oracle"

    def test_fallback_to_approximation(self):
        red = vc_to_split(cycle(5)).graph
        r = dispatch(red, tw_cap=3, oracle_max_n=10)
        assert r.cls == "approx" and not r.exact
        assert r.text().startswith("APPROXIMATE")

    def test_forced_class(self):
        g = star(3)
        for cls in ("forest", "block", "treewidth", "oracle"):
            assert dispatch(g, cls).weight == 1
        with pytest.raises(ValueError):
            dispatch(g, "magic")

    def test_disconnected_block_graph(self):
        g = graph(10, [(0, 1), (0, 2), (0, 3), (4, 5), (5, 6), (6, 4), (6, 7), (6, 8), (7, 8)])
        g = g.with_weights([2, 1, 1, 1, 1, 1, 1, 1, 1, 1])
        r = dispatch(g)
        assert r.cls == "block" and r.weight == subset_min(g)


class TestReports:
    def test_exact_reports_verify(self, rng):
        for _ in range(100):
            g = random_graph(int(rng.integers(1, 14)), float(rng.uniform(0.05, 0.5)), rng, (1, 5))
            r = dispatch(g)
            assert r.verified is True
            assert r.weight == g.weight_of(r.vertices) == subset_min(g)
            assert r.labels == [g.label(v) for v in r.vertices]

    def test_deterministic(self):
        g = gen_random("partial-ktree", 60, 4, k=3, weight_range=(1, 9))
        a, b = dispatch(g).as_dict(), dispatch(g).as_dict()
        a.pop("wall_time"), b.pop("wall_time")
        assert a == b

    def test_weight_only_has_no_verification(self):
        g, td = random_partial_ktree(30, 2, 0.2, np.random.default_rng(1))
        r = dispatch(g, "treewidth", td=td, weight_only=True)
        assert r.verified is None and r.vertices == []


class TestBench:
    def write(self, d, name, g):
        (d / name).write_text(serialize_graph(g))

    def test_three_trees(self, tmp_path):
        for s in range(3):
            self.write(tmp_path, f"t{s}.txt", gen_random("tree", 40, s))
        rows = bench(tmp_path, repetitions=2)
        assert [r["instance"] for r in rows] == ["t0.txt", "t1.txt", "t2.txt"]
        assert all(r["cls"] == "forest" and r["repetitions"] == 2 for r in rows)
        csv = rows_to_csv(rows).splitlines()
        assert csv[0].split(",") == BENCH_FIELDS and len(csv) == 4

    def test_empty_directory(self, tmp_path):
        with pytest.raises(ClawdelError):
            bench(tmp_path)

    def test_one_malformed_file(self, tmp_path, caplog):
        for s in range(4):
            self.write(tmp_path, f"g{s}.txt", gen_random("block", 30, s))
        (tmp_path / "bad.txt").write_text("3 1\n0 0\n")
        with caplog.at_level(logging.WARNING):
            rows = bench(tmp_path, repetitions=1)
        assert len(rows) == 4
        assert "bad.txt" in caplog.text

    def test_all_malformed(self, tmp_path):
        (tmp_path / "bad.txt").write_text("nonsense\n")
        with pytest.raises(ClawdelError):
            bench(tmp_path)

    def test_sidecars_are_skipped(self, tmp_path):
        self.write(tmp_path, "a.txt", path(4))
        (tmp_path / "a.txt.json").write_text("{}")
        assert len(bench(tmp_path, repetitions=1)) == 1
