import json
import shutil
import subprocess
import sys

import pytest

from clawdel import parse_graph, serialize_graph
from clawdel.cli import main
from clawdel.generators import vc_to_split

from conftest import cycle, path, star


@pytest.fixture
def star_file(tmp_path):
    f = tmp_path / "star.txt"
    f.write_text(serialize_graph(star(3)))
    return f


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve_text_and_json(capsys, star_file):
    code, out, _ = run(capsys, "solve", star_file)
    assert code == 0 and "weight: 1" in out and "class: forest" in out
    code, out, _ = run(capsys, "solve", star_file, "--json", "--class", "oracle")
    rep = json.loads(out)
    assert code == 0 and rep["weight"] == 1 and rep["verified"] is True and rep["cls"] == "oracle"


def test_solve_dimacs(capsys, tmp_path):
    f = tmp_path / "g.dimacs"
    f.write_text("p edge 4 3\ne 1 2\ne 1 3\ne 1 4\n")
    code, out, _ = run(capsys, "solve", f, "--json")
    assert code == 0 and json.loads(out)["labels"] == ["1"]


def test_solve_with_td_and_weight_only(capsys, tmp_path):
    g = cycle(4)
    (tmp_path / "c4.txt").write_text(serialize_graph(g))
    (tmp_path / "c4.td").write_text("s td 2 3 4\nb 1 1 2 3\nb 2 1 3 4\n1 2\n")
    code, out, _ = run(capsys, "solve", tmp_path / "c4.txt", "--td", tmp_path / "c4.td",
                       "--weight-only", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["width"] == 2 and rep["verified"] is None


def test_bad_td_is_an_error(capsys, tmp_path):
    (tmp_path / "p.txt").write_text(serialize_graph(path(3)))
    (tmp_path / "p.td").write_text("s td 2 1 3\nb 1 1\nb 2 3\n1 2\n")
    code, _, err = run(capsys, "solve", tmp_path / "p.txt", "--td", tmp_path / "p.td")
    assert code == 1 and "error:" in err


def test_dump_tables(capsys, star_file):
    code, _, err = run(capsys, "solve", star_file, "--class", "block", "--dump-tables")
    assert code == 0 and err.splitlines()[1].startswith("node\tkind")


def test_verify(capsys, star_file):
    code, out, _ = run(capsys, "verify", star_file, "--set", "0")
    assert code == 0 and "claw-free" in out
    code, out, _ = run(capsys, "verify", star_file)
    assert code == 1 and out.strip() == "claw: center 0 leaves 1 2 3"
    code, _, err = run(capsys, "verify", star_file, "--set", "9")
    assert code == 1 and "unknown vertex" in err


def test_approx_exit_code(capsys, star_file):
    code, out, _ = run(capsys, "approx", star_file)
    assert code == 2 and out.startswith("APPROXIMATE")


def test_gen_writes_graph_and_sidecar(capsys, tmp_path):
    out = tmp_path / "t.txt"
    code, _, _ = run(capsys, "gen", "--family", "tree", "--n", 12, "--seed", 5, "-o", out)
    assert code == 0
    g = parse_graph(out.read_text())
    meta = json.loads((tmp_path / "t.txt.json").read_text())
    assert g.n == 12 and meta["family"] == "tree" and meta["params"]["seed"] == 5
    code, solved, _ = run(capsys, "solve", out, "--json")
    assert json.loads(solved)["weight"] == meta["optimum"]


def test_gen_kary_and_partial_ktree(capsys, tmp_path):
    code, _, _ = run(capsys, "gen", "--family", "kary", "--k", 3, "--height", 2, "-o", tmp_path / "k.txt")
    assert code == 0 and json.loads((tmp_path / "k.txt.json").read_text())["optimum"] == 3
    code, _, _ = run(capsys, "gen", "--family", "partial-ktree", "--n", 30, "--k", 3,
                     "--weights", "1,9", "--td-out", tmp_path / "p.td", "-o", tmp_path / "p.txt")
    assert code == 0
    code, out, _ = run(capsys, "solve", tmp_path / "p.txt", "--td", tmp_path / "p.td", "--json")
    assert code == 0 and json.loads(out)["width"] == 3


def test_reduce(capsys, tmp_path):
    src = tmp_path / "p3.txt"
    src.write_text(serialize_graph(path(3)))
    out = tmp_path / "r.txt"
    code, _, _ = run(capsys, "reduce", "--from", "vc", src, "-o", out)
    meta = json.loads((tmp_path / "r.txt.json").read_text())
    assert code == 0 and meta["optimum"] == 1
    assert parse_graph(out.read_text()) == vc_to_split(path(3)).graph


def test_decompose(capsys, tmp_path):
    f = tmp_path / "c.txt"
    f.write_text(serialize_graph(cycle(5)))
    code, out, _ = run(capsys, "decompose", f)
    assert code == 0 and out.startswith("s td") and out.split()[3] == "3"


def test_formula(capsys):
    code, out, _ = run(capsys, "formula", "kary", "--k", 2, "--height", 3)
    assert code == 0 and "cdn=2" in out
    code, out, _ = run(capsys, "formula", "kary", "--k", 3, "--n", 4, "--json")
    assert json.loads(out)["cdn"] == 1
    code, _, err = run(capsys, "formula", "kary", "--k", 3, "--n", 5)
    assert code == 1


def test_bench(capsys, tmp_path):
    for i in range(3):
        (tmp_path / f"g{i}.txt").write_text(serialize_graph(path(5 + i)))
    code, out, _ = run(capsys, "bench", tmp_path, "--repetitions", 1)
    assert code == 0 and len(out.strip().splitlines()) == 4
    empty = tmp_path / "empty"
    empty.mkdir()
    code, _, _ = run(capsys, "bench", empty)
    assert code == 1


def test_parse_error_exit_code(capsys, tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("2 1\n0 0\n")
    code, _, err = run(capsys, "solve", f)
    assert code == 1 and "line 2" in err


@pytest.mark.skipif(shutil.which("clawdel") is None, reason="console script not installed")
def test_console_script(star_file):
    res = subprocess.run(["clawdel", "solve", str(star_file), "--json"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["weight"] == 1


def test_module_entry_point(star_file):
    res = subprocess.run([sys.executable, "-m", "clawdel.cli", "verify", str(star_file)],
                         capture_output=True, text=True)
    assert res.returncode == 1 and "claw:" in res.stdout
