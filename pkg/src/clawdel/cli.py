"""Command-line front end.

Exit codes: 0 when an exact answer was produced, 2 when only the
approximation applied, 1 on any error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .baselines import min_vertex_cover
from .block import compute_block_tables, format_tables
from .claws import find_claw
from .dispatch import CLASSES, bench, dispatch, read_graph, rows_to_csv
from .errors import ClawdelError
from .forest import cdn_full_binary, cdn_full_kary, deletion_fraction, full_kary_size
from .generators import FAMILIES, gen_full_kary, gen_random, random_partial_ktree, vc_to_split
from .graph import block_cutpoint_tree, connected_components, induced_subgraph, serialize_graph
from .treewidth import format_td, heuristic_decomposition, parse_td

EXIT_OK, EXIT_ERROR, EXIT_APPROX = 0, 1, 2
ORACLE_SIDECAR_MAX_N = 14


def _weights(text: str) -> tuple[int, int]:
    try:
        lo, _, hi = text.partition(",")
        return int(lo), int(hi or lo)
    except ValueError:
        raise argparse.ArgumentTypeError("expected LO,HI") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _write_instance(g, meta: dict, out: str | None) -> None:
    _emit(serialize_graph(g, "edge-list"), out)
    if out:
        Path(out + ".json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
    else:
        sys.stderr.write(json.dumps(meta, sort_keys=True) + "\n")


def cmd_solve(args) -> int:
    g = read_graph(args.file, args.format)
    td = parse_td(Path(args.td).read_text(), g) if args.td else None
    report = dispatch(g, args.cls, instance=args.file, td=td, tw_cap=args.tw_cap,
                      weight_only=args.weight_only, budget=args.budget)
    if args.dump_tables:
        if report.cls != "block":
            raise ClawdelError("--dump-tables applies to block-graph solves only")
        for comp in connected_components(g):
            sub, old = induced_subgraph(g, comp)
            bct = block_cutpoint_tree(sub)
            if bct.trivial:
                continue
            sys.stderr.write(f"# component {g.label(int(old[0]))}\n")
            sys.stderr.write(format_tables(compute_block_tables(bct, sub), bct))
    if args.json:
        print(json.dumps(report.as_dict(), sort_keys=True))
    else:
        print(report.text())
    return EXIT_OK if report.exact else EXIT_APPROX


def cmd_verify(args) -> int:
    g = read_graph(args.file, args.format)
    index = {g.label(v): v for v in range(g.n)}
    chosen = []
    for tok in (args.set or "").replace(",", " ").split():
        if tok not in index:
            raise ClawdelError(f"unknown vertex {tok!r}")
        chosen.append(index[tok])
    claw = find_claw(g, chosen)
    if claw is None:
        print("claw-free")
        return EXIT_OK
    leaves = " ".join(g.label(v) for v in claw.leaves)
    print(f"claw: center {g.label(claw.center)} leaves {leaves}")
    return 1


def cmd_gen(args) -> int:
    wr = args.weights
    params = {"n": args.n, "seed": args.seed, "weights": list(wr)}
    meta = {"family": args.family, "params": params, "generator": f"clawdel {__version__}"}
    if args.family == "kary":
        if args.height is None:
            raise ClawdelError("--family kary needs --height")
        g = gen_full_kary(args.k, args.height)
        params.update(k=args.k, height=args.height, n=g.n)
        if args.k >= 2:
            meta["optimum"] = cdn_full_binary(g.n) if args.k == 2 else cdn_full_kary(args.k, g.n)
    else:
        if args.n is None:
            raise ClawdelError("--n is required")
        if args.family == "partial-ktree":
            params.update(k=args.k, p=args.p)
        elif args.family == "split":
            params.update(p=args.p)
        elif args.family == "block":
            params.update(max_clique=args.max_clique)
        if args.family == "partial-ktree":
            g, td = random_partial_ktree(args.n, args.k, args.p, np.random.default_rng(args.seed), wr)
            if args.td_out:
                Path(args.td_out).write_text(format_td(td))
        else:
            g = gen_random(args.family, args.n, args.seed, k=args.k, p=args.p,
                           max_clique=args.max_clique, weight_range=wr)
        if g.n <= ORACLE_SIDECAR_MAX_N:
            report = dispatch(g)
            if report.exact:
                meta["optimum"] = report.weight
    _write_instance(g, meta, args.output)
    return EXIT_OK


def cmd_reduce(args) -> int:
    src = read_graph(args.file, args.format)
    red = vc_to_split(src)
    meta = {
        "family": "vc-reduction",
        "source": args.file,
        "params": {"source_n": src.n, "source_m": src.m},
        "independent": [red.graph.label(v) for v in red.independent],
        "generator": f"clawdel {__version__}",
    }
    if src.n <= ORACLE_SIDECAR_MAX_N:
        meta["optimum"] = min_vertex_cover(src)
    _write_instance(red.graph, meta, args.output)
    return EXIT_OK


def cmd_decompose(args) -> int:
    g = read_graph(args.file, args.format)
    td = heuristic_decomposition(g)
    _emit(format_td(td), args.output)
    return EXIT_OK


def cmd_formula(args) -> int:
    k = args.k
    if args.height is not None:
        n = full_kary_size(k, args.height)
    elif args.n is not None:
        n = args.n
    else:
        raise ClawdelError("give --height or --n")
    value = cdn_full_binary(n) if k == 2 else cdn_full_kary(k, n)
    out = {"k": k, "n": n, "cdn": value}
    if args.height is not None:
        out["height"] = args.height
        out["fraction"] = str(deletion_fraction(k, args.height))
    if args.json:
        print(json.dumps(out, sort_keys=True))
    else:
        print(" ".join(f"{key}={val}" for key, val in out.items()))
    return EXIT_OK


def cmd_approx(args) -> int:
    g = read_graph(args.file, args.format)
    report = dispatch(g, "approx", instance=args.file)
    print(json.dumps(report.as_dict(), sort_keys=True) if args.json else report.text())
    return EXIT_APPROX


def cmd_bench(args) -> int:
    rows = bench(args.corpus, args.repetitions, args.cls, args.weight_only)
    _emit(rows_to_csv(rows), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="clawdel", description="Claw-free vertex deletion solvers.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_input(sp):
        sp.add_argument("file")
        sp.add_argument("--format", choices=("edge-list", "dimacs"), default=None,
                        help="input format (guessed from the first line by default)")

    sp = sub.add_parser("solve", help="solve an instance exactly when possible")
    graph_input(sp)
    sp.add_argument("--class", dest="cls", choices=CLASSES, default=None)
    sp.add_argument("--td", help="tree decomposition in .td format")
    sp.add_argument("--tw-cap", type=int, default=10)
    sp.add_argument("--weight-only", action="store_true")
    sp.add_argument("--budget", type=int, default=None)
    sp.add_argument("--dump-tables", action="store_true")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("verify", help="check that deleting a set leaves no claw")
    graph_input(sp)
    sp.add_argument("--set", default="", help="vertex labels, comma or space separated")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("gen", help="generate a random or full k-ary instance")
    sp.add_argument("--family", choices=(*FAMILIES, "kary"), required=True)
    sp.add_argument("--n", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--k", type=int, default=2)
    sp.add_argument("--p", type=float, default=0.3)
    sp.add_argument("--height", type=int)
    sp.add_argument("--max-clique", type=int, default=4)
    sp.add_argument("--weights", type=_weights, default=(1, 1), help="LO,HI")
    sp.add_argument("--td-out", help="also write the construction's decomposition (partial-ktree)")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("reduce", help="build the split-graph image of a vertex-cover instance")
    sp.add_argument("--from", dest="source", choices=("vc",), default="vc")
    graph_input(sp)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("decompose", help="print a heuristic tree decomposition")
    graph_input(sp)
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("formula", help="closed-form claw-deletion number of full k-ary trees")
    sp.add_argument("family", choices=("kary",))
    sp.add_argument("--k", type=int, required=True)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--height", type=int)
    g.add_argument("--n", type=int)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_formula)

    sp = sub.add_parser("approx", help="run the 4-approximation only")
    graph_input(sp)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_approx)

    sp = sub.add_parser("bench", help="time every instance in a directory; CSV output")
    sp.add_argument("corpus")
    sp.add_argument("--repetitions", type=int, default=3)
    sp.add_argument("--class", dest="cls", choices=CLASSES, default=None)
    sp.add_argument("--weight-only", action="store_true")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (ClawdelError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
