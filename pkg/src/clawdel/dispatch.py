"""Solver selection, verified reports, and corpus benchmarking."""

from __future__ import annotations

import csv
import io
import logging
import statistics
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .baselines import DEFAULT_NODE_BUDGET, brute_force_min, greedy_4_approx
from .block import solve_block_graph
from .claws import verify_solution
from .errors import ClawdelError, GraphError
from .forest import solve_forest
from .graph import WeightedGraph, connected_components, induced_subgraph, is_block_graph, is_forest, parse_graph
from .solution import Solution
from .treewidth import heuristic_decomposition, make_nice, solve_treewidth
from .treewidth.decomposition import TreeDecomposition
from .treewidth.dp import DEFAULT_STATE_BUDGET

log = logging.getLogger(__name__)

CLASSES = ("forest", "block", "treewidth", "oracle", "approx")
EXACT = frozenset(CLASSES) - {"approx"}


@dataclass
class SolveReport:
    instance: str
    cls: str
    weight: int
    labels: list[str]
    verified: bool | None
    wall_time: float
    solver: str
    exact: bool
    width: int | None = None
    vertices: list[int] = field(default_factory=list)

    def as_dict(self) -> dict:
        return asdict(self)

    def text(self) -> str:
        lines = []
        if not self.exact:
            lines.append("APPROXIMATE: no exact solver applied; weight is at most 4x optimal")
        lines.append(f"instance: {self.instance}")
        lines.append(f"class: {self.cls}  solver: {self.solver}"
                     + (f"  width: {self.width}" if self.width is not None else ""))
        lines.append(f"weight: {self.weight}")
        lines.append(f"deleted: {' '.join(self.labels) if self.labels else '(none)'}")
        lines.append(f"verified: {self.verified}")
        lines.append(f"time: {self.wall_time:.6f}s")
        return "\n".join(lines)


def _per_component(g: WeightedGraph, solve) -> list[int]:
    out = []
    for comp in connected_components(g):
        if len(comp) < 4:
            continue
        sub, old = induced_subgraph(g, comp)
        out.extend(int(old[v]) for v in solve(sub).vertices)
    return out


def detect_class(g: WeightedGraph, tw_cap: int = 10, oracle_max_n: int = 20,
                 td: TreeDecomposition | None = None) -> tuple[str, TreeDecomposition | None]:
    """Cheapest applicable exact class, in the order forest, block, treewidth, oracle."""
    if g.unit_weights and is_forest(g):
        return "forest", None
    if is_block_graph(g):
        return "block", None
    if td is None:
        td = heuristic_decomposition(g)
    if td.width <= tw_cap:
        return "treewidth", td
    if g.n <= oracle_max_n:
        return "oracle", td
    return "approx", td


def run_solver(g: WeightedGraph, cls: str, td: TreeDecomposition | None = None,
               weight_only: bool = False, budget: int | None = None) -> Solution:
    if cls == "forest":
        return solve_forest(g)
    if cls == "block":
        if not is_block_graph(g):
            raise GraphError("input is not a block graph")
        verts = _per_component(g, lambda sub: solve_block_graph(sub, check=False))
        return Solution.of(g, verts, "block")
    if cls == "treewidth":
        if td is None:
            td = heuristic_decomposition(g)
        else:
            td.validate(g)
        return solve_treewidth(g, make_nice(td), weight_only=weight_only,
                               budget=budget or DEFAULT_STATE_BUDGET, validate=False)
    if cls == "oracle":
        return brute_force_min(g, budget=budget or DEFAULT_NODE_BUDGET)
    if cls == "approx":
        return greedy_4_approx(g)
    raise ValueError(f"unknown class {cls!r}; choose from {', '.join(CLASSES)}")


def dispatch(g: WeightedGraph, forced: str | None = None, *, instance: str = "-",
             td: TreeDecomposition | None = None, tw_cap: int = 10, oracle_max_n: int = 20,
             weight_only: bool = False, budget: int | None = None) -> SolveReport:
    """Solve ``g`` with the forced class or the first applicable exact one.

    Exact answers are checked with :func:`verify_solution` before they are
    reported; weight-only runs carry ``verified=None``.
    """
    t0 = time.perf_counter()
    if forced is None:
        cls, td = detect_class(g, tw_cap, oracle_max_n, td)
    else:
        if forced not in CLASSES:
            raise ValueError(f"unknown class {forced!r}; choose from {', '.join(CLASSES)}")
        cls = forced
    sol = run_solver(g, cls, td, weight_only=weight_only, budget=budget)
    elapsed = time.perf_counter() - t0
    if weight_only and cls == "treewidth":
        verified = None
    else:
        verified = verify_solution(g, sol.vertices)
        if cls in EXACT and not verified:
            raise AssertionError(f"{sol.solver} returned a set that leaves a claw")
    return SolveReport(
        instance=instance,
        cls=cls,
        weight=sol.weight,
        labels=[g.label(v) for v in sol.vertices],
        verified=verified,
        wall_time=elapsed,
        solver=sol.solver,
        exact=sol.exact,
        width=sol.width if sol.width is not None else (td.width if cls == "treewidth" and td else None),
        vertices=list(sol.vertices),
    )


def guess_format(text: str) -> str:
    for raw in text.splitlines():
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        return "dimacs" if s.split()[0] in ("p", "c", "e", "n") else "edge-list"
    return "edge-list"


def read_graph(path: str | Path, format: str | None = None) -> WeightedGraph:
    text = Path(path).read_text()
    return parse_graph(text, format or guess_format(text))


BENCH_FIELDS = ["instance", "cls", "solver", "n", "m", "weight", "verified", "width",
                "repetitions", "median_time", "min_time"]


def bench(corpus: str | Path, repetitions: int = 3, forced: str | None = None,
          weight_only: bool = False) -> list[dict]:
    """Solve every instance in ``corpus`` ``repetitions`` times; one row per instance."""
    files = sorted(p for p in Path(corpus).iterdir() if p.is_file() and not p.name.endswith(".json"))
    if not files:
        raise ClawdelError(f"no instances in {corpus}")
    rows = []
    for path in files:
        try:
            g = read_graph(path)
        except (ClawdelError, OSError, UnicodeDecodeError) as exc:
            log.warning("skipping %s: %s", path.name, exc)
            continue
        times = []
        report = None
        for _ in range(max(repetitions, 1)):
            report = dispatch(g, forced, instance=path.name, weight_only=weight_only)
            times.append(report.wall_time)
        rows.append({
            "instance": path.name, "cls": report.cls, "solver": report.solver,
            "n": g.n, "m": g.m, "weight": report.weight, "verified": report.verified,
            "width": report.width, "repetitions": len(times),
            "median_time": statistics.median(times), "min_time": min(times),
        })
    if not rows:
        raise ClawdelError("every instance in the corpus failed to parse")
    return rows


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=BENCH_FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()
