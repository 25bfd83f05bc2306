"""Command-line surface for the toolkit.

Subcommands:

  analyze      per-graph verdicts (connectivity, traceability, optionally
               ml and the path cover number) for a graph6 stream
  census       non-traceable counts by order and connectivity class
  lemma-short  scan for counterexamples to the degree-2-start guarantee
  construct    emit a named construction family member as graph6
  generate     isomorph-free generation of connected cubic graphs
  verify-paper re-verify every embedded fixture from scratch

Graphs travel as graph6, one per line; reports are line-delimited JSON.
Exit codes: 0 all checks pass, 1 a verification mismatch, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Iterable, Iterator, TextIO

from .census import (
    lemma_short_scan,
    nontraceable_census,
    verify_paper_artifacts,
)
from .constructions import (
    GADGET_NAMES,
    MultiGraph,
    complete_bipartite,
    complete_graph,
    cycle_of_edge_deleted_petersen,
    edge_expansion,
    jcell_ring,
    named_graph,
    substitute_p_star,
    theta_multigraph,
)
from .exact import min_leaf_number, path_cover_number
from .generate import generate_cubic
from .graph import (
    Graph,
    Graph6Error,
    GraphError,
    parse_graph6,
    vertex_connectivity_capped,
    write_graph6,
)
from .hamsearch import SearchBudget, Status, UNLIMITED, has_ham_path


def _g6(g: Graph) -> str:
    return write_graph6(g).decode("ascii")


def _budget(max_nodes: int | None) -> SearchBudget:
    return UNLIMITED if max_nodes is None else SearchBudget(max_nodes)


def _open_stream(source: str) -> TextIO:
    return sys.stdin if source == "-" else open(source, "r", encoding="ascii")


def _read_graphs(stream: TextIO) -> Iterator[tuple[int, Graph | None, str | None]]:
    """Yield (line number, graph, parse error) for each non-blank line."""
    for lineno, line in enumerate(stream, start=1):
        stripped = line.strip()
        if not stripped:
            continue
        try:
            yield lineno, parse_graph6(stripped), None
        except Graph6Error as exc:
            yield lineno, None, str(exc)


def _cmd_analyze(args: argparse.Namespace) -> int:
    budget = _budget(args.max_nodes)
    status = 0
    with _open_stream(args.input) as stream:
        for lineno, g, err in _read_graphs(stream):
            if g is None:
                print(f"line {lineno}: {err}", file=sys.stderr)
                status = 1
                continue
            record: dict[str, object] = {"id": lineno, "n": g.n}
            timings: dict[str, float] = {}
            t = time.perf_counter()
            record["connectivity"] = vertex_connectivity_capped(g, 3)
            timings["connectivity"] = round(time.perf_counter() - t, 6)
            t = time.perf_counter()
            r = has_ham_path(g, budget)
            timings["traceable"] = round(time.perf_counter() - t, 6)
            record["traceable"] = (
                None if r.status is Status.INDETERMINATE else r.is_yes)
            if args.ml:
                t = time.perf_counter()
                ml = min_leaf_number(g, budget)
                timings["ml"] = round(time.perf_counter() - t, 6)
                record["ml"] = ml.value
            if args.mu:
                t = time.perf_counter()
                mu = path_cover_number(g, budget)
                timings["mu"] = round(time.perf_counter() - t, 6)
                record["mu"] = mu.value
            record["timings"] = timings
            print(json.dumps(record), flush=True)
    return status


def _census_shard(lines: list[str], budget: SearchBudget):
    return nontraceable_census(lines, budget)


def _cmd_census(args: argparse.Namespace) -> int:
    budget = _budget(args.max_nodes)
    with _open_stream(args.input) as stream:
        lines = stream.readlines()
    if args.jobs > 1:
        # shards split by line ranges; per-order records merge by addition
        from concurrent.futures import ProcessPoolExecutor

        size = max(1, -(-len(lines) // args.jobs))
        shards = [lines[i:i + size] for i in range(0, len(lines), size)]
        merged: dict[int, object] = {}
        diagnostics: list[str] = []
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            for recs, diags in pool.map(
                    _census_shard, shards, [budget] * len(shards)):
                diagnostics.extend(diags)
                for rec in recs:
                    if rec.n in merged:
                        merged[rec.n].merge(rec)
                    else:
                        merged[rec.n] = rec
        records = sorted(merged.values(), key=lambda r: r.n)
    else:
        records, diagnostics = nontraceable_census(lines, budget)
    for msg in diagnostics:
        print(msg, file=sys.stderr)
    for rec in records:
        print(json.dumps({
            "n": rec.n, "conn2": rec.conn2, "conn3": rec.conn3,
            "total": rec.total, "indeterminate": rec.indeterminate,
        }))
    return 0


def _generated_degree23(nmax: int) -> Iterator[Graph]:
    from .generate import GENERATOR_MAX_DEG23, generate_degree23

    if nmax > GENERATOR_MAX_DEG23:
        raise GraphError(
            f"in-repo scan supports nmax <= {GENERATOR_MAX_DEG23}")
    for n in range(3, nmax + 1):
        batch: list[Graph] = []
        generate_degree23(n, batch.append)
        yield from batch


def _cmd_lemma_short(args: argparse.Namespace) -> int:
    budget = _budget(args.max_nodes)
    if args.nmax is not None:
        graphs: Iterable[Graph] = _generated_degree23(args.nmax)
        result = lemma_short_scan(graphs, budget=budget)
    else:
        with _open_stream(args.input) as stream:
            parsed: list[Graph] = []
            status = 0
            for lineno, g, err in _read_graphs(stream):
                if g is None:
                    print(f"line {lineno}: {err}", file=sys.stderr)
                    status = 1
                else:
                    parsed.append(g)
            if status:
                return status
        result = lemma_short_scan(parsed, budget=budget)
    print(json.dumps({
        "scanned": result.scanned,
        "hypotheses_failed": result.hypotheses_failed,
        "counterexamples": [
            _g6(g) for g in result.counterexamples],
        "indeterminate": [
            _g6(g) for g in result.indeterminate],
    }))
    return 1 if result.counterexamples or result.indeterminate else 0


_EXPANSION_HOSTS = {
    "k4": lambda: MultiGraph.from_graph(complete_graph(4)),
    "k33": lambda: MultiGraph.from_graph(complete_bipartite(3, 3)),
    "theta": theta_multigraph,
}


def _construct(family: str, params: list[str]) -> Graph:
    def one_int() -> int:
        if len(params) != 1:
            raise GraphError(f"{family} takes exactly one integer parameter")
        return int(params[0])

    if family == "cycle_petersen":
        return cycle_of_edge_deleted_petersen(one_int())
    if family == "jcell_ring":
        return jcell_ring(one_int())
    if family == "p_star_k4":
        count = one_int()
        if not 1 <= count <= 4:
            raise GraphError("p_star_k4 substitutes 1 to 4 vertices of K4")
        return substitute_p_star(complete_graph(4), list(range(count)))
    if family == "edge_expansion":
        if len(params) != 2:
            raise GraphError("edge_expansion takes <gadget> <host>")
        gadget, host = params
        if host not in _EXPANSION_HOSTS:
            raise GraphError(
                f"unknown host {host!r}; choose from "
                f"{sorted(_EXPANSION_HOSTS)}")
        return edge_expansion(_EXPANSION_HOSTS[host](), named_graph(gadget))
    if family == "gadget":
        if len(params) != 1:
            raise GraphError("gadget takes exactly one name parameter")
        return named_graph(params[0]).graph
    raise GraphError(f"unknown construction family {family!r}")


def _cmd_construct(args: argparse.Namespace) -> int:
    try:
        g = _construct(args.family, args.params)
    except (GraphError, ValueError) as exc:
        print(f"construct: {exc}", file=sys.stderr)
        return 2
    line = _g6(g)
    if args.output is None:
        print(line)
    else:
        with open(args.output, "w", encoding="ascii") as out:
            out.write(line + "\n")
    return 0


def _cmd_generate(args: argparse.Namespace) -> int:
    def sink(g: Graph) -> None:
        print(_g6(g))

    try:
        count = generate_cubic(args.n, args.min_conn, sink)
    except GraphError as exc:
        print(f"generate: {exc}", file=sys.stderr)
        return 2
    print(f"{count} graphs", file=sys.stderr)
    return 0


def _cmd_verify_paper(args: argparse.Namespace) -> int:
    checks = verify_paper_artifacts(_budget(args.max_nodes))
    failed = 0
    for c in checks:
        if c.ok:
            print(f"ok   {c.fixture}: {c.name}")
        else:
            failed += 1
            print(f"FAIL {c.fixture}: {c.name} "
                  f"(expected {c.expected!r}, got {c.actual!r})")
    print(f"{len(checks)} checks, {failed} failed")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cubicml",
        description="minimum leaf number and path cover toolkit "
                    "for cubic graphs")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="per-graph verdicts for a "
                                       "graph6 stream ('-' for stdin)")
    p.add_argument("input", help="graph6 file, or - for stdin")
    p.add_argument("--ml", action="store_true",
                   help="also compute the minimum leaf number")
    p.add_argument("--mu", action="store_true",
                   help="also compute the path cover number")
    p.add_argument("--max-nodes", type=int, default=None,
                   help="search node budget per query (default unlimited)")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("census", help="non-traceable census of a "
                                      "graph6 stream")
    p.add_argument("input", help="graph6 file, or - for stdin")
    p.add_argument("--jobs", type=int, default=1,
                   help="process the stream in N parallel shards")
    p.add_argument("--max-nodes", type=int, default=None)
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("lemma-short",
                       help="scan for graphs meeting the degree-2-start "
                            "hypotheses with no such hamiltonian path")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--nmax", type=int, default=None,
                       help="scan all in-repo generated graphs up to "
                            "this order")
    group.add_argument("input", nargs="?", default=None,
                       help="graph6 file, or - for stdin")
    p.add_argument("--max-nodes", type=int, default=None)
    p.set_defaults(func=_cmd_lemma_short)

    p = sub.add_parser("construct", help="emit a construction as graph6")
    p.add_argument("family",
                   choices=["cycle_petersen", "jcell_ring", "p_star_k4",
                            "edge_expansion", "gadget"])
    p.add_argument("params", nargs="*",
                   help="family parameters, e.g. a ring length, or "
                        f"a gadget name from {sorted(GADGET_NAMES)}")
    p.add_argument("-o", "--output", default=None,
                   help="write to a file instead of stdout")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("generate", help="emit all connected cubic graphs "
                                        "on n vertices, one per class")
    p.add_argument("n", type=int)
    p.add_argument("--min-conn", type=int, choices=[1, 2, 3], default=1)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("verify-paper",
                       help="re-verify every embedded fixture")
    p.add_argument("--max-nodes", type=int, default=None)
    p.set_defaults(func=_cmd_verify_paper)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"cubicml: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
