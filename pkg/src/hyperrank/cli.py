"""Command-line pipeline: ingest, validate, rank, laplacian, simulate.

Standard output carries only data (TSV or JSON); every diagnostic goes to
standard error. Exit status is 0 exactly when the requested artifact was
produced and all checked invariants held.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from .core import DirectedHypergraph, prune_to_core
from .errors import (DanglingVertexError, HyperrankError, IngestError,
                     NoConvergenceError, ValidationError)
from .ingest import (SPLIT, REVERSIBLE_POLICIES, IngestReport, load_canonical,
                     parse_reactions_text, reactions_to_hypergraph,
                     save_canonical)
from .laplacian import build_laplacians, spectral_report
from .walk import (L1, NORMALIZATIONS, PowerOptions, build_transition,
                   pagerank_power, simulate_walk, stationary_dense_oracle,
                   top_k, tv_distance)


def _note(message: str) -> None:
    print(message, file=sys.stderr)


def _fmt(value: float, precision: str) -> str:
    return f"{value:.4f}" if precision == "4" else repr(float(value))


def _write_output(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _read_input(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load(ns) -> DirectedHypergraph:
    text = _read_input(ns.input)
    if ns.format == "reactions":
        records = parse_reactions_text(text)
        hg, report = reactions_to_hypergraph(records, ns.reversible)
        _log_ingest(report)
        return hg
    return load_canonical(text)


def _log_ingest(report: IngestReport) -> None:
    _note(f"records: {report.records}")
    _note(f"vertices: {report.vertices}")
    _note(f"arcs: {report.arcs}")
    _note(f"reversible records: {report.reversible_records} "
          f"(split into {report.split_arcs} arcs)")
    _note(f"collapsed duplicate mentions: {report.collapsed_duplicates}")
    for rid, reason in report.dropped:
        _note(f"dropped record {rid}: {reason}")


def _maybe_prune(ns, hg: DirectedHypergraph) -> DirectedHypergraph:
    if not getattr(ns, "prune", False):
        return hg
    pruned, events = prune_to_core(hg)
    for ev in events:
        _note(f"prune round {ev.round}: removed {ev.kind} {ev.identifier} ({ev.reason})")
    _note(f"pruned to {pruned.n_vertices} vertices, {pruned.n_arcs} arcs")
    return pruned


def _power_options(ns, normalization: str | None = None) -> PowerOptions:
    return PowerOptions(damping=ns.damping, tolerance=ns.tol,
                        max_iterations=ns.max_iters,
                        normalization=normalization or ns.norm)


def cmd_ingest(ns) -> int:
    text = _read_input(ns.input)
    if ns.format == "json":
        hg = load_canonical(text)
        report = IngestReport(records=hg.n_arcs, vertices=hg.n_vertices,
                              arcs=hg.n_arcs)
    else:
        records = parse_reactions_text(text)
        hg, report = reactions_to_hypergraph(records, ns.reversible)
    _log_ingest(report)
    _write_output(save_canonical(hg), ns.output)
    return 0


def cmd_validate(ns) -> int:
    text = _read_input(ns.input)
    try:
        if ns.format == "reactions":
            records = parse_reactions_text(text)
            hg, _ = reactions_to_hypergraph(records, ns.reversible)
        else:
            hg = load_canonical(text)
    except ValidationError as exc:
        for violation in exc.report.violations:
            print(str(violation))
        return 1
    print("ok")
    _note(f"{hg.n_vertices} vertices, {hg.n_arcs} arcs")
    return 0


def cmd_rank(ns) -> int:
    hg = _maybe_prune(ns, _load(ns))
    P = build_transition(hg)
    rank = pagerank_power(P, _power_options(ns))
    rows = top_k(rank, ns.top, round_to=4 if ns.precision == "4" else None)
    lines = ["rank\tvertex\tvalue"]
    lines += [f"{i}\t{vertex}\t{_fmt(value, ns.precision)}"
              for i, (vertex, value) in enumerate(rows, start=1)]
    _write_output("\n".join(lines) + "\n", ns.output)
    return 0


def cmd_laplacian(ns) -> int:
    hg = _maybe_prune(ns, _load(ns))
    P = build_transition(hg)
    pi = pagerank_power(P, _power_options(ns, normalization=L1))
    pair = build_laplacians(P, pi)
    matrix = pair.unnormalized if ns.kind == "unnormalized" else pair.symmetric_normalized
    report = spectral_report(pair)
    for line in report.lines():
        _note(line)
    body = "\n".join("\t".join(repr(float(x)) for x in row) for row in matrix)
    _write_output(body + "\n", ns.output)
    if not report.within():
        _note("laplacian invariants exceeded tolerance")
        return 1
    return 0


def cmd_simulate(ns) -> int:
    hg = _maybe_prune(ns, _load(ns))
    start = ns.start if ns.start is not None else hg.vertices[0]
    empirical = simulate_walk(hg, start, ns.steps, ns.seed)
    P = build_transition(hg)
    try:
        pi = pagerank_power(P, _power_options(ns, normalization=L1))
    except NoConvergenceError:
        _note("power iteration did not converge; comparing against the dense solve")
        pi = stationary_dense_oracle(P)
    lines = [f"{v}\t{_fmt(freq, ns.precision)}" for v, freq in empirical.items()]
    lines.append(f"# tv_distance\t{tv_distance(empirical, pi):.6f}")
    _write_output("\n".join(lines) + "\n", ns.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperrank",
        description="Random-walk ranking and Laplacians for directed hypergraphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, default_format):
        p.add_argument("input", help="path to the input network file")
        p.add_argument("--format", choices=("reactions", "json"),
                       default=default_format,
                       help=f"input format (default: {default_format})")
        p.add_argument("--reversible", choices=REVERSIBLE_POLICIES, default=SPLIT,
                       help="how reversible reactions become arcs (default: split)")
        p.add_argument("-o", "--output", default=None, metavar="PATH",
                       help="write data there instead of standard output")

    def add_rank_flags(p):
        p.add_argument("--prune", action="store_true",
                       help="prune to the positive-degree core first")
        p.add_argument("--damping", type=float, default=1.0, metavar="F")
        p.add_argument("--tol", type=float, default=1e-10, metavar="F")
        p.add_argument("--max-iters", type=int, default=10000, metavar="N")
        p.add_argument("--norm", choices=NORMALIZATIONS, default=L1)
        p.add_argument("--precision", choices=("4", "full"), default="4")

    p = sub.add_parser("ingest", help="parse a network and emit canonical JSON")
    add_common(p, "reactions")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("validate", help="check a network against all invariants")
    add_common(p, "json")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("rank", help="rank vertices by the stationary walk distribution")
    add_common(p, "json")
    add_rank_flags(p)
    p.add_argument("--top", type=int, default=10, metavar="K")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("laplacian", help="emit a walk Laplacian as TSV")
    add_common(p, "json")
    add_rank_flags(p)
    p.add_argument("--kind", choices=("unnormalized", "symmetric"),
                   default="unnormalized")
    p.set_defaults(func=cmd_laplacian)

    p = sub.add_parser("simulate", help="Monte Carlo walk and its empirical distribution")
    add_common(p, "json")
    add_rank_flags(p)
    p.add_argument("--steps", type=int, default=1000000, metavar="N")
    p.add_argument("--seed", type=int, default=0, metavar="N")
    p.add_argument("--start", default=None, metavar="VERTEX",
                   help="start vertex (default: first in canonical order)")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, format="%(levelname)s %(message)s")
    ns = build_parser().parse_args(argv)
    try:
        return ns.func(ns)
    except NoConvergenceError as exc:
        _note(f"hyperrank: {exc}")
        _note("hint: try --damping 0.85")
        return 1
    except DanglingVertexError as exc:
        _note(f"hyperrank: {exc}")
        _note("hint: run with --prune")
        return 1
    except (ValidationError, IngestError, HyperrankError, ValueError) as exc:
        _note(f"hyperrank: {exc}")
        return 1
    except OSError as exc:
        _note(f"hyperrank: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
