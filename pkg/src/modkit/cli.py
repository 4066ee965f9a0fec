"""``modkit`` command line: generate, score, optimise, certify and tabulate."""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import os
import sys

from . import experiment
from .bounds import closed_forms, graph_bounds, random_regular_bounds
from .errors import DomainError, ModkitError, NotUnicyclicError
from .exact import brute_force_optimum
from .generators import FAMILY_NAMES, FamilySpec, build, make_rng, random_regular, random_regular_multigraph
from .graph import Partition, read_edgelist, read_partition, score, write_edgelist, write_partition
from .optimizers import METHODS, OptimizerConfig
from .treelike import (
    cut_partition,
    decompose_unicyclic,
    read_td,
    spanning_structure_edges,
)

EXIT_DOMAIN = 2
EXIT_IO = 3


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("MODKIT_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise DomainError(f"MODKIT_THREADS must be an integer, got {env!r}") from None
    return 1


@contextlib.contextmanager
def _output(args):
    if args.out in (None, "-"):
        yield sys.stdout
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _load_graph(path):
    if path in (None, "-"):
        return read_edgelist(sys.stdin)
    return read_edgelist(path)


def _emit_record(args, record: dict, fh) -> None:
    """One flat record as JSON or a two-line CSV."""
    if args.format == "json":
        json.dump(record, fh, indent=2)
        fh.write("\n")
        return
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(record.keys())
    writer.writerow(_fmt(v) for v in record.values())


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.12g}"
    return v


def _score_record(result, part) -> dict:
    return {"q": result.q, "q_E": result.q_E, "q_D": result.q_D, "parts": part.k}


def _write_side_file(path, writer) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer(fh)


# ---------------------------------------------------------------------------
# commands


def cmd_gen(args) -> None:
    params = [int(p) for p in args.params]
    if args.family in ("random", "multigraph"):
        if len(params) != 2:
            raise DomainError(f"{args.family} takes n and r")
        rng = make_rng(args.seed)
        if args.family == "random":
            graph = random_regular(params[0], params[1], rng, method=args.method)
        else:
            graph = random_regular_multigraph(params[0], params[1], rng)
    else:
        graph = build(FamilySpec(args.family, tuple(params)))
    with _output(args) as fh:
        write_edgelist(graph, fh)


def cmd_score(args) -> None:
    graph = _load_graph(args.graph)
    part = Partition(graph, read_partition(args.partition, graph.n))
    with _output(args) as fh:
        _emit_record(args, _score_record(score(graph, part), part), fh)


def cmd_optimize(args) -> None:
    graph = _load_graph(args.graph)
    cfg = OptimizerConfig(seed=args.seed, max_sweeps=args.max_sweeps)
    trace: list | None = [] if args.trace else None
    result, part = METHODS[args.method](graph, cfg, trace)
    if args.partition:
        _write_side_file(args.partition, lambda fh: write_partition(part, fh))
    if args.trace:

        def dump(fh):
            fh.write("step,sweep,q\n")
            for step, (sweep, q) in enumerate(trace):
                fh.write(f"{step},{sweep},{q:.12g}\n")
            fh.write(f"final,,{result.q:.12g}\n")

        _write_side_file(args.trace, dump)
    record = {"method": args.method, "seed": args.seed, **_score_record(result, part)}
    with _output(args) as fh:
        _emit_record(args, record, fh)


def cmd_brute(args) -> None:
    graph = _load_graph(args.graph)
    result, part = brute_force_optimum(graph, connected_parts_only=args.connected, max_n=args.max_n)
    if args.partition:
        _write_side_file(args.partition, lambda fh: write_partition(part, fh))
    with _output(args) as fh:
        _emit_record(args, _score_record(result, part), fh)


def cmd_bounds(args) -> None:
    if args.n is not None or args.r is not None:
        if args.n is None or args.r is None:
            raise DomainError("--n and --r go together")
        report = closed_forms(args.n, args.r)
        report.extend(random_regular_bounds(args.r, args.n, args.grid_size))
    else:
        graph = _load_graph(args.graph)
        report = graph_bounds(graph, args.grid_size, include_random=args.random)
    with _output(args) as fh:
        if args.format == "json":
            json.dump({"entries": report.rows(), "conflicts": report.conflicts()}, fh, indent=2)
            fh.write("\n")
        else:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["name", "value", "kind", "side", "scope"])
            for e in report.entries:
                writer.writerow([e.name, f"{e.value:.12g}", e.kind, e.side, e.scope])


def _parse_indices(text: str | None) -> list[int]:
    if not text:
        return []
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise DomainError(f"edge indices must be integers, got {text!r}") from None


def cmd_certify(args) -> None:
    graph = _load_graph(args.graph)
    if args.td:
        td, _ = read_td(args.td)
        extra = _parse_indices(args.extra)
        if args.extra_file:
            with open(args.extra_file, encoding="utf-8") as fh:
                extra += _parse_indices(fh.read())
    else:
        try:
            extra = []
            td = decompose_unicyclic(graph)
        except NotUnicyclicError:
            extra = spanning_structure_edges(graph)
            td = decompose_unicyclic(graph.without_edges(extra))
    cert = cut_partition(graph, extra, td, args.width)
    if args.partition:
        _write_side_file(args.partition, lambda fh: write_partition(cert.partition, fh))
    record = {
        "claimed_bound": cert.claimed_bound,
        "usable_bound": cert.usable_bound,
        "q": cert.score.q,
        "q_E": cert.score.q_E,
        "q_D": cert.score.q_D,
        "parts": cert.partition.k,
        "holds": cert.holds,
        "width": td.width if args.width is None else args.width,
        "extra_edges": len(set(extra)),
        "threshold": cert.threshold,
        "final_threshold": cert.final_threshold,
        "steps": len(cert.steps),
        "edges_cut": cert.edges_cut,
        "trivial": cert.trivial,
    }
    with _output(args) as fh:
        _emit_record(args, record, fh)


def cmd_table1(args) -> None:
    n = experiment.PAPER_N if args.paper_scale else args.n
    spec = experiment.ExperimentSpec(
        rs=args.r,
        n=n,
        reps=args.reps,
        methods=tuple(args.methods),
        seed=args.seed,
        threads=_threads(args),
        grid_size=args.grid_size,
    )
    rows = experiment.run(spec)
    if args.format == "json":
        payload = [
            {
                "r": row.r,
                "method": row.method,
                "mean_q": row.mean_q,
                "qs": row.qs,
                "expansion_upper": row.upper,
                "lower_bound": row.lower,
                "seconds": row.seconds if args.timing else None,
            }
            for row in rows
        ]
        with _output(args) as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
        return
    with _output(args) as fh:
        experiment.write_csv(rows, fh, timing=args.timing)
    if args.out not in (None, "-"):
        print(experiment.format_table(rows))


# ---------------------------------------------------------------------------
# parser


def _r_list(text: str) -> list[int]:
    out = []
    for chunk in text.split(","):
        if ".." in chunk:
            lo, hi = chunk.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        elif chunk:
            out.append(int(chunk))
    return out


def _global_flags(p: argparse.ArgumentParser, suppress: bool) -> None:
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--seed", type=int, default=default(0), help="master seed (default 0)")
    p.add_argument("--format", choices=("csv", "json"), default=default("csv"))
    p.add_argument("--out", default=default(None), help="output path (default stdout)")
    p.add_argument(
        "--threads", type=int, default=default(None), help="worker processes; falls back to MODKIT_THREADS"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="modkit", description="Modularity of graphs: exact, heuristic and bounds.")
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="write a graph as an edge list")
    p.add_argument("family", choices=sorted(FAMILY_NAMES) + ["random", "multigraph"])
    p.add_argument("params", nargs="*", help="family parameters, e.g. 'random 100 3'")
    p.add_argument("--method", default="auto", choices=("auto", "pairing", "steger-wormald"))
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("score", parents=[common], help="modularity of a given partition")
    p.add_argument("partition")
    p.add_argument("graph", nargs="?", help="edge list (default stdin)")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("optimize", parents=[common], help="run a heuristic optimiser")
    p.add_argument("graph", nargs="?")
    p.add_argument("--method", choices=sorted(METHODS), default="louvain")
    p.add_argument("--max-sweeps", type=int, default=100)
    p.add_argument("--partition", help="write the partition here")
    p.add_argument("--trace", help="write accepted-move trace CSV here")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("brute", parents=[common], help="exact optimum by enumeration")
    p.add_argument("graph", nargs="?")
    p.add_argument("--connected", action="store_true", help="only partitions with connected parts")
    p.add_argument("--max-n", type=int, default=None)
    p.add_argument("--partition")
    p.set_defaults(func=cmd_brute)

    p = sub.add_parser("bounds", parents=[common], help="bounds for a graph or for (n, r)")
    p.add_argument("graph", nargs="?")
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--random", action="store_true", help="add random-regular-graph entries")
    p.add_argument("--grid-size", type=int, default=1000)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("certify", parents=[common], help="certified lower bound by bag cutting")
    p.add_argument("graph", nargs="?")
    p.add_argument("--td", help="tree decomposition of the graph minus the extra edges (.td)")
    p.add_argument("--extra", help="comma-separated indices of extra edges")
    p.add_argument("--extra-file", help="file of extra edge indices")
    p.add_argument("--width", type=int, default=None)
    p.add_argument("--partition")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("table1", parents=[common], help="random regular graph experiment")
    p.add_argument("--r", type=_r_list, default=list(range(3, 13)), help="e.g. 3..12 or 3,4,5")
    p.add_argument("--n", type=int, default=experiment.DESK_N)
    p.add_argument("--reps", type=int, default=experiment.DEFAULT_REPS)
    p.add_argument("--methods", nargs="+", choices=sorted(METHODS), default=["louvain", "reshuffle"])
    p.add_argument("--paper-scale", action="store_true", help=f"use n={experiment.PAPER_N}")
    p.add_argument("--timing", action="store_true", help="fill the seconds column")
    p.add_argument("--grid-size", type=int, default=1000)
    p.set_defaults(func=cmd_table1)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except (DomainError, ModkitError) as exc:
        print(f"modkit: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"modkit: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return 0


if __name__ == "__main__":
    sys.exit(main())
