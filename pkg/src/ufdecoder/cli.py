"""Command line entry point: ``ufdecoder {run,trial,timing,crossing,ackermann}``."""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from decimal import Decimal, InvalidOperation

import numpy as np

from . import harness
from .cluster import Strategy, inverse_ackermann, validate
from .homology import judge
from .lattice import build
from .noise import NoiseParams, sample
from .peeling import peel


def parse_grid(text: str) -> list[float]:
    """``0.1,0.2`` or ``start:stop:step`` with ``stop`` included."""
    try:
        if ":" in text:
            start, stop, step = (Decimal(part) for part in text.split(":"))
            if step <= 0 or stop < start:
                raise argparse.ArgumentTypeError(f"bad range {text!r}")
            count = int((stop - start) / step)
            values = [start + i * step for i in range(count + 1)]
        else:
            values = [Decimal(part) for part in text.split(",") if part]
    except (InvalidOperation, ValueError) as exc:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}") from exc
    if not values:
        raise argparse.ArgumentTypeError("empty grid")
    return [float(v) for v in values]


def parse_sizes(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}") from exc


def _common(p: argparse.ArgumentParser, sizes=True) -> None:
    p.add_argument("--lattice", choices=["2d", "3d"], default="2d")
    if sizes:
        p.add_argument("--sizes", type=parse_sizes, help="comma separated L values (default depends on --lattice)")
    p.add_argument("--strategy", choices=["uniform", "weighted"], default="weighted")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ufdecoder", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true", help="log every grid point")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="Monte Carlo sweep, one CSV row per (L, p_e, p_z)")
    _common(run)
    run.add_argument("--pe", type=parse_grid, default=[0.0], help="erasure rates: list or start:stop:step")
    run.add_argument("--pz", type=parse_grid, help="Pauli-Z rates (default: grid around the threshold)")
    stop = run.add_mutually_exclusive_group()
    stop.add_argument("--trials", type=int)
    stop.add_argument("--min-failures", type=int, help="sample each point until this many failures")
    run.add_argument("--max-trials", type=int, help="cap for --min-failures")
    run.add_argument("--threads", type=int, default=1)
    run.add_argument("--out", help="CSV path (default: standard output)")

    trial = sub.add_parser("trial", help="one seeded trial with a step by step trace")
    _common(trial, sizes=False)
    trial.add_argument("--size", "-L", type=int, default=8)
    trial.add_argument("--pe", type=float, default=0.0)
    trial.add_argument("--pz", type=float, default=0.05)
    trial.add_argument("--trial", type=int, default=0, help="trial index within the seed's streams")

    timing = sub.add_parser("timing", help="mean decode time against qubit count")
    _common(timing)
    timing.add_argument("--pe", type=float, default=0.1)
    timing.add_argument("--pz", type=float, default=0.02)
    timing.add_argument("--trials", type=int, default=10_000)
    timing.add_argument("--out", help="CSV path (default: standard output)")

    crossing = sub.add_parser("crossing", help="crossing point of the failure curves of two lattice sizes")
    crossing.add_argument("csv_a")
    crossing.add_argument("csv_b", nargs="?", help="second file (default: same as the first)")
    crossing.add_argument("--sizes", type=parse_sizes, help="the two L values to compare")
    crossing.add_argument("--scan", choices=["p_z", "p_e"], default="p_z")

    ack = sub.add_parser("ackermann", help="print the inverse Ackermann function")
    ack.add_argument("n", nargs="+", help="integers, or 2^k")
    return parser


def _parse_int(text: str) -> int:
    if text.startswith("2^"):
        return 1 << int(text[2:])
    return int(text)


def cmd_run(args) -> int:
    cfg = harness.ExperimentConfig(
        lattice=args.lattice,
        sizes=args.sizes or harness.DEFAULT_SIZES[args.lattice],
        p_e=args.pe,
        p_z=args.pz or harness.DEFAULT_PZ[args.lattice],
        trials=None if args.min_failures else (args.trials or 10_000),
        min_failures=args.min_failures,
        strategy=args.strategy,
        seed=args.seed,
        out=args.out,
        threads=args.threads,
        max_trials=args.max_trials,
    )
    summary = harness.run_experiment(cfg)
    if args.out is None:
        w = csv.writer(sys.stdout)
        w.writerow(harness.CSV_HEADER)
        for row in summary.rows:
            w.writerow(row.as_csv())
    return 0


def _edges(mask) -> str:
    idx = np.flatnonzero(mask)
    return f"{len(idx)} {idx.tolist()}"


def cmd_trial(args) -> int:
    graph = build(args.lattice, args.size)
    params = NoiseParams(args.pe, args.pz)
    errors = sample(graph, params, (args.seed, args.trial))
    print(f"lattice {args.lattice} L={graph.L}: {graph.vertex_count} vertices, {graph.edge_count} edges")
    print(f"seed {args.seed} trial {args.trial} p_e={args.pe} p_z={args.pz} strategy {args.strategy}")
    print("erasure   ", _edges(errors.erasure))
    print("pauli_z   ", _edges(errors.pauli_z))
    print("syndrome  ", _edges(errors.syndrome))
    result = validate(graph, errors.erasure, errors.syndrome, Strategy(args.strategy))
    print("validated ", _edges(result.modified_erasure))
    print(f"growth rounds {result.growth_rounds}, unions {result.union_calls}, finds {result.find_calls}")
    correction = peel(graph, result.modified_erasure, errors.syndrome)
    print("correction", _edges(correction.edges))
    verdict = judge(graph, errors.pauli_z ^ correction.edges)
    print(f"class bits {verdict.class_bits}: {'FAILURE' if verdict.failed else 'success'}")
    return 0


def cmd_timing(args) -> int:
    sizes = args.sizes or [8, 16, 32, 64]
    rows = harness.timing_sweep(sizes, NoiseParams(args.pe, args.pz), args.trials, args.lattice, args.strategy, args.seed)
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.writer(out)
        w.writerow(["L", "n", "mean_decode_ns"])
        for r in rows:
            w.writerow([r.L, r.n, repr(r.mean_decode_ns)])
    finally:
        if args.out:
            out.close()
    if len(rows) >= 2:
        print(f"log-log slope {harness.loglog_slope(rows):.3f}", file=sys.stderr)
    return 0


def cmd_crossing(args) -> int:
    rows = harness.ExperimentSummary.read_csv(args.csv_a).rows
    if args.csv_b:
        rows = rows + harness.ExperimentSummary.read_csv(args.csv_b).rows
    sizes = args.sizes or sorted({r.L for r in rows})
    if len(sizes) != 2:
        print(f"need exactly two lattice sizes, found {sizes}; pass --sizes", file=sys.stderr)
        return 2
    a = [r for r in rows if r.L == sizes[0]]
    b = [r for r in rows if r.L == sizes[1]]
    try:
        c = harness.estimate_crossing(a, b, args.scan)
    except harness.NoCrossingError as exc:
        print(f"no crossing: {exc}", file=sys.stderr)
        return 1
    print(f"{c.p:.6f} in [{c.bracket[0]}, {c.bracket[1]}]")
    return 0


def cmd_ackermann(args) -> int:
    for text in args.n:
        n = _parse_int(text)
        print(f"{text}\t{inverse_ackermann(n)}")
    return 0


COMMANDS = {"run": cmd_run, "trial": cmd_trial, "timing": cmd_timing, "crossing": cmd_crossing,
            "ackermann": cmd_ackermann}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"ufdecoder: error: {exc}", file=sys.stderr)
        return 2
