"""Command line interface.

Subcommands: gen, roll, round, solve, reduce, verify. Every command is
deterministic given --seed; generation, rounding, and solver randomness
run on named sub-streams derived from that one seed. An optional config
file supplies "key = value" defaults for any flag; explicit flags win.
Exit status is 0 only when nothing failed.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from .core import (
    GraphFormatError,
    ObjectiveKind,
    format_weight,
    read_graph,
    write_graph,
)
from .harness import (
    CompleteSigned,
    GenSpec,
    PlantedPartition,
    UniformRational,
    generate,
    verify_all,
)
from .jsonutil import frac_to_str
from .reduction import ReductionConfig, aggregate_to_dict, run_trials
from .roll import build_roll, valid_roll_size
from .rounding import RoundingParams, round_graph
from .solvers import SolverKind, SolverSpec, run_solver
from .streams import derive_seed


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}")


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="root seed for all randomness")
    common.add_argument("--out", default=None, help="output path")
    common.add_argument("--format", choices=("json", "csv"), default="json",
                        help="report format where applicable")
    common.add_argument("--config", default=None,
                        help="file of 'key = value' defaults; flags override")
    return common


def build_parser() -> "tuple[argparse.ArgumentParser, dict]":
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="rollclust",
        description="Correlation clustering with rolls, rounding, and exact accounting",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    subparsers = {}

    p = sub.add_parser("gen", parents=[common], help="generate a random instance")
    p.add_argument("--n", type=int, default=None, help="node count (required here or in --config)")
    p.add_argument("--model", choices=("planted", "uniform", "complete"), default="uniform")
    p.add_argument("--k", type=int, default=2, help="planted cluster count")
    p.add_argument("--flip-prob", type=float, default=0.0)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--denominator-bound", type=int, default=6)
    p.add_argument("--plus-prob", type=float, default=0.5)
    subparsers["gen"] = p

    p = sub.add_parser("roll", parents=[common], help="roll a graph into a grid")
    p.add_argument("graph", help="input graph file")
    p.add_argument("--rows", type=int, default=None, help="explicit row count N")
    p.add_argument("--t", type=int, default=None, help="roll size parameter")
    subparsers["roll"] = p

    p = sub.add_parser("round", parents=[common], help="randomly round weights")
    p.add_argument("graph")
    p.add_argument("--alpha", type=_fraction, default=Fraction(1))
    p.add_argument("--beta", type=_fraction, default=Fraction(1))
    subparsers["round"] = p

    p = sub.add_parser("solve", parents=[common], help="cluster a graph")
    p.add_argument("graph")
    p.add_argument("--solver", choices=[k.value for k in SolverKind], default="exact")
    p.add_argument("--objective", choices=("max", "min"), default="max")
    p.add_argument("--budget", type=int, default=1000)
    subparsers["solve"] = p

    p = sub.add_parser("reduce", parents=[common], help="run the roll pipeline trials")
    p.add_argument("graph")
    p.add_argument("--objective", choices=("max", "min"), default="max")
    p.add_argument("--t", type=int, default=0)
    p.add_argument("--alpha", type=_fraction, default=Fraction(1))
    p.add_argument("--beta", type=_fraction, default=Fraction(1))
    p.add_argument("--epsilon", type=_fraction, default=Fraction(1, 20))
    p.add_argument("--lambda", dest="lambda_ref", type=_fraction, default=Fraction(1))
    p.add_argument("--solver", choices=[k.value for k in SolverKind], default="exact")
    p.add_argument("--budget", type=int, default=1000)
    p.add_argument("--trials", type=int, default=20)
    subparsers["reduce"] = p

    p = sub.add_parser("verify", parents=[common], help="run all invariant suites")
    p.add_argument("--sizes", default="3,4,5", help="comma-separated base sizes")
    p.add_argument("--ts", default="0,1", help="comma-separated roll parameters")
    p.add_argument("--instances", type=int, default=5)
    subparsers["verify"] = p

    return parser, subparsers


def parse_config_file(path: str) -> "dict[str, str]":
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise SystemExit(f"{path}:{lineno}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            values[key.replace("-", "_")] = value
    return values


def _apply_config(argv, subparsers) -> None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", default=None)
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    values = parse_config_file(known.config)
    for p in subparsers.values():
        dests = {action.dest for action in p._actions}
        applicable = {k: v for k, v in values.items() if k in dests}
        if applicable:
            p.set_defaults(**applicable)


def _write_json(path, payload) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def cmd_gen(args) -> int:
    if args.n is None:
        raise SystemExit("gen: --n is required (flag or config file)")
    if args.model == "planted":
        model = PlantedPartition(clusters=args.k, flip_prob=args.flip_prob)
    elif args.model == "uniform":
        model = UniformRational(density=args.density, denominator_bound=args.denominator_bound)
    else:
        model = CompleteSigned(plus_prob=args.plus_prob)
    g = generate(GenSpec(n=args.n, model=model, seed=derive_seed(args.seed, "gen")))
    if args.out:
        write_graph(g, args.out)
    else:
        from .core import format_graph

        sys.stdout.write(format_graph(g))
    return 0


def cmd_roll(args) -> int:
    g = read_graph(args.graph)
    if (args.rows is None) == (args.t is None):
        raise SystemExit("roll: give exactly one of --rows or --t")
    rows = args.rows if args.rows is not None else valid_roll_size(g.n, args.t)
    rolled = build_roll(g, rows)
    if not args.out:
        raise SystemExit("roll: --out is required (a sidecar file is written next to it)")
    write_graph(rolled.graph, args.out)
    sidecar = {
        "n": g.n,
        "rows": rows,
        "active": [[d.start_row, d.slope] for d in rolled.active],
    }
    _write_json(args.out + ".duplicates.json", sidecar)
    return 0


def cmd_round(args) -> int:
    g = read_graph(args.graph)
    params = RoundingParams(
        alpha=args.alpha, beta=args.beta, seed=derive_seed(args.seed, "round")
    )
    out = round_graph(g, params)
    if not args.out:
        raise SystemExit("round: --out is required (a sidecar file is written next to it)")
    write_graph(out.after, args.out)
    by_class: dict = {}
    for u, v, w in g.edges():
        count, total = by_class.get(w, (0, Fraction(0)))
        by_class[w] = (count + 1, total + out.after.weight(u, v))
    sidecar = {
        "alpha": frac_to_str(params.alpha),
        "beta": frac_to_str(params.beta),
        "classes": [
            {
                "weight": frac_to_str(w),
                "count": count,
                "empirical_mean": frac_to_str(total / count),
            }
            for w, (count, total) in sorted(by_class.items())
        ],
    }
    _write_json(args.out + ".classes.json", sidecar)
    return 0


def cmd_solve(args) -> int:
    g = read_graph(args.graph)
    objective = ObjectiveKind.parse(args.objective)
    spec = SolverSpec(
        kind=SolverKind.parse(args.solver),
        seed=derive_seed(args.seed, "solver"),
        budget=args.budget,
    )
    res = run_solver(g, objective, spec)
    print(" ".join(str(lbl) for lbl in res.clustering.labels))
    print(format_weight(res.value))
    if args.out:
        _write_json(
            args.out,
            {
                "labels": list(res.clustering.labels),
                "value": frac_to_str(res.value),
                "objective": objective.value,
                "solver": args.solver,
            },
        )
    return 0


def _ratio_histogram(ratios, bins: int = 10):
    """Equal-width float bins over the observed exact ratios."""
    present = [float(r) for r in ratios if r is not None]
    if not present:
        return []
    lo, hi = min(present), max(present)
    if lo == hi:
        return [(lo, hi, len(present))]
    width = (hi - lo) / bins
    rows = []
    for b in range(bins):
        left = lo + b * width
        right = hi if b == bins - 1 else lo + (b + 1) * width
        count = sum(1 for x in present if left <= x < right or (b == bins - 1 and x == hi))
        rows.append((left, right, count))
    return rows


def cmd_reduce(args) -> int:
    g = read_graph(args.graph)
    cfg = ReductionConfig(
        objective=ObjectiveKind.parse(args.objective),
        t=args.t,
        rounding=RoundingParams(
            alpha=args.alpha, beta=args.beta, seed=derive_seed(args.seed, "round")
        ),
        solver=SolverSpec(
            kind=SolverKind.parse(args.solver),
            seed=derive_seed(args.seed, "solver"),
            budget=args.budget,
        ),
        epsilon=args.epsilon,
        lambda_ref=args.lambda_ref,
    )
    agg = run_trials(g, cfg, args.trials)
    out = args.out or "report.json"
    _write_json(out, aggregate_to_dict(agg))
    if args.format == "csv":
        with open(out + ".csv", "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["bin_lo", "bin_hi", "count"])
            for left, right, count in _ratio_histogram(agg.ratios):
                writer.writerow([f"{left:.6f}", f"{right:.6f}", count])
    print(f"trials={agg.trials} opt={format_weight(agg.opt_value)} "
          f"bad_event_freq={format_weight(agg.bad_event_freq)}")
    return 0


def cmd_verify(args) -> int:
    sizes = tuple(int(x) for x in args.sizes.split(",") if x)
    ts = tuple(int(x) for x in args.ts.split(",") if x)
    report = verify_all(seed=args.seed, sizes=sizes, ts=ts, instances=args.instances)
    for name, check in sorted(report.checks.items()):
        status = "ok" if check.failures == 0 else f"FAILED ({check.failures})"
        print(f"{name}: {check.instances_run} instances, {status}")
        if check.failures and check.worst_case_detail:
            print(f"  worst case: {check.worst_case_detail}")
    if args.out:
        if args.format == "csv":
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                writer = csv.writer(fh)
                writer.writerow(["check", "instances_run", "failures", "worst_case_detail"])
                for name, check in sorted(report.checks.items()):
                    writer.writerow(
                        [name, check.instances_run, check.failures, check.worst_case_detail]
                    )
        else:
            _write_json(args.out, report.to_dict())
    return 0 if report.ok else 1


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, subparsers = build_parser()
    _apply_config(argv, subparsers)
    args = parser.parse_args(argv)
    handlers = {
        "gen": cmd_gen,
        "roll": cmd_roll,
        "round": cmd_round,
        "solve": cmd_solve,
        "reduce": cmd_reduce,
        "verify": cmd_verify,
    }
    try:
        return handlers[args.command](args)
    except (GraphFormatError, ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
