"""Command-line interface.

Subcommands: bound, audit, compare, simulate, oracle. Every subcommand
takes --format text|csv|json and --output. Exit codes: 0 success, 1 failed
published-table check, 2 argument parse error, 3 domain error (bad shape,
unknown machine, out-of-range t, ...), 4 oracle budget exhausted.
"""

from __future__ import annotations

import argparse
import re
import sys

from . import golden, render
from .audit import (
    audit,
    best_geometry,
    compare_machines,
    cross_check_enumeration,
    default_audit_sizes,
    realizable_sizes,
    worst_geometry,
)
from .bgq import (
    MODE_EXPLICIT,
    MachineError,
    PartitionGeometry,
    builtin_policies,
    load_machine,
    load_policy,
)
from .core import ShapeError, canonicalize
from .flowsim import TrafficSpec, UnsupportedPatternError, simulate_pairing_benchmark
from .isoperimetry import (
    OracleBudgetExceeded,
    bound_general_torus,
    brute_force_min_perimeter,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_BUDGET = 4

BOUND_REL_TOL = 1e-9


def _dims_arg(text: str):
    if not re.fullmatch(r"\d+(?:[x,]\d+)*", text):
        raise argparse.ArgumentTypeError(f"cannot parse dimensions {text!r}")
    return tuple(int(p) for p in re.split(r"[x,]", text))


def _sizes_arg(text: str):
    try:
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse size list {text!r}")


def _geometry_arg(text: str):
    try:
        return PartitionGeometry.parse(text)
    except MachineError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _add_output_args(sub):
    sub.add_argument("--format", choices=render.FORMATS, default="text")
    sub.add_argument("--output", metavar="PATH", help="write to a file instead of stdout")


def _emit(args, text: str):
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_bound(args) -> int:
    shape = canonicalize(args.dims, args.multiplicity)
    result = bound_general_torus(shape, args.t)
    doc = render.bound_document(shape, args.t, result)
    _emit(args, render.render_bound(doc, args.format))
    return EXIT_OK


def cmd_audit(args) -> int:
    machine = load_machine(args.machine)
    policy = load_policy(args.policy)
    if args.seed is not None:
        cross_check_enumeration(machine, args.seed)
    if args.sizes:
        sizes = args.sizes
    elif args.all_sizes:
        sizes = realizable_sizes(machine)
    else:
        sizes = default_audit_sizes(machine, policy)
    report = audit(machine, policy, sizes)
    doc = render.audit_document(report, gbps=args.gbps)

    status = EXIT_OK
    if args.check_paper:
        problems = golden.check_audit_rows(report)
        doc["published_check"] = {
            "status": "pass" if not problems else "fail",
            "problems": problems,
        }
        status = EXIT_OK if not problems else EXIT_CHECK_FAILED

    out = render.render_audit(doc, args.format)
    if args.check_paper and args.format == "text":
        check = doc["published_check"]
        if check["status"] == "pass":
            out += f"published-table check: PASS ({len(doc['rows'])} rows)\n"
        else:
            out += "published-table check: FAIL\n"
            out += "".join(f"  {p}\n" for p in check["problems"])
    _emit(args, out)
    if args.check_paper and args.format == "csv":
        summary = doc["published_check"]["status"].upper()
        print(f"published-table check: {summary}", file=sys.stderr)
        for p in doc["published_check"]["problems"]:
            print(f"  {p}", file=sys.stderr)
    return status


def cmd_compare(args) -> int:
    machines = [load_machine(name) for name in args.machines.split(",") if name]
    if args.sizes:
        sizes = args.sizes
    elif args.check_paper:
        sizes = list(golden.comparison_table_sizes())
    else:
        sizes = sorted({n for m in machines for n in realizable_sizes(m)})
    comparison = compare_machines(machines, sizes)
    doc = render.comparison_document(comparison, gbps=args.gbps)

    status = EXIT_OK
    if args.check_paper:
        problems = golden.check_comparison(comparison)
        doc["published_check"] = {
            "status": "pass" if not problems else "fail",
            "problems": problems,
        }
        status = EXIT_OK if not problems else EXIT_CHECK_FAILED

    out = render.render_comparison(doc, args.format)
    if args.check_paper and args.format == "text":
        check = doc["published_check"]
        if check["status"] == "pass":
            out += f"published-table check: PASS ({len(doc['rows'])} rows)\n"
        else:
            out += "published-table check: FAIL\n"
            out += "".join(f"  {p}\n" for p in check["problems"])
    _emit(args, out)
    if args.check_paper and args.format == "csv":
        print(f"published-table check: {doc['published_check']['status'].upper()}", file=sys.stderr)
        for p in doc["published_check"]["problems"]:
            print(f"  {p}", file=sys.stderr)
    return status


def _simulate_pair(args):
    """Resolve what to simulate: [(label, geometry)], ratio labels or None."""
    if args.geometry is not None:
        if args.machine or args.size is not None:
            raise MachineError("give either --geometry or --machine/--size, not both")
        pairs = [("geometry", args.geometry)]
        if args.versus is not None:
            pairs.append(("versus", args.versus))
            return pairs, ("geometry", "versus"), None
        return pairs, None, None

    if not args.machine or args.size is None:
        raise MachineError("simulate needs --geometry or both --machine and --size")
    machine = load_machine(args.machine)
    if args.policy:
        policy = load_policy(args.policy)
    else:
        builtin = builtin_policies()
        policy = builtin.get(f"{machine.name}-2017", builtin["any"])
    best = best_geometry(machine, args.size)
    if best is None:
        raise MachineError(f"no geometry of {args.size} midplanes fits {machine.name}")
    if policy.mode == MODE_EXPLICIT:
        baseline = policy.allowed.get(args.size)
        if baseline is None:
            raise MachineError(
                f"policy {policy.name!r} does not define size {args.size}; pass --geometry"
            )
        pairs = [("baseline", baseline), ("best", best)]
        return pairs, ("baseline", "best"), machine
    worst = worst_geometry(machine, args.size)
    pairs = [("worst", worst), ("best", best)]
    return pairs, ("worst", "best"), machine


def cmd_simulate(args) -> int:
    traffic = TrafficSpec(
        rounds_total=args.rounds,
        warmup_rounds=args.warmup,
        message_gb=args.message_gb,
        link_gbps=args.link_gbps,
    )
    pairs, ratio_labels, machine = _simulate_pair(args)
    entries = []
    results = {}
    for label, geometry in pairs:
        res = simulate_pairing_benchmark(geometry, traffic)
        results[label] = res
        entries.append((label, geometry, res))

    ratio = None
    notes = []
    if ratio_labels is not None:
        num, den = ratio_labels
        value = results[num].predicted_total_time_s / results[den].predicted_total_time_s
        ratio = {"numerator": num, "denominator": den, "value": value}
        if machine is not None:
            published = golden.PUBLISHED_PAIRING_RATIOS.get((machine.name, args.size))
            if published is not None:
                predicted, measured = published
                if abs(value - predicted) <= 0.01 * predicted:
                    notes.append(
                        f"note: matches the published prediction {predicted:.2f} "
                        f"for this pair (measured {measured:.2f})"
                    )
                else:
                    notes.append(
                        f"note: published prediction for this pair was {predicted:.2f} "
                        f"(measured {measured:.2f}); the flow model gives {value:.2f}, "
                        f"the exact bisection-bandwidth ratio"
                    )
    doc = render.flow_document(entries, ratio, notes)
    _emit(args, render.render_flow(doc, args.format))
    return EXIT_OK


def cmd_oracle(args) -> int:
    shape = canonicalize(args.dims, args.multiplicity)
    result = brute_force_min_perimeter(
        shape,
        args.t,
        budget=args.budget,
        workers=args.workers,
        translation_pruning=not args.no_translation_pruning,
    )
    bound = bound_general_torus(shape, args.t)
    tol = BOUND_REL_TOL * max(1.0, abs(bound.value))
    if result.min_perimeter < bound.value - tol:
        verdict = "below-bound-counterexample"
    elif abs(result.min_perimeter - bound.value) <= tol:
        verdict = "attained"
    else:
        verdict = "above-bound"
    doc = render.oracle_document(shape, args.t, result, bound, verdict)
    _emit(args, render.render_oracle(doc, args.format))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toruscut",
        description="Torus cut bounds, partition bisection audits, and contention modeling",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="face-counting cut lower bound for a t-vertex set")
    p.add_argument("--dims", type=_dims_arg, required=True, metavar="A,B,...")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--multiplicity", type=int, choices=(1, 2), default=1,
                   help="edge convention for length-2 dimensions")
    _add_output_args(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("audit", help="audit an allocation policy against best geometries")
    p.add_argument("--machine", required=True, help="builtin name or machine file")
    p.add_argument("--policy", required=True, help="builtin name or policy file")
    p.add_argument("--sizes", type=_sizes_arg, metavar="N,N,...")
    p.add_argument("--all-sizes", action="store_true",
                   help="audit every size with a fitting geometry")
    p.add_argument("--check-paper", action="store_true",
                   help="verify the audit against the published allocation tables")
    p.add_argument("--gbps", action="store_true",
                   help="report bandwidth in GB/s instead of links")
    p.add_argument("--seed", type=int,
                   help="run the randomized enumeration self-check with this seed")
    _add_output_args(p)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("compare", help="best geometry per size across machines")
    p.add_argument("--machines", default="juqueen,juqueen-54,juqueen-48",
                   metavar="NAME,NAME,...")
    p.add_argument("--sizes", type=_sizes_arg, metavar="N,N,...")
    p.add_argument("--check-paper", action="store_true",
                   help="verify against the published machine-comparison table")
    p.add_argument("--gbps", action="store_true")
    _add_output_args(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("simulate", help="flow model of the furthest-pairing benchmark")
    p.add_argument("--geometry", type=_geometry_arg, metavar="AxBxCxD")
    p.add_argument("--versus", type=_geometry_arg, metavar="AxBxCxD",
                   help="second geometry to compare against")
    p.add_argument("--machine", help="with --size: simulate policy/worst vs best")
    p.add_argument("--size", type=int, metavar="MIDPLANES")
    p.add_argument("--policy", help="policy for the baseline geometry (default: "
                   "the machine's builtin list if any, else any-fitting-cuboid)")
    p.add_argument("--rounds", type=int, default=30)
    p.add_argument("--warmup", type=int, default=4)
    p.add_argument("--message-gb", type=float, default=0.1342)
    p.add_argument("--link-gbps", type=float, default=2.0)
    _add_output_args(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("oracle", help="exhaustive minimum perimeter on a small torus")
    p.add_argument("--dims", type=_dims_arg, required=True, metavar="A,B,...")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--multiplicity", type=int, choices=(1, 2), default=1)
    p.add_argument("--budget", type=int, help="max subsets to examine")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-translation-pruning", action="store_true")
    _add_output_args(p)
    p.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OracleBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except AssertionError as exc:
        print(f"self-check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except (ShapeError, MachineError, UnsupportedPatternError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
