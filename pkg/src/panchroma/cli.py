"""Command-line entry point: ``panchroma <subcommand> ...``.

Exit codes: 0 success, 1 domain error (or a failed check), 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import bounds as B
from .coloring import PartitionParams, assign_weights, run_coloring, trace_from_json, trace_to_json
from .conflicts import SnakeBallError, extract_snake_ball, failing_edges, short_edges_from_slots, verify_snake_ball
from .experiments import ExperimentConfig, default_bounds, run_experiment, summarize
from .hypergraph import HypergraphFormatError, load_hg, random_uniform, write_hg
from .lemmas import run_all_sweeps
from .oracle import BudgetExceeded, exact_event_probability, format_rational, panchromatic_exists


class DomainError(Exception):
    pass


def parse_p(text: str):
    """``a/b`` gives an exact rational; anything else a float."""
    try:
        if "/" in text:
            return Fraction(text)
        return float(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"invalid probability {text!r}") from None


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _resolve_params(h, r: int, p) -> PartitionParams:
    if p is None:
        return PartitionParams.from_formula(h.n, r)
    return PartitionParams(r, p, "override")


# ----------------------------------------------------------------------------


def cmd_gen(args) -> int:
    h = random_uniform(args.n, args.vertices, args.edges, args.seed)
    _emit(args, write_hg(h))
    return 0


def cmd_color(args) -> int:
    h = load_hg(args.input)
    params = _resolve_params(h, args.r, args.p)
    sigma = assign_weights(h, args.seed, exact=params.exact)
    trace = run_coloring(h, params, sigma, seed=args.seed)
    _emit(args, _dump_json(trace_to_json(h, trace)))
    return 0


def cmd_analyze(args) -> int:
    h = load_hg(args.input)
    with open(args.trace, encoding="utf-8") as fh:
        trace = trace_from_json(h, json.load(fh))
    short = short_edges_from_slots(h, trace.r, trace.slots)
    failing = failing_edges(h, trace)
    report = {"short_edges": short.to_json(), "failing_edges": failing, "snake_ball": None}
    target = args.edge if args.edge is not None else (failing[0] if failing else None)
    status = 0
    if target is not None and not short:
        try:
            sb = extract_snake_ball(h, trace, target)
        except SnakeBallError as exc:
            report["error"] = str(exc)
            status = 1
        else:
            report["snake_ball"] = sb.to_json()
            report["verified"] = verify_snake_ball(h, trace, sb) is None
            status = 0 if report["verified"] else 1
    if args.format == "text":
        lines = [f"failing edges: {failing or 'none'}",
                 f"short edges: {short.edges or 'none'}"]
        for s in short.entries:
            lines.append(f"  edge {s.edge} i={s.i}: {s.condition}")
        if report["snake_ball"]:
            sb = report["snake_ball"]
            lines.append(f"snake ball: edges {sb['edges']} links {sb['links']} "
                         f"delta {sb['delta_indices']} verified={report['verified']}")
        if "error" in report:
            lines.append(f"error: {report['error']}")
        _emit(args, "\n".join(lines) + "\n")
    else:
        _emit(args, _dump_json(report))
    return status


def _mc_source(args):
    if args.input:
        return load_hg(args.input), f"file:{args.input}"
    if None in (args.n, args.vertices, args.edges):
        raise DomainError("mc needs --input or all of --n/--vertices/--edges")
    h = random_uniform(args.n, args.vertices, args.edges, args.graph_seed)
    return h, f"random_uniform(n={args.n}, V={args.vertices}, E={args.edges}, seed={args.graph_seed})"


def cmd_mc(args) -> int:
    h, source = _mc_source(args)
    cfg = ExperimentConfig(h, args.r, args.trials, args.seed, p=args.p, failure_cap=args.cap,
                           workers=args.workers, source=source)
    stats = run_experiment(cfg)
    rows = summarize(stats, default_bounds(stats))
    violated = any(row.verdict == "exceeds bound" for row in rows)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "mean", "stderr", "bound_log", "verdict"])
        for row in rows:
            w.writerow([row.name, repr(row.mean), repr(row.stderr),
                        "" if row.bound_log is None else repr(row.bound_log), row.verdict])
        _emit(args, buf.getvalue())
    else:
        doc = stats.to_json()
        doc["source"] = source
        doc["seed"] = args.seed
        doc["comparison"] = [{"name": r.name, "mean": r.mean, "stderr": r.stderr,
                              "bound_log": r.bound_log, "verdict": r.verdict} for r in rows]
        if args.format == "text":
            lo, hi = stats.wilson()
            lines = [f"{source}: r={stats.r} p={stats.p!r} trials={stats.trials}",
                     f"success {stats.successes}/{stats.trials}  wilson95=[{lo:.6f}, {hi:.6f}]"]
            lines += [f"{r.name:14s} mean={r.mean:.6g} se={r.stderr:.3g} {r.verdict}" for r in rows]
            lines.append(f"inconsistencies: {len(stats.inconsistencies)}")
            _emit(args, "\n".join(lines) + "\n")
        else:
            _emit(args, _dump_json(doc))
    return 0 if stats.ok and not violated else 1


def cmd_oracle(args) -> int:
    h = load_hg(args.input)
    if args.what == "exists":
        found, coloring = panchromatic_exists(h, args.r)
        _emit(args, (f"true {' '.join(map(str, coloring))}" if found else "false") + "\n")
        return 0
    if not isinstance(args.p, Fraction):
        raise DomainError("the exact oracle needs a rational --p such as 1/5")
    if args.what in ("success", "failure"):
        event = args.what
    elif args.what == "short":
        if args.edge is None:
            raise DomainError("short needs --edge")
        event = ("short", args.edge)
    else:
        if not args.tuple:
            raise DomainError("snake needs --tuple e1,e2,...")
        event = ("snake", tuple(int(t) for t in args.tuple.split(",")))
    value = exact_event_probability(h, args.r, args.p, event)
    _emit(args, format_rational(value) + "\n")
    return 0


BOUND_HEADER = ["formula_id", "n", "r", "extra_params", "log_value", "sci_notation"]
_TABLE_FORMULAS = [f for f in B.Formula if f not in (B.Formula.SHORT_EDGE_EXPECTED, B.Formula.SNAKE_BALL_LEMMA1,
                                                       B.Formula.SNAKE_CHAIN_SECTION6)]


def _fmt_num(x) -> str:
    if isinstance(x, float) and x.is_integer() and abs(x) < 1e15:
        return str(int(x))
    return str(x)


def cmd_bounds(args) -> int:
    extra = {k: getattr(args, k) for k in ("c", "c1", "c2") if getattr(args, k) is not None}
    formulas = [B.Formula(f) for f in args.formula] if args.formula else _TABLE_FORMULAS
    rows = []
    errors = []
    for f in formulas:
        try:
            if f is B.Formula.SHORT_EDGE_EXPECTED:
                if args.p is None or args.edges is None:
                    raise DomainError("SHORT_EDGE_EXPECTED needs --p and --edges")
                bound = B.short_edge_expected_bound(args.n, args.r, float(args.p), num_edges=args.edges)
            elif f is B.Formula.SNAKE_CHAIN_SECTION6:
                if args.edges is None:
                    raise DomainError("SNAKE_CHAIN_SECTION6 needs --edges")
                bound = B.snake_chain_bound(args.n, args.r, num_edges=args.edges)
            elif f is B.Formula.SNAKE_BALL_LEMMA1:
                raise DomainError("SNAKE_BALL_LEMMA1 needs an overlap description; use the library")
            else:
                wanted = B.CONSTANTS.get(f, ())
                bound = B.eval_bound(f, args.n, args.r, check_range=not args.no_range_check,
                                     **{k: v for k, v in extra.items() if k in wanted})
        except (B.BoundError, DomainError) as exc:
            if args.formula:
                raise DomainError(f"{f}: {exc}") from exc
            errors.append(f"{f}: {exc}")
            continue
        rows.append(bound)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(BOUND_HEADER)
    for b in rows:
        extra_text = b.extra_params()
        if b.up_to_constant:
            extra_text = (extra_text + ";" if extra_text else "") + "up_to_constant"
        log_text = "-inf" if b.is_zero else repr(b.log_value)
        w.writerow([b.formula.value, _fmt_num(b.params["n"]), b.params["r"], extra_text, log_text, b.sci()])
    _emit(args, buf.getvalue())
    for e in errors:
        print(f"skipped {e}", file=sys.stderr)
    return 0


def cmd_verify_lemmas(args) -> int:
    results = run_all_sweeps(seed=args.seed)
    failed = [r for r in results if not r.ok]
    lines = []
    for name in dict.fromkeys(r.name for r in results):
        group = [r for r in results if r.name == name]
        bad = sum(not r.ok for r in group)
        margins = [r.margin for r in group]
        lines.append(f"{'PASS' if not bad else 'FAIL'} {name}: {len(group)} cases, {bad} failures, "
                     f"min margin {min(margins):.6g}")
    _emit(args, "\n".join(lines) + "\n")
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="\n") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["lemma", "params", "lhs", "rhs", "margin"])
            for r in results:
                params = ";".join(f"{k}={v}" for k, v in r.params.items())
                w.writerow([r.name, params, repr(float(r.lhs)), repr(float(r.rhs)), repr(r.margin)])
    return 1 if failed else 0


# ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("-o", "--output", help="write output to this file instead of stdout")
    common.add_argument("--format", choices=["json", "csv", "text"], default="text",
                        help="output format where a choice exists (default text)")

    parser = argparse.ArgumentParser(prog="panchroma", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    g = sub.add_parser("gen", parents=[common], help="generate a random n-uniform hypergraph (.hg)")
    g.add_argument("--n", type=int, required=True, help="edge size")
    g.add_argument("--vertices", type=int, required=True, help="number of vertices")
    g.add_argument("--edges", type=int, required=True, help="number of edges")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("color", parents=[common], help="run the interval coloring once and print its JSON trace")
    c.add_argument("--input", required=True, help=".hg file")
    c.add_argument("--r", type=int, required=True, help="number of colors")
    c.add_argument("--p", type=parse_p, help="partition parameter; 'a/b' runs in exact rational mode "
                                             "(default: the formula value for the file's n)")
    c.set_defaults(func=cmd_color)

    a = sub.add_parser("analyze", parents=[common], help="short edges and snake-ball extraction for a trace")
    a.add_argument("--input", required=True, help=".hg file the trace was produced on")
    a.add_argument("--trace", required=True, help="trace JSON written by 'color'")
    a.add_argument("--edge", type=int, help="failing edge to start from (default: lowest-index failing edge)")
    a.set_defaults(func=cmd_analyze)

    m = sub.add_parser("mc", parents=[common], help="Monte Carlo statistics of the coloring")
    m.add_argument("--input", help=".hg file (otherwise generate with --n/--vertices/--edges)")
    m.add_argument("--n", type=int, help="edge size for a generated hypergraph")
    m.add_argument("--vertices", type=int, help="vertices for a generated hypergraph")
    m.add_argument("--edges", type=int, help="edges for a generated hypergraph")
    m.add_argument("--graph-seed", type=int, default=0, help="seed for the generated hypergraph (default 0)")
    m.add_argument("--r", type=int, required=True, help="number of colors")
    m.add_argument("--p", type=parse_p, help="partition parameter override (default: formula value)")
    m.add_argument("--trials", type=int, default=10000, help="number of trials (default 10000)")
    m.add_argument("--cap", type=int, default=100, help="maximum failure records kept (default 100)")
    m.add_argument("--workers", type=int, help="worker processes (default: $PANCHROMA_THREADS, 0 = all cores)")
    m.set_defaults(func=cmd_mc)

    o = sub.add_parser("oracle", parents=[common], help="exact probabilities and colorability on tiny instances")
    o.add_argument("what", choices=["success", "failure", "short", "snake", "exists"], help="quantity to compute")
    o.add_argument("--input", required=True, help=".hg file")
    o.add_argument("--r", type=int, required=True, help="number of colors")
    o.add_argument("--p", type=parse_p, help="rational partition parameter, e.g. 1/5")
    o.add_argument("--edge", type=int, help="edge index for 'short'")
    o.add_argument("--tuple", help="comma-separated ordered edge tuple for 'snake'")
    o.set_defaults(func=cmd_oracle)

    b = sub.add_parser("bounds", parents=[common], help="log-space bound values as CSV")
    b.add_argument("--formula", action="append", choices=[f.value for f in B.Formula],
                   help="formula id (repeatable; default: every closed-form bound that applies)")
    b.add_argument("--n", type=float, required=True, help="edge size n")
    b.add_argument("--r", type=int, required=True, help="number of colors r")
    b.add_argument("--p", type=parse_p, help="partition parameter for SHORT_EDGE_EXPECTED")
    b.add_argument("--edges", type=int, help="edge count for the expected-count formulas")
    b.add_argument("--c", type=float, help="absolute constant c (default 1, flagged)")
    b.add_argument("--c1", type=float, help="absolute constant c1 (default 1, flagged)")
    b.add_argument("--c2", type=float, help="absolute constant c2 (default 1, flagged)")
    b.add_argument("--no-range-check", action="store_true",
                   help="evaluate closed forms outside their stated range of applicability")
    b.set_defaults(func=cmd_bounds)

    v = sub.add_parser("verify-lemmas", parents=[common], help="run all inequality sweeps")
    v.add_argument("--csv", help="also write per-case rows (lemma, params, lhs, rhs, margin) here")
    v.set_defaults(func=cmd_verify_lemmas)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, B.BoundError, BudgetExceeded, HypergraphFormatError, ValueError, OSError) as exc:
        print(f"panchroma {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
