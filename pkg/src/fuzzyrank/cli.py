"""``fuzzyrank`` command-line interface.

Exit codes: 0 success, 1 validation failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
import warnings
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from . import _kernels
from .aggregate import mean
from .core import (
    ROW,
    STRICT,
    FuzzyRanking,
    Tolerance,
    as_matrix,
    birkhoff_decompose,
    check_crisp,
    check_fuzzy,
    check_penalty,
    crisp_from_matrix,
    default_tolerance,
)
from .errors import FuzzyRankError, ParseError, StochasticityWarning, ValidationError
from .indecisiveness import dm_weights, indecisiveness_report
from .io import matrix_to_csv, parse_matrix_file, read_matrix, read_weights, sha256_file
from .ordering import cumulative, dominance_report
from .reference import entropy_discrepancies, similarity_discrepancies, tau_discrepancies
from .similarity import concordance, difference, kendall_tau, similarity

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2

SCHEMA_VERSION = 1


def report_schema() -> dict:
    """JSON Schema for ``--format json`` reports, as shipped with the package."""
    text = resources.files("fuzzyrank").joinpath("schemas/report.schema.json").read_text("utf-8")
    return json.loads(text)


@dataclass
class AnalysisReport:
    command: list[str]
    subcommand: str = ""
    inputs: list[dict] = field(default_factory=list)
    result: dict = field(default_factory=dict)
    warnings: list[dict] = field(default_factory=list)
    discrepancies: list[dict] = field(default_factory=list)

    def add_input(self, path, role: str) -> None:
        self.inputs.append({"path": str(path), "role": role, "sha256": sha256_file(path)})

    def warn(self, message: str, violations=()) -> None:
        self.warnings.append({"message": message,
                              "violations": [v.as_dict() for v in violations]})

    def to_json(self) -> str:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "subcommand": self.subcommand,
            "inputs": self.inputs,
            "result": self.result,
            "warnings": self.warnings,
            "discrepancies": self.discrepancies,
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _g(x) -> str:
    return f"{x:.6g}"


def _table(labels, entries, corner="object") -> str:
    entries = np.asarray(entries)
    cols = [corner] + [str(k) for k in range(1, entries.shape[1] + 1)]
    cells = [cols] + [[str(l)] + [_g(v) for v in row] for l, row in zip(labels, entries)]
    widths = [max(len(r[k]) for r in cells) for k in range(len(cols))]
    return "\n".join("  ".join(c.rjust(w) if k else c.ljust(w) for k, (c, w) in
                               enumerate(zip(r, widths))) for r in cells)


# -- input helpers ------------------------------------------------------------

def _strict_warnings(report: AnalysisReport, f: FuzzyRanking, tol: Tolerance, path) -> None:
    if f.mode == ROW:
        problems = check_fuzzy(f.entries, STRICT, tol)
        if problems:
            report.warn(f"{path}: not doubly stochastic, accepted in row-stochastic mode", problems)


def _load_fuzzy(path, args, report, role="ranking") -> FuzzyRanking:
    f = parse_matrix_file(path, "fuzzy", args.mode, args.tol)
    report.add_input(path, role)
    _strict_warnings(report, f, args.tol, path)
    return f


def _maybe_crisp(f: FuzzyRanking):
    if not check_crisp(f.entries):
        return crisp_from_matrix(f.labels, f.entries)
    return f


# -- subcommands -------------------------------------------------------------

def cmd_validate(args, report):
    raw_labels, entries = read_matrix(args.file)
    report.add_input(args.file, args.kind)
    if args.kind == "penalty":
        violations = check_penalty(entries, args.tol)
    elif args.kind == "crisp":
        violations = check_crisp(entries)
    else:
        violations = check_fuzzy(entries, args.mode, args.tol)
    n = entries.shape[0]
    valid = not violations
    if valid:
        # labels (duplicates etc.) are part of validity too
        try:
            parse_matrix_file(args.file, args.kind, args.mode, args.tol)
        except ValidationError as exc:
            violations, valid = exc.violations, False
    report.result = {
        "kind": args.kind,
        "mode": args.mode if args.kind == "fuzzy" else None,
        "n": n,
        "labels": raw_labels,
        "valid": valid,
        "violations": [v.as_dict() for v in violations],
    }
    text = [f"{args.file}: {'valid' if valid else 'INVALID'} {args.kind}"
            + (f" ({args.mode} mode)" if args.kind == "fuzzy" else "")]
    text += [f"  {v}" for v in violations]
    csv_lines = ["kind,row,col,residual"] + [
        f"{v.kind},{'' if v.row is None else v.row + 1},{'' if v.col is None else v.col + 1},{v.residual!r}"
        for v in violations]
    return ("\n".join(text), "\n".join(csv_lines)), (EXIT_OK if valid else EXIT_INVALID)


def cmd_tau(args, report):
    a = parse_matrix_file(args.a, "crisp", args.mode, args.tol)
    b = parse_matrix_file(args.b, "crisp", args.mode, args.tol)
    report.add_input(args.a, "ranking")
    report.add_input(args.b, "ranking")
    tau = kendall_tau(a, b)
    nc, nd = concordance(a, b)
    report.result = {"tau": tau, "n_c": nc, "n_d": nd, "n": a.n,
                     "order_a": list(a.order), "order_b": list(b.order)}
    report.discrepancies += [d.as_dict() for d in tau_discrepancies(a.order, b.order, tau)]
    text = f"tau  {_g(tau)}\nn_c  {nc}\nn_d  {nd}"
    return (text, f"tau,{tau!r}\nn_c,{nc}\nn_d,{nd}"), EXIT_OK


def cmd_diff(args, report):
    a = _load_fuzzy(args.a, args, report)
    b = _load_fuzzy(args.b, args, report)
    d = difference(a, b)
    report.result = {"labels": list(d.labels), "entries": d.entries.tolist()}
    return (_table(d.labels, d.entries), matrix_to_csv(d.labels, d.entries).rstrip("\n")), EXIT_OK


def cmd_sim(args, report):
    a = _load_fuzzy(args.a, args, report)
    b = _load_fuzzy(args.b, args, report)
    p = parse_matrix_file(args.penalty, "penalty", args.mode, args.tol)
    report.add_input(args.penalty, "penalty")
    rep = similarity(_maybe_crisp(a), _maybe_crisp(b), p, args.tol)
    report.result = rep.as_dict()
    if not rep.in_unit_interval:
        report.warn(f"SIM = {rep.sim:.6g} lies outside [0, 1]: DIS exceeds DIS_max for this pair")
    report.discrepancies += [d.as_dict() for d in similarity_discrepancies(
        a.entries, b.entries, p.entries, rep.dis, rep.dis_max, rep.sim)]
    lines = [f"DIS      {_g(rep.dis)}", f"DIS_max  {_g(rep.dis_max)}", f"SIM      {_g(rep.sim)}"]
    csv_lines = [f"dis,{rep.dis!r}", f"dis_max,{rep.dis_max!r}", f"sim,{rep.sim!r}"]
    if rep.tau is not None:
        lines.append(f"tau      {_g(rep.tau)}")
        csv_lines.append(f"tau,{rep.tau!r}")
    return ("\n".join(lines), "\n".join(csv_lines)), EXIT_OK


def cmd_order(args, report):
    f = _load_fuzzy(args.file, args, report)
    h = cumulative(f)
    rep = dominance_report(f, args.tol)
    labels = list(f.labels)
    pairwise = {r: {s: rep.outcome(r, s).name.lower() for s in labels if s != r} for r in labels}
    report.result = {
        "labels": labels,
        "ranks": rep.ranks,
        "ranking": [{"rank": k, "object": o} for k, o in rep.ranking()],
        "cumulative": h.entries.tolist(),
        "pairwise": pairwise,
        "tie_groups": [list(g) for g in rep.tie_groups],
        "incomparable": [list(p) for p in rep.incomparable],
        "total": rep.is_total,
    }
    lines = [f"{k} {o}" for k, o in rep.ranking()]
    for g in rep.tie_groups:
        lines.append("tied: " + " = ".join(g))
    for r, s in rep.incomparable:
        lines.append(f"incomparable: {r} ? {s}")
    csv_lines = ["rank,object"] + [f"{k},{o}" for k, o in rep.ranking()]
    return ("\n".join(lines), "\n".join(csv_lines)), EXIT_OK


def cmd_entropy(args, report):
    f = _load_fuzzy(args.file, args, report)
    rep = indecisiveness_report(f)
    report.result = {"labels": list(f.labels), **rep.as_dict()}
    report.discrepancies += [d.as_dict() for d in entropy_discrepancies(f.entries, rep.ii)]
    lines = [f"IND      {_g(rep.ind)}", f"IND_max  {_g(rep.ind_max)}", f"II       {_g(rep.ii)}"]
    lines += [f"  H({l}) = {_g(h)}" for l, h in zip(f.labels, rep.per_row)]
    csv_lines = [f"ind,{rep.ind!r}", f"ind_max,{rep.ind_max!r}", f"ii,{rep.ii!r}"]
    csv_lines += [f"H_{l},{h!r}" for l, h in zip(f.labels, rep.per_row)]
    return ("\n".join(lines), "\n".join(csv_lines)), EXIT_OK


def cmd_aggregate(args, report):
    rankings = [_load_fuzzy(p, args, report) for p in args.files]
    if args.weights and args.dm_weights:
        raise _Fail(EXIT_USAGE, "--weights and --dm-weights are mutually exclusive")
    weights = None
    if args.weights:
        weights = read_weights(args.weights)
        report.add_input(args.weights, "weights")
    elif args.dm_weights:
        weights = dm_weights(rankings)
    with warnings.catch_warnings():
        # strictness problems are already reported per input file
        warnings.simplefilter("ignore", StochasticityWarning)
        g = mean(rankings, weights, args.tol)
    w = np.full(len(rankings), 1.0 / len(rankings)) if weights is None else np.asarray(weights)
    report.result = {"labels": list(g.labels), "entries": g.entries.tolist(),
                     "weights": w.tolist(), "mode": g.mode}
    text = _table(g.labels, g.entries) + "\nweights  " + "  ".join(_g(x) for x in w)
    return (text, matrix_to_csv(g.labels, g.entries).rstrip("\n")), EXIT_OK


def cmd_decompose(args, report):
    f = _load_fuzzy(args.file, args, report)
    terms = birkhoff_decompose(f, args.tol)
    recon = sum(c * p.matrix for c, p in terms)
    err = float(np.max(np.abs(recon - as_matrix(f))))
    report.result = {
        "labels": list(f.labels),
        "terms": [{"coefficient": c, "order": list(p.order),
                   "positions": [x + 1 for x in p.positions]} for c, p in terms],
        "coefficient_sum": float(sum(c for c, _ in terms)),
        "reconstruction_error": err,
    }
    lines = [f"{_g(c)}  {' > '.join(p.order)}" for c, p in terms]
    lines.append(f"terms {len(terms)}, max reconstruction error {_g(err)}")
    csv_lines = ["coefficient,order"] + [f"{c!r},{' '.join(p.order)}" for c, p in terms]
    return ("\n".join(lines), "\n".join(csv_lines)), EXIT_OK


# -- parser --------------------------------------------------------------------

def _tolerance_arg(text: str) -> Tolerance:
    try:
        return Tolerance.uniform(float(text))
    except (ValueError, FuzzyRankError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=[STRICT, ROW], default=ROW,
                        help="fuzzy validation: strict (doubly stochastic) or row (default)")
    common.add_argument("--tol", type=_tolerance_arg, default=None,
                        help="absolute tolerance for all checks (default 1e-9, env FUZZYRANK_TOL)")
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")

    parser = argparse.ArgumentParser(
        prog="fuzzyrank",
        description="Validate, compare, order and aggregate crisp and fuzzy rankings.")
    parser.add_argument("--version", action="version", version="%(prog)s 0.1.0 "
                        f"({_kernels.backend()} kernels)")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("validate", parents=[common], help="check a matrix file")
    p.add_argument("file")
    p.add_argument("--kind", choices=["fuzzy", "crisp", "penalty"], default="fuzzy")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("tau", parents=[common], help="Kendall's tau of two crisp rankings")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_tau)

    p = sub.add_parser("diff", parents=[common], help="entrywise |A - B|")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_diff)

    p = sub.add_parser("sim", parents=[common], help="penalty-weighted similarity")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--penalty", required=True)
    p.set_defaults(func=cmd_sim)

    p = sub.add_parser("order", parents=[common], help="dominance ordering of objects")
    p.add_argument("file")
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("entropy", parents=[common], help="indecisiveness of a ranking")
    p.add_argument("file")
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("aggregate", parents=[common], help="(weighted) mean of rankings")
    p.add_argument("files", nargs="+")
    p.add_argument("--weights", help="CSV or JSON file with one weight per ranking")
    p.add_argument("--dm-weights", action="store_true",
                   help="weight each ranking by its decisiveness (1 - II)")
    p.set_defaults(func=cmd_aggregate)

    p = sub.add_parser("decompose", parents=[common],
                       help="convex combination of crisp rankings (needs a doubly stochastic input)")
    p.add_argument("file")
    p.set_defaults(func=cmd_decompose)
    return parser


def _emit(report: AnalysisReport, outputs, fmt: str, out) -> None:
    text, csv_text = outputs
    if fmt == "json":
        out.write(report.to_json())
        return
    if fmt == "csv":
        out.write(csv_text + "\n")
        return
    out.write(text + "\n")
    for w in report.warnings:
        out.write(f"warning: {w['message']}\n")
        for v in w["violations"]:
            loc = ", ".join(x for x in (
                None if v["row"] is None else f"row {v['row'] + 1}",
                None if v["col"] is None else f"column {v['col'] + 1}") if x)
            out.write(f"  {v['kind']} at {loc or 'matrix'} ({_g(v['residual'])})\n")
    for d in report.discrepancies:
        out.write(f"note: {d['quantity']} computed {_g(d['computed'])}, reference example "
                  f"reports {_g(d['reference'])}; {d['note']}\n")


def run_cli(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    if args.tol is None:
        try:
            args.tol = default_tolerance()
        except FuzzyRankError as exc:
            print(f"fuzzyrank: error: {exc}", file=stderr)
            return EXIT_USAGE
    try:
        report = AnalysisReport(command=argv, subcommand=args.command)
        outputs, code = args.func(args, report)
    except _Fail as exc:
        print(f"fuzzyrank: error: {exc}", file=stderr)
        return exc.code
    except ParseError as exc:
        print(f"fuzzyrank: parse error: {exc}", file=stderr)
        return EXIT_USAGE
    except ValidationError as exc:
        print(f"fuzzyrank: {exc}", file=stderr)
        return EXIT_INVALID
    except FuzzyRankError as exc:
        print(f"fuzzyrank: error: {exc}", file=stderr)
        return EXIT_INVALID
    _emit(report, outputs, args.format, stdout)
    return code


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
