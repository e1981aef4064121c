"""Command-line interface: ``acirank <command> --input FILE.aci [options]``.

Exit codes: 0 success, 1 refusal (the analysis answered "no"), 2 bad
input or an exhausted budget, 3 an internal consistency failure.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from . import report as rep
from .constant_rank import canonical_form, is_constant_rank
from .decomposition import FACTOR, SEMIFACTOR, enumerate_sets, wst_decompose, zero_block_witness
from .errors import AciError, DimensionMismatch, FieldTooSmall, InternalAssertionFailed, ReductionFailed
from .parsing import parse_document
from .rank import SearchBudget, rank_report
from .scalars import FieldSpec

EXIT_OK, EXIT_REFUSED, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, metavar="PATH", help=".aci matrix file")
    common.add_argument("--field", metavar="FIELD", help="override the file's field: gf(p) or rational")
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument("--budget", type=int, default=1 << 20, metavar="N", help="max completions to enumerate")
    common.add_argument("--seed", type=int, default=42, metavar="N", help="seed for randomized witness search")
    common.add_argument("--tries", type=int, default=512, metavar="N", help="random witness attempts")

    parser = _Parser(prog="acirank", description="Rank analysis and WST-decomposition of ACI-matrices.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("validate", parents=[common], help="parse and check the ACI rules")
    sub.add_parser("rank", parents=[common], help="maxRank (and the Rank set when enumerable)")
    sub.add_parser("wst", parents=[common], help="WST-decomposition")
    fs = sub.add_parser("factor-sets", parents=[common], help="all factor or semifactor sets")
    fs.add_argument("--kind", choices=[FACTOR, SEMIFACTOR], default=FACTOR)
    zb = sub.add_parser("zero-block", parents=[common], help="zero block certifying maxRank <= rho")
    zb.add_argument("--rho", type=int, required=True, metavar="R")
    sub.add_parser("constant-rank", parents=[common], help="constantRank test and canonical form")
    return parser


def _print_text(report: dict, out) -> None:
    print(f"{report['command']}: {report['input']} over {report['field']}", file=out)
    for key in sorted(report["payload"]):
        value = report["payload"][key]
        if isinstance(value, dict) and "entries" in value:
            print(f"{key} ({value['dims'][0]}x{value['dims'][1]}):", file=out)
            for row in value["entries"]:
                print("  [" + ", ".join(row) + "]", file=out)
        elif isinstance(value, dict) and value and all(isinstance(v, dict) and "entries" in v for v in value.values()):
            for name in sorted(value):
                block = value[name]
                print(f"{key}.{name} ({block['dims'][0]}x{block['dims'][1]}):", file=out)
                for row in block["entries"]:
                    print("  [" + ", ".join(row) + "]", file=out)
        else:
            print(f"{key}: {value}", file=out)
    for note in report["diagnostics"]:
        print(f"note: {note}", file=out)


def run_command(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        budget = SearchBudget(max_completions=args.budget, rng_seed=args.seed, random_tries=args.tries)
    except ValueError as exc:
        print(f"acirank: {exc}", file=err)
        return EXIT_INPUT
    try:
        with open(args.input, encoding="utf-8") as fh:
            doc = parse_document(fh.read())
        field = FieldSpec.parse(args.field) if args.field else doc.field
        M = doc.to_matrix(field)
    except OSError as exc:
        print(f"acirank: cannot read {args.input}: {exc.strerror}", file=err)
        return EXIT_INPUT
    except AciError as exc:
        print(f"acirank: {args.input}: {exc}", file=err)
        return EXIT_INPUT
    name = doc.name or args.input
    try:
        code, payload, notes = _dispatch(args, M, budget)
    except (InternalAssertionFailed, ReductionFailed) as exc:
        print(f"acirank: internal consistency failure: {exc}", file=err)
        return EXIT_INTERNAL
    except AciError as exc:
        print(f"acirank: {type(exc).__name__}: {exc}", file=err)
        return EXIT_INPUT
    report = rep.build_report(args.command, name, M.field, payload, notes)
    if args.json:
        print(rep.dumps(report), file=out)
    else:
        _print_text(report, out)
    return code


def _dispatch(args, M, budget):
    cmd = args.command
    if cmd == "validate":
        return EXIT_OK, rep.validate_payload(M), []
    if cmd == "rank":
        return EXIT_OK, rep.rank_payload(M, rank_report(M, budget)), []
    if cmd == "wst":
        return EXIT_OK, rep.wst_payload(M, wst_decompose(M, budget)), []
    if cmd == "factor-sets":
        lattice = enumerate_sets(M, args.kind, budget)
        notes = [lattice.note] if lattice.note else []
        return EXIT_OK, rep.lattice_payload(lattice), notes
    if cmd == "zero-block":
        if not 0 <= args.rho < min(M.m, M.n):
            raise DimensionMismatch(f"--rho must satisfy 0 <= rho < {min(M.m, M.n)}")
        w = zero_block_witness(M, args.rho, budget)
        if not w:
            return EXIT_REFUSED, {"refused": True, "reason": w.reason}, [w.reason]
        return EXIT_OK, rep.zero_block_payload(M, w), []
    if cmd == "constant-rank":
        res = is_constant_rank(M, budget)
        payload = {"constant": res.constant, "rho": res.rho, "method": res.method}
        if not res.constant:
            payload["low"] = {"rank": res.low_rank, "completion": rep.completion_payload(M, res.low)}
            payload["high"] = {"rank": res.high_rank, "completion": rep.completion_payload(M, res.high)}
            return EXIT_REFUSED, payload, ["matrix is not constantRank"]
        notes = []
        try:
            payload["canonical_form"] = rep.canonical_payload(M, canonical_form(M, budget))
        except FieldTooSmall as exc:
            notes.append(f"no canonical form: {exc}")
        return EXIT_OK, payload, notes
    raise DimensionMismatch(f"unknown command {cmd}")


def main(argv: Optional[List[str]] = None) -> None:
    sys.exit(run_command(argv))


if __name__ == "__main__":
    main()
