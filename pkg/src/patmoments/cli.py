"""
Command-line front end.

Commands:
  moment    --sigma 231 --d 1        moment polynomial + stable decomposition
  evaluate  --sigma 231 --d 1 --cycle-type "1^2 2^2"
  verify    [--suite NAME ...] [--json]
  partalg multiply --p1 "{1,1'}|..." --p2 "..."
  char table --n 5

Exit codes: 0 success, 1 usage error, 2 guardrail refusal, 3 verification
failure.  Guardrail defaults can be overridden per call with flags or globally
with PATMOMENTS_MAX_DK / PATMOMENTS_ORACLE_N_MAX.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .characters import mn_character, partitions_up_to
from .diagrams import SetPartitionKK, multiply_diagrams
from .errors import GuardrailError
from .oracle import SUITES, OracleConfig, verify_all
from .perms import CycleType, Permutation, class_size, enumerate_cycle_types, partitions
from .pipeline import DEFAULT_MAX_DK, moment_polynomial, stable_decomposition

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_GUARDRAIL = 2
EXIT_VERIFY = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits with 2 by default; 2 means guardrail here
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _env_int(name: str, default: int) -> int:
    value = os.environ.get(name)
    return int(value) if value else default


def _build_parser() -> _Parser:
    parser = _Parser(prog="patmoments", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_job_args(p):
        p.add_argument("--sigma", required=True, help="pattern in one-line notation, e.g. 231 or 10,1,2")
        p.add_argument("--d", type=int, default=1, help="moment order (default 1)")
        p.add_argument("--max-dk", type=int, default=_env_int("PATMOMENTS_MAX_DK", DEFAULT_MAX_DK),
                       help="guardrail on dk = d*k; raising it grows cost like the ordered Bell number of 2dk")
        p.add_argument("--output", choices=("text", "json"), default="text")
        p.add_argument("--threads", type=int, default=0,
                       help="reserved; the current implementation runs sequentially")

    p_moment = sub.add_parser("moment", help="moment polynomial and stable character decomposition")
    add_job_args(p_moment)

    p_eval = sub.add_parser("evaluate", help="evaluate the moment polynomial at a cycle type")
    add_job_args(p_eval)
    p_eval.add_argument("--cycle-type", required=True, help='e.g. "1^2 2^2"')

    p_verify = sub.add_parser("verify", help="run the brute-force cross-validation suites")
    p_verify.add_argument("--suite", action="append", choices=sorted(SUITES), default=None,
                          help="run only this suite (repeatable; default: all)")
    p_verify.add_argument("--n-max", type=int, default=_env_int("PATMOMENTS_ORACLE_N_MAX", 0) or None,
                          help="cap the moment/trace sweeps at this n")
    p_verify.add_argument("--seed", type=int, default=52)
    p_verify.add_argument("--threads", type=int, default=0,
                          help="reserved; the current implementation runs sequentially")
    p_verify.add_argument("--json", action="store_true", help="machine-readable report")

    p_partalg = sub.add_parser("partalg", help="partition-algebra utilities")
    partalg_sub = p_partalg.add_subparsers(dest="partalg_command", required=True)
    p_mult = partalg_sub.add_parser("multiply", help="product of two diagrams")
    p_mult.add_argument("--p1", required=True, help="diagram, e.g. \"{1,1'}|{2'}|{2,3,3'}\"")
    p_mult.add_argument("--p2", required=True)
    p_mult.add_argument("--output", choices=("text", "json"), default="text")

    p_char = sub.add_parser("char", help="symmetric-group character utilities")
    char_sub = p_char.add_subparsers(dest="char_command", required=True)
    p_table = char_sub.add_parser("table", help="character table of S_n")
    p_table.add_argument("--n", type=int, required=True)
    p_table.add_argument("--output", choices=("text", "json"), default="text")

    return parser


def _usage_error(message: str) -> int:
    print(f"patmoments: error: {message}", file=sys.stderr)
    return EXIT_USAGE


def cmd_moment(args) -> int:
    try:
        sigma = Permutation.parse(args.sigma)
    except ValueError as exc:
        return _usage_error(f"bad --sigma: {exc}")
    poly = moment_polynomial(sigma, args.d, max_dk=args.max_dk)
    decomp = stable_decomposition(sigma, args.d, max_dk=args.max_dk)
    if args.output == "json":
        print(json.dumps({
            "sigma": list(sigma.word),
            "d": args.d,
            "dk": args.d * sigma.n,
            "moment_polynomial": poly.to_json(),
            "stable_decomposition": decomp.to_json(),
        }, indent=2, sort_keys=True))
    else:
        print(f"sigma = {sigma}, d = {args.d}, dk = {args.d * sigma.n}")
        print(f"M = {poly}")
        print("stable decomposition (valid for n >= 2dk):")
        for lam in partitions_up_to(decomp.dk):
            a = decomp.a(lam)
            if not a.is_zero():
                name = "[" + ",".join(map(str, lam)) + "]"
                print(f"  a^{name} = {a}")
    return EXIT_OK


def cmd_evaluate(args) -> int:
    try:
        sigma = Permutation.parse(args.sigma)
        ct = CycleType.parse(args.cycle_type)
    except ValueError as exc:
        return _usage_error(f"bad input: {exc}")
    poly = moment_polynomial(sigma, args.d, max_dk=args.max_dk)
    value = poly.evaluate(ct.n, ct.m_values(args.d * sigma.n))
    if args.output == "json":
        print(json.dumps({
            "sigma": list(sigma.word), "d": args.d, "cycle_type": str(ct), "n": ct.n,
            "value": {"num": str(value.numerator), "den": str(value.denominator)},
        }, indent=2, sort_keys=True))
    else:
        print(value)
    return EXIT_OK


def cmd_verify(args) -> int:
    overrides = {}
    if args.n_max:
        overrides.update(moment_n_max=min(args.n_max, 8), trace_n_max=min(args.n_max, 6),
                         char_n_max=min(args.n_max, 8))
    config = OracleConfig(
        suites=tuple(args.suite) if args.suite else None,
        seed=args.seed,
        threads=args.threads,
        **overrides,
    )
    report = verify_all(config)
    if args.json:
        print(json.dumps(report.to_json(), indent=2, sort_keys=True))
    else:
        print(report)
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_partalg_multiply(args) -> int:
    try:
        P1 = SetPartitionKK.parse(args.p1)
        P2 = SetPartitionKK.parse(args.p2, k=P1.k)
    except ValueError as exc:
        return _usage_error(f"bad diagram: {exc}")
    c, P3 = multiply_diagrams(P1, P2)
    if args.output == "json":
        print(json.dumps({"c": c, "p3": str(P3)}, indent=2, sort_keys=True))
    else:
        print(f"P1 P2 = t^{c} P3 with P3 = {P3}")
    return EXIT_OK


def cmd_char_table(args) -> int:
    if args.n < 1:
        return _usage_error("--n must be >= 1")
    cts = enumerate_cycle_types(args.n)
    lams = list(partitions(args.n))
    table = {lam: [mn_character(lam, ct) for ct in cts] for lam in lams}
    if args.output == "json":
        print(json.dumps({
            "n": args.n,
            "classes": [{"cycle_type": str(ct), "size": class_size(ct)} for ct in cts],
            "rows": [{"lambda": list(lam), "values": table[lam]} for lam in lams],
        }, indent=2, sort_keys=True))
    else:
        header = ["lambda \\ class"] + [str(ct) for ct in cts]
        rows = [[str(lam)] + [str(v) for v in table[lam]] for lam in lams]
        widths = [max(len(r[i]) for r in [header] + rows) for i in range(len(header))]
        for row in [header] + rows:
            print("  ".join(cell.rjust(w) for cell, w in zip(row, widths)))
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "moment":
            return cmd_moment(args)
        if args.command == "evaluate":
            return cmd_evaluate(args)
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "partalg":
            return cmd_partalg_multiply(args)
        if args.command == "char":
            return cmd_char_table(args)
        return _usage_error(f"unknown command {args.command!r}")
    except GuardrailError as exc:
        print(f"patmoments: guardrail: {exc}", file=sys.stderr)
        return EXIT_GUARDRAIL


if __name__ == "__main__":
    sys.exit(main())
