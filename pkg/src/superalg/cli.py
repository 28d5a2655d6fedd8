"""Command line front end.

Exit status: 0 on success, 1 when a verification suite reports failures,
2 on usage errors (bad flags, unparsable expressions, malformed files).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import dsl
from .grassmann import AlgebraSignature, SignatureError, State
from .operators import Operator
from .serialize import SerializationError, export_json, import_json, to_document
from .scalars import JetScalar
from .verify import REPS, SUITES, SuiteOptions, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=None, help="number of Grassmann generators")
    common.add_argument("--nd", type=int, default=None, help="number of primed generators")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=100)
    common.add_argument("--format", choices=("text", "json"), default="text")

    parser = argparse.ArgumentParser(prog="superalg", parents=[common],
                                     description="Exact Grassmann operator algebra toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate an expression")
    p.add_argument("expr")

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES) + ["all"])
    p.add_argument("--rep", choices=sorted(REPS), default="pauli")
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("export", parents=[common], help="evaluate an expression and write JSON")
    p.add_argument("expr")
    p.add_argument("-o", "--output", default="-", help="destination file (default: stdout)")

    p = sub.add_parser("import", parents=[common], help="read a JSON document and print it")
    p.add_argument("source", help="JSON file, or - for stdin")
    return parser


def _signature(args, default_n: int = 3) -> AlgebraSignature:
    n = args.n if args.n is not None else default_n
    return AlgebraSignature(n, args.nd if args.nd is not None else 0)


def _render(value, fmt: str) -> str:
    if fmt == "json":
        if isinstance(value, (Operator, State)):
            return json.dumps(to_document(value), indent=1)
        return json.dumps({"kind": "scalar", "value": str(value)})
    return str(value)


def _kind(value) -> str:
    if isinstance(value, Operator):
        return "operator"
    if isinstance(value, State):
        return "state"
    return "scalar"


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse usage errors exit with 2
        return int(exc.code or 0)

    try:
        if args.command == "eval":
            sig = _signature(args)
            value = dsl.evaluate(dsl.parse(args.expr, sig), sig)
            if args.format == "text":
                print(f"# {_kind(value)}, n_total={sig.n_total}")
            print(_render(value, args.format))
            return EXIT_OK

        if args.command == "export":
            sig = _signature(args)
            value = dsl.evaluate(dsl.parse(args.expr, sig), sig)
            if isinstance(value, JetScalar):
                raise dsl.DslTypeError("only operators and states can be exported")
            if args.output == "-":
                export_json(value, sys.stdout)
                sys.stdout.write("\n")
            else:
                export_json(value, args.output)
            return EXIT_OK

        if args.command == "import":
            value = import_json(sys.stdin if args.source == "-" else args.source)
            if args.format == "text":
                print(f"# {_kind(value)}, n_total={value.sig.n_total}, n_D={value.sig.n_D}")
            print(_render(value, args.format))
            return EXIT_OK

        if args.command == "verify":
            opts = SuiteOptions(n=args.n, n_D=args.nd, trials=args.trials, seed=args.seed,
                                rep=args.rep, jobs=args.jobs)
            report = run_suite(args.suite, opts)
            if args.format == "json":
                print(json.dumps(report.to_dict(), indent=1))
            else:
                print(report.to_text())
            return EXIT_OK if report.ok else EXIT_FAIL
    except (dsl.DslError, dsl.DslTypeError, SerializationError, SignatureError,
            OSError, KeyError, ValueError) as exc:
        print(f"superalg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
