"""``datum`` command line: check, eval, cast, graph, closure, dump.

Exit codes: 0 success, 1 errors in the workspace or a failed verification,
2 usage or I/O problems.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .dsl import ParseError, Workspace, dump, parse, parse_char
from .errors import ClosureCapExceeded, DatumError, DomainViolation, NoPath, UnsupportedFormat
from .hierarchy import (
    check_dimension_acyclicity,
    detect_cycles,
    export_graph,
    find_cast_path,
    verify_graph,
    verify_order,
)
from .kernel import DEFAULT_BUDGET, StepBudget, closure_enumerate, derivation, evaluate, format_char
from .subtyping import P, R
from .typesys import check_witness

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Usage(Exception):
    pass


def _load(path: str) -> Workspace:
    try:
        with open(path, encoding="utf-8") as fh:
            source = fh.read()
    except OSError as exc:
        raise _Usage(f"cannot read {path}: {exc.strerror or exc}") from None
    return parse(source, path)


def _print_diagnostics(ws: Workspace, stream) -> None:
    for d in ws.diagnostics:
        print(d, file=stream)


def _require_ok(ws: Workspace) -> bool:
    if ws.ok:
        return True
    _print_diagnostics(ws, sys.stderr)
    return False


def _budget(arg: int | None) -> StepBudget:
    if arg is not None:
        return StepBudget(arg)
    env = os.environ.get("DATUM_BUDGET")
    if env:
        try:
            return StepBudget(int(env))
        except ValueError:
            raise _Usage(f"DATUM_BUDGET must be a positive integer, got {env!r}") from None
    return StepBudget(DEFAULT_BUDGET)


def _fail(path: str, exc: DatumError) -> int:
    print(f"{path}: error[{exc.code}]: {exc}", file=sys.stderr)
    return EXIT_FAIL


def cmd_check(args) -> int:
    ws = _load(args.file)
    reports = []
    if ws.ok or ws.types:
        reports += [check_witness(t) for t in ws.types.values()]
        reports += verify_graph(ws.graph)
        reports += [verify_order(ws.graph, R), verify_order(ws.graph, P)]
        reports.append(check_dimension_acyclicity(ws.graph))
    cycles = detect_cycles(ws.graph)
    ok = ws.ok and all(r.passed for r in reports)
    if args.json:
        print(json.dumps({
            "file": args.file,
            "ok": ok,
            "diagnostics": [d.to_dict() for d in ws.diagnostics],
            "reports": [r.to_dict() for r in reports],
            "cycles": cycles,
        }, indent=2, sort_keys=True))
    else:
        _print_diagnostics(ws, sys.stdout)
        for r in reports:
            print(r.summary())
        if cycles:
            print("cycles: " + "; ".join(" -> ".join(c) for c in cycles))
        print(f"{args.file}: {'ok' if ok else 'FAILED'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_eval(args) -> int:
    ws = _load(args.file)
    if not _require_ok(ws):
        return EXIT_FAIL
    op = ws.ops.get(args.op)
    if op is None:
        print(f"{args.file}: error[UnresolvedName]: unknown op {args.op!r}", file=sys.stderr)
        return EXIT_FAIL
    try:
        values = [parse_char(a) for a in args.args]
    except ParseError as exc:
        raise _Usage(f"bad character literal: {exc}") from None
    try:
        result = evaluate(op, values, _budget(args.budget))
    except DatumError as exc:
        return _fail(args.file, exc)
    print(format_char(result))
    return EXIT_OK


def cmd_cast(args) -> int:
    ws = _load(args.file)
    if not _require_ok(ws):
        return EXIT_FAIL
    try:
        value = parse_char(args.value)
    except ParseError as exc:
        raise _Usage(f"bad character literal: {exc}") from None
    try:
        source = ws.graph.node(args.source)
        ws.graph.node(args.target)
        if value not in source.alphabet:
            return _fail(args.file, DomainViolation(f"{format_char(value)} is not a datum of {source.name}"))
        path = find_cast_path(ws.graph, args.source, args.target)
        if path is None:
            return _fail(args.file, NoPath(f"no safe cast path from {args.source} to {args.target}"))
        result = path.apply(value)
    except DatumError as exc:
        return _fail(args.file, exc)
    print(format_char(result))
    print(f"via {path.describe()}")
    return EXIT_OK


def cmd_graph(args) -> int:
    ws = _load(args.file)
    if not _require_ok(ws):
        return EXIT_FAIL
    try:
        text = export_graph(ws.graph, args.format)
    except UnsupportedFormat as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(text)
    return EXIT_OK


def cmd_closure(args) -> int:
    ws = _load(args.file)
    if not _require_ok(ws):
        return EXIT_FAIL
    status = EXIT_OK
    try:
        ops = closure_enumerate(ws.alphabets.values(), ws.elementary_ops, args.depth, cap=args.cap)
    except ClosureCapExceeded as exc:
        ops = exc.partial
        print(f"{args.file}: error[{exc.code}]: {exc}; partial listing follows", file=sys.stderr)
        status = EXIT_FAIL
    for op in ops:
        print(derivation(op))
    print(f"# {len(ops)} operation(s)")
    return status


def cmd_dump(args) -> int:
    ws = _load(args.file)
    if not _require_ok(ws):
        return EXIT_FAIL
    sys.stdout.write(dump(ws))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="datum", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="parse and verify a workspace")
    p.add_argument("file")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("eval", help="evaluate an operation")
    p.add_argument("file")
    p.add_argument("op")
    p.add_argument("args", nargs="*", help="character literals, e.g. 3 'a' (0,1)")
    p.add_argument("--budget", type=int, help=f"step budget (default $DATUM_BUDGET or {DEFAULT_BUDGET})")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("cast", help="cast a character along the shortest safe path")
    p.add_argument("file")
    p.add_argument("source", metavar="from_type")
    p.add_argument("target", metavar="to_type")
    p.add_argument("value")
    p.set_defaults(func=cmd_cast)

    p = sub.add_parser("graph", help="export the type graph")
    p.add_argument("file")
    p.add_argument("--format", default="dot", help="dot or json")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("closure", help="enumerate derivable operations")
    p.add_argument("file")
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--cap", type=int, default=5000, help="maximum number of distinct operations")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("dump", help="print the canonical form of a workspace")
    p.add_argument("file")
    p.set_defaults(func=cmd_dump)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _Usage as exc:
        print(f"datum: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
