"""Command-line front end.

Subcommands: ``dual``, ``rank``, ``le``, ``enumerate``, ``verify-dual``,
``selftest``.  Structured output goes to stdout as JSON (or DOT text for
``enumerate --dot``); diagnostics go to stderr.  Exit codes: 0 success,
1 malformed input (JSON or schema), 2 validation failure (parameter
invariants, mismatched supports, over-cap enumerations), 3 verification or
self-test mismatch.  Set PYA_COLOR=0 to disable ANSI colors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Any

from .core import (
    InvalidParameterError,
    LParameter,
    gl_components,
    require_valid,
)
from .duality import LineTrace, pyasetskii_dual
from .oracle import DEFAULT_PRIME, verify_dual
from .posets import (
    DEFAULT_SUPPORT_CAP,
    SupportCapExceeded,
    build_poset,
    dot_export,
    enum_classical,
)
from .rankmat import closure_leq, rank_matrix
from .wire import SchemaError, document_json, parse_document, segments_json, trace_json

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_INVALID = 2
EXIT_MISMATCH = 3


def _load_json(path: str) -> Any:
    if path == "-":
        return json.load(sys.stdin)
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _load_parameter(path: str) -> LParameter:
    return parse_document(_load_json(path))


def _emit(obj: Any) -> None:
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _color_enabled() -> bool:
    if os.environ.get("PYA_COLOR", "") == "0":
        return False
    return sys.stdout.isatty()


def _paint(text: str, code: str) -> str:
    if not _color_enabled():
        return text
    return f"\x1b[{code}m{text}\x1b[0m"


def cmd_dual(args: argparse.Namespace) -> int:
    p = _load_parameter(args.file)
    require_valid(p)
    traces: list[LineTrace] | None = [] if args.trace else None
    dual = pyasetskii_dual(p, traces)
    out = document_json(dual)
    if args.trace:
        out["trace"] = trace_json(traces)
    _emit(out)
    return EXIT_OK


def cmd_rank(args: argparse.Namespace) -> int:
    p = _load_parameter(args.file)
    require_valid(p)
    lines = [
        {"line": f"{label}:{delta}", "rank_matrix": rank_matrix(comp).to_json()}
        for (label, delta), comp in gl_components(p.mseg).items()
    ]
    _emit({"lines": lines})
    return EXIT_OK


def cmd_le(args: argparse.Namespace) -> int:
    p1 = _load_parameter(args.file1)
    p2 = _load_parameter(args.file2)
    require_valid(p1)
    require_valid(p2)
    if p1.group != p2.group or p1.infinitesimal() != p2.infinitesimal():
        print("parameters are not comparable: group or support differs", file=sys.stderr)
        return EXIT_INVALID
    _emit({"le": closure_leq(p1, p2), "ge": closure_leq(p2, p1)})
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    p = _load_parameter(args.file)
    lam = p.infinitesimal()
    cap = 10**9 if args.force else args.cap
    try:
        params = enum_classical(lam, p.group, cap=cap)
    except SupportCapExceeded as exc:
        print(f"{exc} (use --force to override)", file=sys.stderr)
        return EXIT_INVALID
    if args.poset or args.dot:
        poset = build_poset(params)
        if args.dot:
            sys.stdout.write(dot_export(poset))
        else:
            _emit(poset.to_json())
        return EXIT_OK
    _emit(
        {
            "count": len(params),
            "parameters": [segments_json(q.mseg) for q in params],
        }
    )
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    p = _load_parameter(args.file)
    require_valid(p)
    report = verify_dual(
        p,
        trials=args.trials,
        seed=args.seed,
        prime=args.prime,
        corrupt=args.corrupt,
    )
    _emit(report.to_json())
    return EXIT_OK if report.all_match else EXIT_MISMATCH


def _external_fixture_cases(path: str) -> list:
    """Load dual-pair fixtures from a JSON file:
    [{"name": ..., "input": document, "expected_segments": [...]}, ...]."""
    from .wire import parse_document as _parse

    data = _load_json(path)
    if not isinstance(data, list):
        raise SchemaError("fixtures file must hold a list")
    cases = []
    for item in data:
        if not isinstance(item, dict) or {"name", "input", "expected_segments"} - set(
            item
        ):
            raise SchemaError("fixture needs name, input, expected_segments")
        name = item["name"]
        param = _parse(item["input"])
        expected = _parse(
            {
                "group": item["input"]["group"],
                "rho_classes": item["input"]["rho_classes"],
                "segments": item["expected_segments"],
            }
        ).mseg

        def run(param=param, expected=expected):
            got = pyasetskii_dual(param)
            assert got.mseg == expected, f"{got.mseg} != {expected}"
            return None

        cases.append((str(name), run))
    return cases


def cmd_selftest(args: argparse.Namespace) -> int:
    from .fixtures import selftest_cases

    if args.fixtures:
        cases = _external_fixture_cases(args.fixtures)
    else:
        cases = selftest_cases(trials=args.trials, seed=args.seed, prime=args.prime)
    if args.filter:
        cases = [(name, fn) for name, fn in cases if args.filter in name]
        if not cases:
            print(f"no fixtures match {args.filter!r}", file=sys.stderr)
            return EXIT_INVALID
    failures = 0
    t0 = time.monotonic()
    for name, fn in cases:
        try:
            detail = fn()
        except Exception as exc:  # report and continue
            failures += 1
            print(f"{_paint('FAIL', '31')} {name}: {exc}")
        else:
            suffix = f" ({detail})" if detail else ""
            print(f"{_paint('PASS', '32')} {name}{suffix}")
    elapsed = time.monotonic() - t0
    print(
        f"{len(cases) - failures}/{len(cases)} fixtures passed in {elapsed:.1f}s",
        file=sys.stderr,
    )
    return EXIT_OK if failures == 0 else EXIT_MISMATCH


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pya",
        description=(
            "Exact computation of the Pyasetskii involution of L-parameters, "
            "with rank matrices, closure posets and an independent "
            "linear-algebra verification oracle."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("dual", help="compute the dual parameter")
    sp.add_argument("file", help="parameter document (JSON path or '-')")
    sp.add_argument(
        "--trace", action="store_true", help="append per-line extraction traces"
    )
    sp.set_defaults(fn=cmd_dual)

    sp = sub.add_parser("rank", help="per-line rank matrices")
    sp.add_argument("file")
    sp.set_defaults(fn=cmd_rank)

    sp = sub.add_parser("le", help="closure-order comparison of two parameters")
    sp.add_argument("file1")
    sp.add_argument("file2")
    sp.set_defaults(fn=cmd_le)

    sp = sub.add_parser(
        "enumerate", help="all parameters with the document's support"
    )
    sp.add_argument("file")
    sp.add_argument("--poset", action="store_true", help="emit the closure poset")
    sp.add_argument("--dot", action="store_true", help="emit a Graphviz digraph")
    sp.add_argument("--cap", type=int, default=DEFAULT_SUPPORT_CAP)
    sp.add_argument("--force", action="store_true", help="ignore the support cap")
    sp.set_defaults(fn=cmd_enumerate)

    sp = sub.add_parser(
        "verify-dual", help="check the algorithms against the commutant oracle"
    )
    sp.add_argument("file")
    sp.add_argument("--trials", type=int, default=5)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    sp.add_argument(
        "--corrupt",
        action="store_true",
        help="negative control: corrupt the expected matrices (test mode)",
    )
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("selftest", help="replay the fixture corpus")
    sp.add_argument("--filter", help="run only fixtures whose name contains this")
    sp.add_argument("--fixtures", help="external dual-pair fixtures (JSON file)")
    sp.add_argument("--trials", type=int, default=5)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    sp.set_defaults(fn=cmd_selftest)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (json.JSONDecodeError, SchemaError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InvalidParameterError as exc:
        print("invalid parameter:", file=sys.stderr)
        for violation in exc.violations:
            print(f"  - {violation}", file=sys.stderr)
        return EXIT_INVALID
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
