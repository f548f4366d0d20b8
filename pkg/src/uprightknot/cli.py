"""Command-line front end.

    uprightknot compute FILE... [--invariant delta|rho1|theta|all] [--json] [--stable]
    uprightknot verify [FILE...] [--catalog] [--json] [--no-kinks]
    uprightknot catalog list | show NAME | emit NAME PATH

Exit codes: 0 success, 1 unreadable/malformed/invalid input or unknown
catalog name, 2 internal identity failure (e.g. a non-cancelling
denominator), 3 a verification check failed.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__, catalog
from .diagram import DiagramSyntaxError, DiagramValidationError, parse
from .invariants import compute_all
from .poly import PolyError
from .verify import verify_diagram

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL, EXIT_VERIFY = 0, 1, 2, 3

INVARIANTS = ("delta", "rho1", "theta")


class InputError(Exception):
    pass


def _load(path: str):
    """``(name, diagram)`` for a UDF file; ``-`` reads stdin."""
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    try:
        return path, parse(text)
    except DiagramSyntaxError as exc:
        raise InputError(f"{path}: syntax error at {exc}") from None
    except DiagramValidationError as exc:
        raise InputError(f"{path}: invalid diagram: {exc}") from None


def output_document(name, D, result, stable: bool) -> dict:
    doc = {
        "name": name,
        "n": D.n,
        "writhe": result.writhe,
        "rotation": result.total_rotation,
    }
    for key in INVARIANTS:
        value = getattr(result, key)
        if value is not None:
            doc[key] = value.to_records()
    if not stable:
        doc["timing_ms"] = {k: round(v, 3) for k, v in result.timings_ms.items()}
    return doc


def _text_block(doc: dict) -> str:
    from .poly import LaurentPoly1, LaurentPoly2

    lines = [f"{doc['name']}: n={doc['n']} w={doc['writhe']} phi={doc['rotation']}"]
    for key, cls in (("delta", LaurentPoly1), ("rho1", LaurentPoly1), ("theta", LaurentPoly2)):
        if key in doc:
            lines.append(f"  {key:<5} = {cls.from_records(doc[key])}")
    if "timing_ms" in doc:
        lines.append("  time  = " + ", ".join(f"{k} {v:.1f} ms" for k, v in doc["timing_ms"].items()))
    return "\n".join(lines)


def cmd_compute(args) -> int:
    which = INVARIANTS if args.invariant == "all" else (args.invariant,)
    docs = []
    for path in args.files:
        try:
            name, D = _load(path)
        except InputError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
        try:
            result = compute_all(D, which, include_diagonal=not args.f2_exclude_diagonal)
        except (PolyError, ArithmeticError) as exc:
            print(f"internal error: {path}: {type(exc).__name__}: {exc}", file=sys.stderr)
            return EXIT_INTERNAL
        docs.append(output_document(name, D, result, args.stable))
    if args.json:
        payload = docs[0] if len(docs) == 1 else docs
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(_text_block(d) for d in docs))
    return EXIT_OK


def cmd_verify(args) -> int:
    targets = []
    if args.catalog:
        targets += [(f.name, f.diagram, f.knot) for f in catalog.CATALOG.values()]
    for path in args.files:
        try:
            name, D = _load(path)
        except InputError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
        targets.append((name, D, None))
    if not targets:
        print("error: nothing to verify (give files or --catalog)", file=sys.stderr)
        return EXIT_INPUT
    reports = [
        verify_diagram(D, name, knot=knot, kinks=not args.no_kinks,
                       include_diagonal=not args.f2_exclude_diagonal)
        for name, D, knot in targets
    ]
    if args.json:
        payload = [r.to_json() for r in reports]
        print(json.dumps(payload[0] if len(payload) == 1 else payload, indent=2, sort_keys=True))
    else:
        for r in reports:
            bad = r.failures()
            status = "ok" if not bad else f"FAILED {len(bad)}/{len(r.checks)}"
            print(f"{r.diagram}: {len(r.checks)} checks, {status}")
            for c in bad:
                print(f"  {c.name}: {c.witness}")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFY


def cmd_catalog(args) -> int:
    if args.action == "list":
        for f in catalog.CATALOG.values():
            print(f"{f.name:<16} {f.knot:<14} {f.source}")
        return EXIT_OK
    try:
        fixture = catalog.get(args.name)
    except catalog.UnknownName:
        print(f"error: unknown catalog name {args.name!r}", file=sys.stderr)
        return EXIT_INPUT
    if args.action == "show":
        sys.stdout.write(fixture.text)
        return EXIT_OK
    try:
        Path(args.path).write_text(fixture.text, encoding="utf-8")
    except OSError as exc:
        print(f"error: {args.path}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="uprightknot",
        description="Alexander polynomial, rho1 and theta of upright long-knot diagrams.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    diag = argparse.ArgumentParser(add_help=False)
    diag.add_argument("--f2-exclude-diagonal", action="store_true",
                      help="drop c0 == c1 pairs from the F2 sum (diagnostic; breaks Laurent-ness)")
    diag.add_argument("--json", action="store_true", help="emit JSON")

    c = sub.add_parser("compute", parents=[diag], help="compute invariants of UDF files")
    c.add_argument("files", nargs="+", metavar="FILE", help="UDF file, or - for stdin")
    c.add_argument("--invariant", choices=INVARIANTS + ("all",), default="all")
    c.add_argument("--stable", action="store_true", help="omit timings so output is reproducible")
    c.set_defaults(func=cmd_compute)

    v = sub.add_parser("verify", parents=[diag], help="run the verification suite")
    v.add_argument("files", nargs="*", metavar="FILE")
    v.add_argument("--catalog", action="store_true", help="verify every bundled fixture")
    v.add_argument("--no-kinks", action="store_true", help="skip kink-variant invariance checks")
    v.set_defaults(func=cmd_verify)

    k = sub.add_parser("catalog", help="bundled fixtures")
    ks = k.add_subparsers(dest="action", required=True)
    ks.add_parser("list")
    show = ks.add_parser("show")
    show.add_argument("name")
    emit = ks.add_parser("emit")
    emit.add_argument("name")
    emit.add_argument("path")
    k.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
