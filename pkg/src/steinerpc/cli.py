"""Command-line entry point.

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 search timeout.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .construct import build_construction
from .cover import COUNT_ALL, FIND_ONE, PROVE_NONE, find_parallel_class
from .formats import FormatError, format_certificate, format_structured, format_system, load_system
from .group import AdmissibilityError
from .ntheory import enumerate_V, factorize
from .verify import certify_no_parallel_class, check_sts

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_TIMEOUT = 3

SEARCH_MODES = {"find": FIND_ONE, "count": COUNT_ALL, "prove-none": PROVE_NONE}
WEIGHT_PREMISES = ("P2", "P3", "P4", "P5", "P6", "P7", "P10")
GAMMA_PREMISES = ("P8", "P9")


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _factor_str(n: int) -> str:
    return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in factorize(n))


def cmd_enumerate(args) -> int:
    if args.max < 1:
        _err("max must be at least 1")
        return EXIT_USAGE
    for v in enumerate_V(args.max):
        n = (v - 2) // 5
        print(f"{v}\tn={n}\t{_factor_str(n)}")
    return EXIT_OK


def cmd_construct(args) -> int:
    try:
        c = build_construction(args.v)
    except AdmissibilityError as exc:
        _err(str(exc))
        return EXIT_USAGE
    if args.format == "structured":
        text = format_structured(c.system, c.colors)
    else:
        text = format_system(c.system)
    _write(text, args.out)
    if args.out not in (None, "-"):
        print(f"wrote v={c.system.v} b={len(c.system)} to {args.out}", file=sys.stderr)
    return EXIT_OK


def _print_premises(cert, ids=None) -> bool:
    ok = True
    for p in cert.premises:
        if ids is not None and p.id not in ids:
            continue
        status = "pass" if p.passed else "FAIL"
        line = f"{p.id:<4} {status}  {p.description} [{p.checked} checked]"
        if not p.passed and p.detail:
            line += f": {p.detail}"
        print(line)
        ok = ok and p.passed
    return ok


def cmd_verify(args) -> int:
    try:
        sf = load_system(args.path)
    except (OSError, FormatError) as exc:
        _err(str(exc))
        return EXIT_USAGE
    system = sf.system
    report = check_sts(system)
    if report.ok:
        print(f"ok: v={system.v}, {len(system)} triples, all {report.pairs_checked} pairs covered exactly once")
    else:
        print(f"FAIL: v={system.v}, {len(system)} triples")
        for line in report.violations():
            print(f"  {line}")
    ok = report.ok
    if args.weights or args.gamma:
        if system.roles is None or system.spec is None:
            _err("--weights/--gamma need role tags and a '# primes' comment in the file")
            return EXIT_USAGE
        cert = certify_no_parallel_class(system, system.spec, sf.colors)
        ids = (WEIGHT_PREMISES if args.weights else ()) + (GAMMA_PREMISES if args.gamma else ())
        ok = _print_premises(cert, ids) and ok
    return EXIT_OK if ok else EXIT_FAIL


def cmd_certify(args) -> int:
    try:
        c = build_construction(args.v)
    except AdmissibilityError as exc:
        _err(str(exc))
        return EXIT_USAGE
    cert = certify_no_parallel_class(c.system, c.spec, c.colors)
    _print_premises(cert)
    print(f"verdict: {'valid' if cert.valid else 'invalid'} ({cert.verdict})")
    if args.out:
        Path(args.out).write_text(format_certificate(cert), encoding="utf-8")
    return EXIT_OK if cert.valid else EXIT_FAIL


def cmd_search_pc(args) -> int:
    try:
        sf = load_system(args.path)
    except (OSError, FormatError) as exc:
        _err(str(exc))
        return EXIT_USAGE
    system = sf.system
    mode = SEARCH_MODES[args.mode]
    try:
        out = find_parallel_class(system, mode, args.timeout_secs, workers=args.workers)
    except ValueError as exc:
        _err(str(exc))
        return EXIT_USAGE
    print(out.summary())
    if out.witness is not None and mode != COUNT_ALL:
        for r in out.witness:
            print("  " + " ".join(map(str, system.triples[r])))
    print(f"nodes {out.nodes_explored}, elapsed {out.elapsed:.3f}s", file=sys.stderr)
    if out.status == "timeout":
        return EXIT_TIMEOUT
    if mode == PROVE_NONE and out.status == "found":
        return EXIT_FAIL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="steinerpc",
        description="Steiner triple systems with no parallel class.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list admissible orders up to MAX")
    p.add_argument("max", type=int)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("construct", help="build the system of order V")
    p.add_argument("v", type=int)
    p.add_argument("-o", "--out", help="output path (default: stdout)")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check a system file")
    p.add_argument("path")
    p.add_argument("--weights", action="store_true", help="also check triple weights (needs roles)")
    p.add_argument("--gamma", action="store_true", help="also check the colouring properties")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("certify", help="construct order V and check every premise")
    p.add_argument("v", type=int)
    p.add_argument("-o", "--out", help="write the certificate here")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("search-pc", help="exact-cover search for a parallel class")
    p.add_argument("path")
    p.add_argument("--mode", choices=tuple(SEARCH_MODES), default="find")
    p.add_argument("--timeout-secs", type=float, default=None)
    p.add_argument("--workers", type=int, default=1, help="processes for first-level branch splitting")
    p.set_defaults(func=cmd_search_pc)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
