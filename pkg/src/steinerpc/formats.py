"""Reading and writing system and certificate files.

Text system file::

    sts v=27 b=117 source=construct
    # primes 5 5
    # roles B0=90 BINF=20 BSTAR=7
    # points 25 26 are inf1 inf2
    0 1 4 B0
    ...

Triple lines hold three ascending 0-based point indices and an optional role
tag. Comment lines are kept verbatim so that reading and re-writing a file
reproduces it byte for byte.

The structured format is JSON carrying the same triples plus the group, the
role tags and the colour table, which is enough to replay a certificate
without rebuilding anything.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from . import __version__
from .construct import ColorTable, Role, TripleSystem
from .group import GroupSpec
from .verify import Certificate

HEADER_RE = re.compile(r"^sts v=(\d+) b=(\d+) source=(\S+)$")
ROLE_NAMES = ("B0", "BINF", "BSTAR", "PLAIN")


class FormatError(ValueError):
    pass


@dataclass
class SystemFile:
    system: TripleSystem
    comments: list[str] = field(default_factory=list)
    colors: ColorTable | None = None

    @property
    def spec(self) -> GroupSpec | None:
        return self.system.spec


def default_comments(system: TripleSystem) -> list[str]:
    out = []
    if system.spec is not None:
        out.append("# primes " + " ".join(map(str, system.spec.primes)))
    if system.roles is not None:
        counts = system.role_counts()
        out.append("# roles " + " ".join(f"{r.value}={counts[r]}" for r in Role if r in counts))
    if system.spec is not None:
        out.append(f"# points {system.spec.inf1} {system.spec.inf2} are inf1 inf2")
    return out


def format_system(system: TripleSystem, comments: list[str] | None = None) -> str:
    if comments is None:
        comments = default_comments(system)
    lines = [f"sts v={system.v} b={len(system.triples)} source={system.source}", *comments]
    roles = system.roles
    for k, (a, b, c) in enumerate(system.triples):
        line = f"{a} {b} {c}"
        if roles is not None:
            line += " " + roles[k].value
        lines.append(line)
    return "\n".join(lines) + "\n"


def parse_system(text: str) -> SystemFile:
    lines = text.splitlines()
    if not lines:
        raise FormatError("empty file")
    m = HEADER_RE.match(lines[0])
    if not m:
        raise FormatError(f"bad header line: {lines[0]!r}")
    v, b, source = int(m[1]), int(m[2]), m[3]
    comments, triples, roles = [], [], []
    spec = None
    for lineno, line in enumerate(lines[1:], start=2):
        if line.startswith("#"):
            comments.append(line)
            parts = line[1:].split()
            if parts[:1] == ["primes"]:
                try:
                    spec = GroupSpec(tuple(int(p) for p in parts[1:]))
                except ValueError as exc:
                    raise FormatError(f"line {lineno}: {exc}") from None
            continue
        tokens = line.split(" ")
        if len(tokens) not in (3, 4):
            raise FormatError(f"line {lineno}: expected 3 points and an optional role, got {line!r}")
        try:
            triple = tuple(int(x) for x in tokens[:3])
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer point in {line!r}") from None
        if len(tokens) == 4:
            if tokens[3] not in ROLE_NAMES:
                raise FormatError(f"line {lineno}: unknown role {tokens[3]!r}")
            roles.append(Role(tokens[3]))
        triples.append(triple)
    if roles and len(roles) != len(triples):
        raise FormatError("role tags must be present on every triple line or on none")
    if b != len(triples):
        raise FormatError(f"header says b={b} but file has {len(triples)} triple lines")
    if spec is not None and spec.v != v:
        raise FormatError(f"primes give v={spec.v}, header says v={v}")
    try:
        system = TripleSystem(v, triples, roles or None, spec, source)
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    if system.triples != triples:
        raise FormatError("triple points must be listed in ascending order")
    return SystemFile(system, comments)


def format_structured(system: TripleSystem, colors: ColorTable | None = None) -> str:
    doc = {
        "format": "sts-structured",
        "version": 1,
        "v": system.v,
        "source": system.source,
        "primes": list(system.spec.primes) if system.spec else None,
        "infinity_points": (
            {"inf1": system.spec.inf1, "inf2": system.spec.inf2} if system.spec else None
        ),
        "triples": [list(t) for t in system.triples],
        "roles": [r.value for r in system.roles] if system.roles else None,
        "gamma": (
            {"h1": sorted(map(list, colors.h1)), "h2": sorted(map(list, colors.h2))}
            if colors is not None
            else None
        ),
    }
    return json.dumps(doc, indent=1) + "\n"


def parse_structured(text: str) -> SystemFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or doc.get("format") != "sts-structured":
        raise FormatError("not a structured system file")
    try:
        spec = GroupSpec(tuple(doc["primes"])) if doc.get("primes") else None
        system = TripleSystem(
            int(doc["v"]),
            [tuple(t) for t in doc["triples"]],
            doc.get("roles"),
            spec,
            doc.get("source", "plain"),
        )
        colors = None
        if doc.get("gamma"):
            colors = ColorTable(
                frozenset(tuple(h) for h in doc["gamma"]["h1"]),
                frozenset(tuple(h) for h in doc["gamma"]["h2"]),
            )
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed structured file: {exc}") from None
    return SystemFile(system, [], colors)


def load_system(path) -> SystemFile:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return parse_structured(text)
    return parse_system(text)


def format_certificate(cert: Certificate) -> str:
    doc = {
        "certificate": "no-parallel-class premises",
        "v": cert.v,
        "primes": list(cert.primes),
        "premises": [
            {
                "id": p.id,
                "description": p.description,
                "status": "pass" if p.passed else "fail",
                "checked": p.checked,
                "detail": p.detail,
            }
            for p in cert.premises
        ],
        "verdict": "valid" if cert.valid else "invalid",
        "summary": cert.verdict,
        "toolkit": f"steinerpc {__version__}",
    }
    return json.dumps(doc, indent=2) + "\n"
