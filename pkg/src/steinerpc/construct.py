"""Build the Steiner triple system with no parallel class for an admissible order.

Point layout: group elements take indices ``0 .. |G|-1`` (mixed radix, see
:mod:`steinerpc.group`), the two extra points are ``inf1 = v-2`` and
``inf2 = v-1``.

The system is the union of three block families:

* ``B0``: zero-sum triples of G, minus the two that lie inside Z_5 x {0_H};
* ``BINF``: ``{-g, 2g, inf_gamma(g)}`` for every g in Z_5 x (H minus 0);
* ``BSTAR``: a fixed STS(7) on Z_5 x {0_H} plus the two infinite points.

The subgroup triples are dropped from ``B0`` because the STS(7) already covers
every pair among its seven points.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .group import GroupElement, GroupSpec

Triple = tuple[int, int, int]
HElem = tuple[int, ...]


class Role(str, enum.Enum):
    B0 = "B0"
    BINF = "BINF"
    BSTAR = "BSTAR"
    PLAIN = "PLAIN"


@dataclass
class TripleSystem:
    """A triple list on points ``0 .. v-1`` with optional role tags.

    Malformed triples (wrong arity, repeated or out-of-range points) are
    rejected here. Coverage defects such as duplicate triples are left for
    :func:`steinerpc.verify.check_sts` to report.
    """

    v: int
    triples: list[Triple]
    roles: list[Role] | None = None
    spec: GroupSpec | None = None
    source: str = "plain"

    def __post_init__(self):
        clean = []
        for t in self.triples:
            if len(t) != 3:
                raise ValueError(f"triple {t!r} does not have 3 points")
            a, b, c = sorted(int(x) for x in t)
            if a == b or b == c:
                raise ValueError(f"triple {t!r} repeats a point")
            if a < 0 or c >= self.v:
                raise ValueError(f"triple {t!r} has a point outside [0, {self.v})")
            clean.append((a, b, c))
        self.triples = clean
        if self.roles is not None:
            self.roles = [Role(r) for r in self.roles]
            if len(self.roles) != len(self.triples):
                raise ValueError("roles and triples differ in length")

    def __len__(self) -> int:
        return len(self.triples)

    def role_counts(self) -> dict[Role, int]:
        counts: dict[Role, int] = {}
        for r in self.roles or [Role.PLAIN] * len(self.triples):
            counts[r] = counts.get(r, 0) + 1
        return counts

    def of_role(self, role: Role) -> list[Triple]:
        if self.roles is None:
            raise ValueError("system carries no role tags")
        return [t for t, r in zip(self.triples, self.roles) if r is role]


@dataclass(frozen=True)
class ThetaOrbit:
    """Orbit of h -> -2h on H minus 0, as a cyclic sequence of H-coordinates."""

    elements: tuple[HElem, ...]
    h_primes: tuple[int, ...] = field(repr=False, compare=False)

    @property
    def representative(self) -> HElem:
        return self.elements[0]

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, h) -> bool:
        return h in self.elements

    def rotated_to(self, h: HElem) -> ThetaOrbit:
        k = self.elements.index(h)
        return ThetaOrbit(self.elements[k:] + self.elements[:k], self.h_primes)

    def negated(self) -> frozenset[HElem]:
        return frozenset(_h_neg(h, self.h_primes) for h in self.elements)


@dataclass(frozen=True)
class ColorTable:
    h1: frozenset[HElem]
    h2: frozenset[HElem]

    def gamma(self, g: GroupElement | HElem) -> int:
        h = g.h_part if isinstance(g, GroupElement) else tuple(g)
        if h in self.h1:
            return 1
        if h in self.h2:
            return 2
        raise KeyError(f"{h} is outside the coloring domain")


@dataclass
class Construction:
    """Everything produced on the way to the final system, kept for certification."""

    spec: GroupSpec
    orbits: list[ThetaOrbit]
    reps: dict[int, HElem]
    colors: ColorTable
    system: TripleSystem


def _h_neg(h: HElem, hp: Sequence[int]) -> HElem:
    return tuple((-c) % p for c, p in zip(h, hp))


def _theta(h: HElem, hp: Sequence[int]) -> HElem:
    return tuple((-2 * c) % p for c, p in zip(h, hp))


def _h_index(h: HElem, hp: Sequence[int]) -> int:
    i = 0
    for c, p in zip(h, hp):
        i = i * p + c
    return i


def _h_from_index(i: int, hp: Sequence[int]) -> HElem:
    out = []
    for p in reversed(hp):
        out.append(i % p)
        i //= p
    return tuple(reversed(out))


def theta_orbits(spec: GroupSpec) -> list[ThetaOrbit]:
    """Orbits of theta(h) = -2h on H minus 0, ordered by their least-index member."""
    hp = spec.primes[1:]
    n = spec.h_order
    seen = bytearray(n)
    seen[0] = 1
    orbits = []
    for i in range(1, n):
        if seen[i]:
            continue
        start = _h_from_index(i, hp)
        elems = [start]
        seen[i] = 1
        h = _theta(start, hp)
        while h != start:
            elems.append(h)
            seen[_h_index(h, hp)] = 1
            h = _theta(h, hp)
        orbits.append(ThetaOrbit(tuple(elems), hp))
    return orbits


def choose_representatives(orbits: Sequence[ThetaOrbit]) -> dict[int, HElem]:
    """Pick h_Y for each orbit so that paired orbits get negated representatives.

    Returns a mapping from orbit position to representative.
    """
    owner: dict[HElem, int] = {}
    for k, orb in enumerate(orbits):
        for h in orb.elements:
            owner[h] = k
    reps: dict[int, HElem] = {}
    for k, orb in enumerate(orbits):
        if k in reps:
            continue
        hp = orb.h_primes
        partner = owner[_h_neg(orb.elements[0], hp)]
        pool = orb.elements if partner == k else orb.elements + orbits[partner].elements
        h = min(pool, key=lambda x: _h_index(x, hp))
        reps[owner[h]] = h
        if partner != k:
            reps[owner[_h_neg(h, hp)]] = _h_neg(h, hp)
    return reps


def color_table(orbits: Sequence[ThetaOrbit], reps: dict[int, HElem]) -> ColorTable:
    h1: set[HElem] = set()
    h2: set[HElem] = set()
    for k, orb in enumerate(orbits):
        if len(orb) % 2:
            raise ValueError(
                f"theta-orbit of {orb.representative} has odd size {len(orb)}; "
                "the group is outside the admissible family"
            )
        seq = orb.rotated_to(reps[k]).elements
        h1.update(seq[0::2])
        h2.update(seq[1::2])
    return ColorTable(frozenset(h1), frozenset(h2))


def _zero_sum_triples(spec: GroupSpec, chunk: int = 256) -> Iterable[Triple]:
    """All 3-subsets {i < j < k} of G with g_i + g_j + g_k = 0, lexicographic."""
    n = spec.order
    idx = np.arange(n, dtype=np.int64)
    weights = spec.radix_weights
    coords = [(idx // w) % p for w, p in zip(weights, spec.primes)]
    for lo in range(0, n, chunk):
        hi = min(n, lo + chunk)
        third = np.zeros((hi - lo, n), dtype=np.int64)
        for c, w, p in zip(coords, weights, spec.primes):
            third += (-(c[lo:hi, None] + c[None, :])) % p * w
        rows = idx[lo:hi, None]
        keep = (idx[None, :] > rows) & (third > idx[None, :])
        ii, jj = np.nonzero(keep)
        kk = third[ii, jj]
        yield from zip((ii + lo).tolist(), jj.tolist(), kk.tolist())


def build_B0(spec: GroupSpec) -> list[Triple]:
    """Zero-sum triples of G except the two inside Z_5 x {0_H}."""
    return [t for t in _zero_sum_triples(spec) if not all(spec.in_subgroup(x) for x in t)]


def binf_domain(spec: GroupSpec) -> Iterable[GroupElement]:
    """Z_5 x (H minus 0) in index order."""
    for i in range(spec.order):
        if not spec.in_subgroup(i):
            yield spec.from_index(i)


def build_Binf(spec: GroupSpec, colors: ColorTable) -> list[Triple]:
    inf = (spec.inf1, spec.inf2)
    out = []
    for g in binf_domain(spec):
        a = (-g).index
        b = (2 * g).index
        out.append(tuple(sorted((a, b, inf[colors.gamma(g) - 1]))))
    out.sort()
    return out


# STS(7) on labels 0..4 (meaning (a, 0_H)) plus the two infinite points;
# {0, inf1, inf2} is deliberately not a block.
INF1 = "inf1"
INF2 = "inf2"
BSTAR_BLOCKS: tuple[tuple[int | str, ...], ...] = (
    (1, 2, 4),
    (0, 1, 3),
    (2, 3, INF1),
    (0, 4, INF1),
    (1, INF1, INF2),
    (0, 2, INF2),
    (3, 4, INF2),
)


def build_Bstar(spec: GroupSpec) -> list[Triple]:
    def point(x):
        if x == INF1:
            return spec.inf1
        if x == INF2:
            return spec.inf2
        return spec.element(x, *([0] * (len(spec.primes) - 1))).index

    return sorted(tuple(sorted(point(x) for x in blk)) for blk in BSTAR_BLOCKS)


def build_construction(v: int) -> Construction:
    spec = GroupSpec.from_v(v)
    orbits = theta_orbits(spec)
    reps = choose_representatives(orbits)
    colors = color_table(orbits, reps)
    tagged = (
        [(t, Role.B0) for t in build_B0(spec)]
        + [(t, Role.BINF) for t in build_Binf(spec, colors)]
        + [(t, Role.BSTAR) for t in build_Bstar(spec)]
    )
    tagged.sort(key=lambda tr: tr[0])
    system = TripleSystem(
        v=spec.v,
        triples=[t for t, _ in tagged],
        roles=[r for _, r in tagged],
        spec=spec,
        source="construct",
    )
    return Construction(spec, orbits, reps, colors, system)


def construct_sts(v: int) -> TripleSystem:
    """Steiner triple system of order ``v`` with no parallel class.

    Raises :class:`steinerpc.group.AdmissibilityError` when ``v`` is not an
    admissible order.
    """
    return build_construction(v).system
