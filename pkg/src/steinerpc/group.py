"""Arithmetic in G = Z_5 x Z_p1 x ... x Z_pt.

Elements are coordinate tuples; coordinate ``i`` lives in the field Z_{p_i}.
Points are indexed in mixed radix with coordinate 0 most significant, so the
subgroup Z_5 x {0_H} sits at indices ``0, |H|, 2|H|, 3|H|, 4|H|``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import prod
from typing import Iterator

from .ntheory import factorize, in_V, is_prime

Scalar = int | Fraction


class AdmissibilityError(ValueError):
    """Raised when an order is outside the constructible family."""

    def __init__(self, report):
        self.report = report
        super().__init__("; ".join(report.failures()) or f"v={report.v} is not admissible")


@dataclass(frozen=True)
class GroupSpec:
    primes: tuple[int, ...]

    def __post_init__(self):
        primes = tuple(int(p) for p in self.primes)
        object.__setattr__(self, "primes", primes)
        if not primes or primes[0] != 5:
            raise ValueError(f"first prime must be 5, got {primes}")
        for p in primes:
            if p == 2 or not is_prime(p):
                raise ValueError(f"{p} is not an odd prime")
            if p == 3:
                raise ValueError("3 is not allowed: the construction needs a group without 3-torsion")
        if list(primes[1:]) != sorted(primes[1:]):
            raise ValueError(f"primes after 5 must be ascending, got {primes}")

    @classmethod
    def from_v(cls, v: int) -> GroupSpec:
        """Group for an admissible order ``v = 5n + 2``; refuses anything else."""
        report = in_V(v)
        if not report.is_member:
            raise AdmissibilityError(report)
        n = (v - 2) // 5
        h = [p for p, e in factorize(n) for _ in range(e)]
        return cls((5, *h))

    @property
    def order(self) -> int:
        return prod(self.primes)

    @property
    def h_order(self) -> int:
        return prod(self.primes[1:])

    @property
    def v(self) -> int:
        return self.order + 2

    @property
    def inf1(self) -> int:
        return self.order

    @property
    def inf2(self) -> int:
        return self.order + 1

    @cached_property
    def radix_weights(self) -> tuple[int, ...]:
        w = []
        acc = 1
        for p in reversed(self.primes):
            w.append(acc)
            acc *= p
        return tuple(reversed(w))

    def element(self, *coords: int) -> GroupElement:
        if len(coords) == 1 and not isinstance(coords[0], int):
            coords = tuple(coords[0])
        return GroupElement(tuple(coords), self)

    @property
    def zero(self) -> GroupElement:
        return GroupElement((0,) * len(self.primes), self)

    def elements(self) -> Iterator[GroupElement]:
        for i in range(self.order):
            yield self.from_index(i)

    def from_index(self, i: int) -> GroupElement:
        if not 0 <= i < self.order:
            raise IndexError(f"index {i} out of range for |G| = {self.order}")
        coords = []
        for w, p in zip(self.radix_weights, self.primes):
            coords.append((i // w) % p)
        return GroupElement(tuple(coords), self)

    def to_index(self, g: GroupElement) -> int:
        _check_same(g.spec, self)
        return sum(c * w for c, w in zip(g.coords, self.radix_weights))

    def in_subgroup(self, i: int) -> bool:
        """True iff point index ``i`` lies in Z_5 x {0_H}."""
        return i % self.h_order == 0


@dataclass(frozen=True)
class GroupElement:
    coords: tuple[int, ...]
    spec: GroupSpec = field(repr=False, compare=True)

    def __post_init__(self):
        if len(self.coords) != len(self.spec.primes):
            raise ValueError(
                f"expected {len(self.spec.primes)} coordinates, got {len(self.coords)}"
            )
        reduced = tuple(int(c) % p for c, p in zip(self.coords, self.spec.primes))
        object.__setattr__(self, "coords", reduced)

    def __add__(self, other: GroupElement) -> GroupElement:
        return add(self, other)

    def __sub__(self, other: GroupElement) -> GroupElement:
        return add(self, -other)

    def __neg__(self) -> GroupElement:
        return GroupElement(tuple(-c for c in self.coords), self.spec)

    def __rmul__(self, m: Scalar) -> GroupElement:
        return scalar_mul(m, self)

    @property
    def index(self) -> int:
        return self.spec.to_index(self)

    @property
    def h_part(self) -> tuple[int, ...]:
        return self.coords[1:]

    def is_zero(self) -> bool:
        return not any(self.coords)

    def in_subgroup(self) -> bool:
        """True iff this element lies in Z_5 x {0_H}."""
        return not any(self.coords[1:])

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.coords)) + ")"


def _check_same(a: GroupSpec, b: GroupSpec) -> None:
    if a != b:
        raise ValueError(f"group mismatch: {a.primes} vs {b.primes}")


def add(g: GroupElement, g2: GroupElement) -> GroupElement:
    _check_same(g.spec, g2.spec)
    return GroupElement(tuple(a + b for a, b in zip(g.coords, g2.coords)), g.spec)


def scalar_mul(m: Scalar, g: GroupElement) -> GroupElement:
    """Apply the rational scalar ``m = a/b`` coordinatewise in each field Z_{p_i}."""
    m = Fraction(m)
    a, b = m.numerator, m.denominator
    coords = []
    for c, p in zip(g.coords, g.spec.primes):
        if b % p == 0:
            raise ZeroDivisionError(f"denominator {b} is not invertible mod {p}")
        coords.append(a * pow(b, -1, p) * c)
    return GroupElement(tuple(coords), g.spec)


def double_neg(g: GroupElement) -> GroupElement:
    """-2g, the neighbour map of the deficiency graph."""
    return scalar_mul(-2, g)


def half_neg(g: GroupElement) -> GroupElement:
    """-g/2, inverse of :func:`double_neg`."""
    return scalar_mul(Fraction(-1, 2), g)


def to_index(g: GroupElement) -> int:
    return g.spec.to_index(g)


def from_index(i: int, spec: GroupSpec) -> GroupElement:
    return spec.from_index(i)


def edge_of_weight(g: GroupElement) -> tuple[GroupElement, GroupElement]:
    """Endpoints {-g, 2g} of the deficiency edge whose endpoints sum to ``g``."""
    return -g, scalar_mul(2, g)


def cycles_of_X(spec: GroupSpec) -> list[list[GroupElement]]:
    """Cycles of the deficiency graph, each listed by edge weights (w, -2w, 4w, ...).

    Every cycle starts at its least-index weight; cycles come in order of
    their starting weight.
    """
    seen = bytearray(spec.order)
    seen[0] = 1
    cycles = []
    for i in range(1, spec.order):
        if seen[i]:
            continue
        start = spec.from_index(i)
        cyc = [start]
        seen[i] = 1
        w = double_neg(start)
        while w != start:
            cyc.append(w)
            seen[w.index] = 1
            w = double_neg(w)
        cycles.append(cyc)
    return cycles
