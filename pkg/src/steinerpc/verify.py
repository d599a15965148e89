"""Independent checks on triple systems and the no-parallel-class certificate.

The certificate replays, on a concrete system, every factual premise that the
weight argument against parallel classes relies on:

P1  every pair of points lies in exactly one triple
P2  every B0 triple has weight 0
P3  every BSTAR triple has weight in Z_5 x {0_H}
P4  every BINF triple has weight in Z_5 x (H minus 0)
P5  exactly one triple holds both infinite points, and its weight is nonzero
P6  any two BSTAR triples meet
P7  every BINF triple holds exactly one infinite point
P8  gamma(g) != gamma(-2g) on Z_5 x (H minus 0)
P9  g + g' in Z_5 x {0_H} implies gamma(g) == gamma(g')
P10 the elements of G sum to 0

Weights treat both infinite points as 0. gamma is read back from the BINF
triples of the system itself (which infinite point the edge of weight g is
joined to), so a tampered file is judged on what it contains.

Given these, a parallel class would have total weight 0 while its two
triples through inf1 and inf2 would have to come both from BSTAR (they meet)
or both from BINF (contradicting P9). The certificate records the premises;
it does not re-derive that deduction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

from .construct import ColorTable, Role, Triple, TripleSystem
from .group import GroupElement, GroupSpec, cycles_of_X, double_neg, edge_of_weight


@dataclass
class StsReport:
    v: int
    n_triples: int
    expected_triples: int | None
    uncovered: list[tuple[int, int]] = field(default_factory=list)
    multiply_covered: list[tuple[int, int, int]] = field(default_factory=list)
    bad_replication: list[tuple[int, int]] = field(default_factory=list)
    pairs_checked: int = 0

    @property
    def ok(self) -> bool:
        return (
            self.expected_triples == self.n_triples
            and not self.uncovered
            and not self.multiply_covered
            and not self.bad_replication
        )

    def violations(self) -> list[str]:
        out = []
        if self.expected_triples is None:
            out.append(f"v={self.v} is not 1 or 3 mod 6; no Steiner triple system exists")
        elif self.expected_triples != self.n_triples:
            out.append(f"expected {self.expected_triples} triples, found {self.n_triples}")
        out += [f"uncovered pair {a} {b}" for a, b in self.uncovered]
        out += [f"pair {a} {b} covered {k} times" for a, b, k in self.multiply_covered]
        out += [f"point {x} lies in {k} triples" for x, k in self.bad_replication]
        return out


def check_sts(system: TripleSystem) -> StsReport:
    """Pair-coverage audit; defects come back as data, never as exceptions."""
    v = system.v
    expected = v * (v - 1) // 6 if v % 6 in (1, 3) else None
    report = StsReport(v, len(system.triples), expected, pairs_checked=comb(v, 2))
    if system.triples:
        t = np.asarray(system.triples, dtype=np.int64)
        keys = np.concatenate([t[:, 0] * v + t[:, 1], t[:, 0] * v + t[:, 2], t[:, 1] * v + t[:, 2]])
        counts = np.bincount(keys, minlength=v * v).reshape(v, v)
        rep = np.bincount(t.ravel(), minlength=v)
    else:
        counts = np.zeros((v, v), dtype=np.int64)
        rep = np.zeros(v, dtype=np.int64)
    upper = np.triu(np.ones((v, v), dtype=bool), k=1)
    a, b = np.nonzero(upper & (counts == 0))
    report.uncovered = list(zip(a.tolist(), b.tolist()))
    a, b = np.nonzero(upper & (counts > 1))
    report.multiply_covered = list(zip(a.tolist(), b.tolist(), counts[a, b].tolist()))
    want = (v - 1) // 2
    (bad,) = np.nonzero(rep != want)
    report.bad_replication = list(zip(bad.tolist(), rep[bad].tolist()))
    return report


def triple_weight(triple: Triple, spec: GroupSpec) -> GroupElement:
    """Sum in G of the triple's points, the two infinite points counting as 0."""
    w = spec.zero
    for x in triple:
        if not 0 <= x < spec.v:
            raise ValueError(f"point {x} is outside [0, {spec.v})")
        if x < spec.order:
            w = w + spec.from_index(x)
    return w


def gamma_from_system(system: TripleSystem, spec: GroupSpec) -> tuple[dict[int, int], list[str]]:
    """Read the colouring off the BINF triples: weight index -> 1 (inf1) or 2 (inf2).

    Also returns problems found while reading (missing or repeated weights,
    triples without exactly one infinite point).
    """
    gamma: dict[int, int] = {}
    problems = []
    for t in system.of_role(Role.BINF):
        infs = [x for x in t if x >= spec.order]
        if len(infs) != 1:
            problems.append(f"BINF triple {t} holds {len(infs)} infinite points")
            continue
        w = triple_weight(t, spec).index
        color = 1 if infs[0] == spec.inf1 else 2
        if w in gamma:
            problems.append(f"weight {spec.from_index(w)} appears on two BINF triples")
        gamma[w] = color
    for i in range(spec.order):
        if not spec.in_subgroup(i) and i not in gamma:
            problems.append(f"no BINF triple of weight {spec.from_index(i)}")
    return gamma, problems


@dataclass
class Premise:
    id: str
    description: str
    passed: bool
    checked: int
    detail: str = ""


@dataclass
class Certificate:
    v: int
    primes: tuple[int, ...]
    premises: list[Premise]

    @property
    def valid(self) -> bool:
        return all(p.passed for p in self.premises)

    @property
    def verdict(self) -> str:
        if self.valid:
            return "all premises of the no-parallel-class argument verified"
        return "premise check failed"

    def premise(self, pid: str) -> Premise:
        for p in self.premises:
            if p.id == pid:
                return p
        raise KeyError(pid)


def _first(items, limit=3) -> str:
    items = list(items)
    text = "; ".join(str(x) for x in items[:limit])
    return text + (f" (+{len(items) - limit} more)" if len(items) > limit else "")


def certify_no_parallel_class(
    system: TripleSystem, spec: GroupSpec | None = None, colors: ColorTable | None = None
) -> Certificate:
    """Check premises P1-P10 exhaustively for a role-tagged constructed system.

    When ``colors`` is given, P8 also requires the colouring read from the
    system to agree with it.
    """
    if system.roles is None:
        raise ValueError("certification needs role tags on every triple")
    spec = spec or system.spec
    if spec is None:
        raise ValueError("certification needs the group the system was built on")
    if spec.v != system.v:
        raise ValueError(f"group gives v={spec.v} but system has v={system.v}")

    premises = []
    sts = check_sts(system)
    premises.append(
        Premise("P1", "every pair covered exactly once", sts.ok, sts.pairs_checked, _first(sts.violations()))
    )

    weights = {r: [] for r in Role}
    for t, r in zip(system.triples, system.roles):
        weights[r].append((t, triple_weight(t, spec)))

    bad = [t for t, w in weights[Role.B0] if not w.is_zero()]
    premises.append(Premise("P2", "B0 triples have weight 0", not bad, len(weights[Role.B0]), _first(bad)))

    bad = [t for t, w in weights[Role.BSTAR] if not w.in_subgroup()]
    premises.append(
        Premise("P3", "BSTAR weights lie in Z5 x {0_H}", not bad, len(weights[Role.BSTAR]), _first(bad))
    )

    bad = [t for t, w in weights[Role.BINF] if w.in_subgroup()]
    premises.append(
        Premise("P4", "BINF weights lie in Z5 x (H minus 0)", not bad, len(weights[Role.BINF]), _first(bad))
    )

    both = [t for t in system.triples if spec.inf1 in t and spec.inf2 in t]
    ok5 = len(both) == 1 and not triple_weight(both[0], spec).is_zero()
    detail = f"{both[0]} has weight {triple_weight(both[0], spec)}" if len(both) == 1 else f"{len(both)} such triples"
    premises.append(Premise("P5", "the inf1-inf2 triple has nonzero weight", ok5, len(both), detail))

    bstar = system.of_role(Role.BSTAR)
    pairs = list(combinations(bstar, 2))
    bad = [(s, t) for s, t in pairs if not set(s) & set(t)]
    premises.append(Premise("P6", "any two BSTAR triples intersect", not bad, len(pairs), _first(bad)))

    bad = [t for t in system.of_role(Role.BINF) if sum(x >= spec.order for x in t) != 1]
    premises.append(
        Premise("P7", "each BINF triple holds one infinite point", not bad, len(weights[Role.BINF]), _first(bad))
    )

    gamma, problems = gamma_from_system(system, spec)
    bad = list(problems)
    for i, c in gamma.items():
        j = double_neg(spec.from_index(i)).index
        if gamma.get(j) == c:
            bad.append(f"gamma({spec.from_index(i)}) == gamma({spec.from_index(j)}) == {c}")
        if colors is not None and colors.gamma(spec.from_index(i)) != c:
            bad.append(f"system colour of {spec.from_index(i)} disagrees with the colour table")
    premises.append(Premise("P8", "gamma(g) != gamma(-2g)", not bad, len(gamma), _first(bad)))

    # g + g' lands in Z5 x {0_H} exactly when their H-parts are negatives, so
    # checking one colour per class {(a, h), (a', -h)} covers all such pairs.
    classes: dict[tuple, set[int]] = {}
    for i, c in gamma.items():
        h = spec.from_index(i).h_part
        key = min(h, tuple((-x) % p for x, p in zip(h, spec.primes[1:])))
        classes.setdefault(key, set()).add(c)
    bad = [k for k, cs in classes.items() if len(cs) > 1]
    premises.append(
        Premise("P9", "g + g' in Z5 x {0_H} implies equal gamma", not bad and not problems, len(gamma), _first(bad))
    )

    total = spec.zero
    for g in spec.elements():
        total = total + g
    premises.append(Premise("P10", "elements of G sum to 0", total.is_zero(), spec.order, f"sum = {total}"))

    return Certificate(system.v, spec.primes, premises)


def uncovered_pairs_of_B0(spec: GroupSpec) -> set[tuple[int, int]]:
    """Pairs of G missed by the full zero-sum family, found by direct enumeration."""
    elems = [g.coords for g in spec.elements()]
    primes = spec.primes
    weights = spec.radix_weights
    out = set()
    for i in range(spec.order):
        gi = elems[i]
        for j in range(i + 1, spec.order):
            gj = elems[j]
            k = sum(((-(a + b)) % p) * w for a, b, p, w in zip(gi, gj, primes, weights))
            if k == i or k == j:
                out.add((i, j))
    return out


def deficiency_edges(spec: GroupSpec) -> set[tuple[int, int]]:
    """Edge set of the deficiency graph, as vertex pairs read from its cycles."""
    out = set()
    for cyc in cycles_of_X(spec):
        for w in cyc:
            a, b = (x.index for x in edge_of_weight(w))
            out.add((min(a, b), max(a, b)))
    return out


def parallel_class_weight(triples, spec: GroupSpec) -> GroupElement:
    total = spec.zero
    for t in triples:
        total = total + triple_weight(t, spec)
    return total
