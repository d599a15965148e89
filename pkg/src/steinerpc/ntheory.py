"""Number-theoretic predicates behind the admissible orders.

Everything here works on plain Python ints and uses trial division, which is
plenty for the desk-scale orders this package handles.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


def factorize(n: int) -> list[tuple[int, int]]:
    """Return the prime factorization of ``n`` as ascending ``(prime, exponent)`` pairs."""
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    out: list[tuple[int, int]] = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def mult_order(x: int, p: int) -> int:
    """Multiplicative order of ``x`` modulo the prime ``p``."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    x %= p
    if x == 0:
        raise ValueError(f"{p} divides x; no multiplicative order")
    k = p - 1
    for q, _ in factorize(p - 1):
        while k % q == 0 and pow(x, k // q, p) == 1:
            k //= q
    return k


def in_P(p: int) -> bool:
    """True iff the odd prime ``p`` has ord_p(-2) divisible by 4."""
    if p == 2 or not is_prime(p):
        raise ValueError(f"in_P needs an odd prime, got {p}")
    return mult_order(-2, p) % 4 == 0


@dataclass(frozen=True)
class PrimeOrder:
    prime: int
    exponent: int
    order: int | None  # None when -2 is not a unit mod prime (prime == 2)
    ok: bool


@dataclass(frozen=True)
class AdmissibilityReport:
    v: int
    is_member: bool
    residue_ok: bool
    prime_orders: list[PrimeOrder] = field(default_factory=list)

    def failures(self) -> list[str]:
        """Human-readable reasons why ``v`` is not admissible (empty for members)."""
        out = []
        if not self.residue_ok:
            out.append(f"v={self.v}: {self.v} mod 30 = {self.v % 30}, need 27")
        for po in self.prime_orders:
            if po.ok:
                continue
            if po.order is None:
                out.append(f"v={self.v}: prime {po.prime} divides v-2 and -2 is not a unit mod {po.prime}")
            else:
                out.append(
                    f"v={self.v}: ord_{po.prime}(-2) = {po.order} is not divisible by 4"
                )
        return out


def in_V(v: int) -> AdmissibilityReport:
    if v < 1:
        raise ValueError(f"v must be positive, got {v}")
    residue_ok = v % 30 == 27
    orders: list[PrimeOrder] = []
    if v - 2 >= 1:
        for p, e in factorize(v - 2):
            if p == 2:
                orders.append(PrimeOrder(p, e, None, False))
                continue
            k = mult_order(-2, p)
            orders.append(PrimeOrder(p, e, k, k % 4 == 0))
    member = residue_ok and all(po.ok for po in orders)
    return AdmissibilityReport(v, member, residue_ok, orders)


def enumerate_V(bound: int) -> list[int]:
    """All admissible orders ``v <= bound`` in ascending order."""
    if bound < 1:
        raise ValueError(f"bound must be positive, got {bound}")
    return [v for v in range(27, bound + 1, 30) if in_V(v).is_member]


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]
