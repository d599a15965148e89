import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from steinerpc.ntheory import enumerate_V, factorize, in_P, in_V, is_prime, mult_order, primes_up_to


def brute_order(x, p):
    k, y = 1, x % p
    while y != 1:
        y = y * x % p
        k += 1
    return k


def brute_V(bound):
    out = []
    for v in range(1, bound + 1):
        if v % 30 != 27:
            continue
        if all(brute_order(-2, p) % 4 == 0 for p in sympy.primefactors(v - 2)):
            out.append(v)
    return out


@pytest.mark.parametrize("n, expected", [(1, []), (25, [(5, 2)]), (85, [(5, 1), (17, 1)])])
def test_factorize_examples(n, expected):
    assert factorize(n) == expected


def test_factorize_matches_sympy():
    for n in range(1, 3000):
        assert factorize(n) == sorted(sympy.factorint(n).items())


@given(st.integers(min_value=1, max_value=10**7))
def test_factorize_product_and_primality(n):
    fs = factorize(n)
    prod = 1
    for p, e in fs:
        assert is_prime(p)
        prod *= p**e
    assert prod == n
    assert [p for p, _ in fs] == sorted({p for p, _ in fs})


def test_factorize_rejects_zero():
    with pytest.raises(ValueError):
        factorize(0)


def test_is_prime_matches_sieve():
    ps = set(primes_up_to(5000))
    assert all(is_prime(n) == (n in ps) for n in range(5001))


@pytest.mark.parametrize("x, p, k", [(-2, 5, 4), (1, 7, 1), (-2, 11, 5), (-2, 41, 20), (-2, 73, 18)])
def test_mult_order_examples(x, p, k):
    assert mult_order(x, p) == k


def test_mult_order_matches_brute_force():
    for p in primes_up_to(300)[1:]:
        for x in range(1, p):
            k = mult_order(x, p)
            assert k == brute_order(x, p)
            assert (p - 1) % k == 0


def test_mult_order_errors():
    with pytest.raises(ValueError):
        mult_order(10, 5)
    with pytest.raises(ValueError):
        mult_order(2, 9)


@pytest.mark.parametrize("p, member", [(5, True), (11, False), (73, False), (41, True), (13, True)])
def test_in_P_examples(p, member):
    assert in_P(p) is member


@pytest.mark.parametrize("bad", [2, 9, 1, 15])
def test_in_P_rejects_non_odd_primes(bad):
    with pytest.raises(ValueError):
        in_P(bad)


def test_in_P_mod8_characterization():
    for p in primes_up_to(1000)[1:]:
        if p % 8 == 5:
            assert in_P(p)
        if p % 8 in (3, 7):
            assert not in_P(p)
    ones = [p for p in primes_up_to(1000) if p % 8 == 1]
    assert any(in_P(p) for p in ones) and not all(in_P(p) for p in ones)


def test_in_V_examples():
    r = in_V(27)
    assert r.is_member and r.residue_ok
    assert [(po.prime, po.exponent, po.order) for po in r.prime_orders] == [(5, 2, 4)]

    r = in_V(57)
    assert not r.is_member and r.residue_ok
    assert any(po.prime == 11 and po.order == 5 and not po.ok for po in r.prime_orders)
    assert "ord_11(-2) = 5" in r.failures()[0]

    r = in_V(33)
    assert not r.is_member and not r.residue_ok


@given(st.integers(min_value=3, max_value=10**6))
def test_in_V_report_invariants(v):
    r = in_V(v)
    prod = 1
    for po in r.prime_orders:
        assert (v - 2) % po.prime == 0
        prod *= po.prime**po.exponent
    assert prod == v - 2
    assert r.is_member == (r.residue_ok and all(po.ok for po in r.prime_orders))


def test_enumerate_V_examples():
    assert enumerate_V(26) == []
    assert enumerate_V(300) == [27, 87, 147, 207, 267]
    assert 627 in enumerate_V(700)


def test_enumerate_V_matches_brute_force():
    got = enumerate_V(5000)
    assert got == brute_V(5000)
    for v in got:
        assert v % 30 == 27
        assert (v - 2) % 5 == 0 and ((v - 2) // 5) % 6 == 5
