from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from steinerpc.construct import TripleSystem, construct_sts
from steinerpc.cover import (
    COUNT_ALL,
    FIND_ONE,
    PROVE_NONE,
    CoverInstance,
    build_cover_instance,
    find_parallel_class,
    is_exact_cover,
    solve,
)


def count_covers_oracle(n_cols, rows):
    """Plain backtracking: branch on the lowest uncovered column, no links."""
    sets = [frozenset(r) for r in rows]

    def rec(covered):
        if len(covered) == n_cols:
            return 1
        c = min(set(range(n_cols)) - covered)
        return sum(rec(covered | s) for s in sets if c in s and not (s & covered))

    return rec(frozenset())


@st.composite
def instances(draw, max_cols=12, max_rows=40):
    n = draw(st.integers(1, max_cols))
    rows = draw(
        st.lists(
            st.sets(st.integers(0, n - 1), min_size=1, max_size=min(n, 4)).map(lambda s: tuple(sorted(s))),
            max_size=max_rows,
        )
    )
    return CoverInstance(n, tuple(rows))


@settings(max_examples=150, deadline=None)
@given(instances())
def test_count_matches_oracle(inst):
    expected = count_covers_oracle(inst.n_cols, inst.rows)
    out = solve(inst, COUNT_ALL)
    assert out.status == "exhausted" and out.count == expected
    found = solve(inst, FIND_ONE)
    assert (found.status == "found") == (expected > 0)
    if found.witness is not None:
        assert is_exact_cover(inst, found.witness)
    proof = solve(inst, PROVE_NONE)
    assert proof.status == ("found" if expected else "none")


def test_single_forced_row():
    out = solve(CoverInstance(3, ((0, 1, 2),)), FIND_ONE)
    assert out.status == "found" and out.witness == [0]


def test_instance_validation():
    with pytest.raises(ValueError):
        CoverInstance(3, ((0, 3),))
    with pytest.raises(ValueError):
        CoverInstance(3, ((0, 0),))


def test_sts9_count_and_find(sts9):
    inst = build_cover_instance(sts9)
    assert (inst.n_cols, len(inst.rows)) == (9, 12)
    brute = sum(1 for c in combinations(sts9.triples, 3) if len(set().union(*c)) == 9)
    assert brute == 4
    assert find_parallel_class(sts9, COUNT_ALL).count == 4
    out = find_parallel_class(sts9, FIND_ONE)
    assert out.status == "found" and len(out.witness) == 3
    assert is_exact_cover(inst, out.witness)


def test_sts27_has_no_parallel_class():
    s = construct_sts(27)
    inst = build_cover_instance(s)
    assert (inst.n_cols, len(inst.rows)) == (27, 117)
    out = find_parallel_class(s, PROVE_NONE)
    assert out.status == "none"
    assert find_parallel_class(s, COUNT_ALL).count == 0


def test_deterministic_node_counts(sts9):
    s = construct_sts(27)
    a = find_parallel_class(s, PROVE_NONE)
    b = find_parallel_class(s, PROVE_NONE)
    assert a.nodes_explored == b.nodes_explored > 0
    assert find_parallel_class(sts9).witness == find_parallel_class(sts9).witness


def test_timeout_is_not_none():
    s = construct_sts(87)
    out = find_parallel_class(s, PROVE_NONE, time_budget=0.5)
    assert out.status == "timeout"
    out = find_parallel_class(s, COUNT_ALL, time_budget=0.5)
    assert out.status == "timeout" and out.count is None


@pytest.mark.parametrize("budget", [0, -1])
def test_bad_budget(budget, sts9):
    with pytest.raises(ValueError):
        find_parallel_class(sts9, FIND_ONE, time_budget=budget)


def test_bad_mode(sts9):
    with pytest.raises(ValueError):
        find_parallel_class(sts9, "maybe")


def test_rejects_order_not_3_mod_6():
    sts7 = TripleSystem(7, [(0, 1, 3), (1, 2, 4), (2, 3, 5), (3, 4, 6), (0, 4, 5), (1, 5, 6), (0, 2, 6)])
    with pytest.raises(ValueError):
        find_parallel_class(sts7)


def test_parallel_mode_agrees(sts9):
    assert find_parallel_class(sts9, COUNT_ALL, workers=2).count == 4
    par = find_parallel_class(sts9, FIND_ONE, workers=2)
    assert par.status == "found" and is_exact_cover(build_cover_instance(sts9), par.witness)
    s = construct_sts(27)
    assert find_parallel_class(s, PROVE_NONE, workers=2).status == "none"
