"""Exact cover by Algorithm X on dancing links, and parallel-class search.

The link structure is kept in flat integer lists (Knuth's array layout):
node 0 is the root, nodes ``1..n_cols`` are column headers, row nodes follow.
Branching always picks the live column with fewest rows, lowest index on
ties, and tries its rows in ascending row id, so runs are reproducible
node for node.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .construct import TripleSystem

FIND_ONE = "find_one"
COUNT_ALL = "count_all"
PROVE_NONE = "prove_none"
MODES = (FIND_ONE, COUNT_ALL, PROVE_NONE)

# node-count granularity of the time-budget poll
POLL_EVERY = 1024


@dataclass(frozen=True)
class CoverInstance:
    n_cols: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for r, cols in enumerate(self.rows):
            if len(set(cols)) != len(cols):
                raise ValueError(f"row {r} repeats a column")
            for c in cols:
                if not 0 <= c < self.n_cols:
                    raise ValueError(f"row {r} uses column {c} outside [0, {self.n_cols})")


@dataclass
class SearchOutcome:
    mode: str
    status: str  # found | none | exhausted | timeout
    witness: list[int] | None = None
    count: int | None = None
    nodes_explored: int = 0
    elapsed: float = 0.0
    extra: dict = field(default_factory=dict)

    def summary(self) -> str:
        if self.status == "timeout":
            return f"timeout after {self.elapsed:.2f}s ({self.nodes_explored} nodes)"
        if self.mode == COUNT_ALL:
            return f"count {self.count} (exhausted)"
        if self.status == "found":
            return "found " + " ".join(map(str, self.witness))
        return "none (exhausted)"


class _Timeout(Exception):
    pass


class _Stop(Exception):
    pass


class DancingLinks:
    """Mutable search state for one instance; not shareable between threads."""

    def __init__(self, instance: CoverInstance):
        n = instance.n_cols
        self.n_cols = n
        L = list(range(-1, n))
        R = list(range(1, n + 2))
        L[0] = n
        R[n] = 0
        U = list(range(n + 1))
        D = list(range(n + 1))
        C = list(range(n + 1))
        row_of = [-1] * (n + 1)
        size = [0] * (n + 1)
        for r, cols in enumerate(instance.rows):
            first = None
            for c in sorted(cols):
                col = c + 1
                x = len(C)
                C.append(col)
                row_of.append(r)
                U.append(U[col])
                D.append(col)
                D[U[col]] = x
                U[col] = x
                size[col] += 1
                if first is None:
                    first = x
                    L.append(x)
                    R.append(x)
                else:
                    L.append(L[first])
                    R.append(first)
                    R[L[first]] = x
                    L[first] = x
        self.L, self.R, self.U, self.D, self.C = L, R, U, D, C
        self.row_of = row_of
        self.size = size

    def _cover(self, c: int) -> None:
        L, R, U, D, C, S = self.L, self.R, self.U, self.D, self.C, self.size
        R[L[c]] = R[c]
        L[R[c]] = L[c]
        i = D[c]
        while i != c:
            j = R[i]
            while j != i:
                D[U[j]] = D[j]
                U[D[j]] = U[j]
                S[C[j]] -= 1
                j = R[j]
            i = D[i]

    def _uncover(self, c: int) -> None:
        L, R, U, D, C, S = self.L, self.R, self.U, self.D, self.C, self.size
        i = U[c]
        while i != c:
            j = L[i]
            while j != i:
                S[C[j]] += 1
                D[U[j]] = j
                U[D[j]] = j
                j = L[j]
            i = U[i]
        R[L[c]] = c
        L[R[c]] = c

    def select_row(self, r: int) -> None:
        """Force row ``r`` into the solution (used to split work by first branch)."""
        for x in range(self.n_cols + 1, len(self.C)):
            if self.row_of[x] == r:
                j = x
                while True:
                    self._cover(self.C[j])
                    j = self.R[j]
                    if j == x:
                        break
                return
        raise ValueError(f"no row {r}")

    def first_branch_rows(self) -> list[int]:
        """Rows of the column the search would branch on first."""
        c = self._choose()
        if c is None:
            return []
        rows = []
        i = self.D[c]
        while i != c:
            rows.append(self.row_of[i])
            i = self.D[i]
        return rows

    def _choose(self) -> int | None:
        R, S = self.R, self.size
        c = R[0]
        if c == 0:
            return None
        best, best_size = c, S[c]
        c = R[c]
        while c != 0 and best_size > 0:
            if S[c] < best_size:
                best, best_size = c, S[c]
            c = R[c]
        return best

    def run(self, stop_at_first: bool, deadline: float | None):
        """Search from the current state. Returns (count, first_witness, nodes, timed_out)."""
        D, R, L, C = self.D, self.R, self.L, self.C
        row_of = self.row_of
        partial: list[int] = []
        state = {"count": 0, "witness": None, "nodes": 0}

        def search():
            c = self._choose()
            if c is None:
                state["count"] += 1
                if state["witness"] is None:
                    state["witness"] = sorted(row_of[x] for x in partial)
                if stop_at_first:
                    raise _Stop
                return
            if self.size[c] == 0:
                return
            self._cover(c)
            r = D[c]
            while r != c:
                state["nodes"] += 1
                if deadline is not None and state["nodes"] % POLL_EVERY == 0 and time.monotonic() > deadline:
                    raise _Timeout
                partial.append(r)
                j = R[r]
                while j != r:
                    self._cover(C[j])
                    j = R[j]
                search()
                j = L[r]
                while j != r:
                    self._uncover(C[j])
                    j = L[j]
                partial.pop()
                r = D[r]
            self._uncover(c)

        timed_out = False
        try:
            search()
        except _Stop:
            pass
        except _Timeout:
            timed_out = True
        return state["count"], state["witness"], state["nodes"], timed_out


def build_cover_instance(system: TripleSystem) -> CoverInstance:
    """Columns are points, rows are triples (row id = triple index)."""
    return CoverInstance(system.v, tuple(tuple(t) for t in system.triples))


def _check_args(mode: str, time_budget: float | None) -> None:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if time_budget is not None and time_budget <= 0:
        raise ValueError(f"time budget must be positive, got {time_budget}")


def solve(
    instance: CoverInstance,
    mode: str = FIND_ONE,
    time_budget: float | None = None,
    workers: int = 1,
) -> SearchOutcome:
    """Run Algorithm X in one of three modes.

    ``find_one`` stops at the first solution, ``count_all`` counts every exact
    cover and ``prove_none`` stops at the first solution but only reports
    ``none`` after exhausting the tree. ``time_budget`` is in seconds; running
    out yields status ``timeout``, never ``none``. ``workers > 1`` splits the
    first branching column across processes.
    """
    _check_args(mode, time_budget)
    if workers > 1:
        return _solve_parallel(instance, mode, time_budget, workers)
    start = time.monotonic()
    deadline = start + time_budget if time_budget is not None else None
    dl = DancingLinks(instance)
    count, witness, nodes, timed_out = dl.run(mode != COUNT_ALL, deadline)
    return _outcome(mode, count, witness, nodes, timed_out, time.monotonic() - start)


def _outcome(mode, count, witness, nodes, timed_out, elapsed) -> SearchOutcome:
    if mode == COUNT_ALL:
        if timed_out:
            return SearchOutcome(mode, "timeout", None, None, nodes, elapsed, {"partial_count": count})
        return SearchOutcome(mode, "exhausted", witness, count, nodes, elapsed)
    if witness is not None:
        return SearchOutcome(mode, "found", witness, None, nodes, elapsed)
    if timed_out:
        return SearchOutcome(mode, "timeout", None, None, nodes, elapsed)
    return SearchOutcome(mode, "none", None, 0, nodes, elapsed)


def _branch_job(args):
    instance, row, stop_at_first, wall_deadline = args
    # monotonic clocks are per-process; convert the shared wall-clock deadline here
    deadline = None if wall_deadline is None else time.monotonic() + (wall_deadline - time.time())
    dl = DancingLinks(instance)
    dl.select_row(row)
    count, witness, nodes, timed_out = dl.run(stop_at_first, deadline)
    return row, count, witness, nodes + 1, timed_out


def _solve_parallel(instance, mode, time_budget, workers) -> SearchOutcome:
    start = time.monotonic()
    deadline = time.time() + time_budget if time_budget is not None else None
    rows = DancingLinks(instance).first_branch_rows()
    if not rows:
        # no branching column: either already covered (n_cols == 0) or stuck
        return solve(instance, mode, time_budget, workers=1)
    jobs = [(instance, r, mode != COUNT_ALL, deadline) for r in rows]
    results = {}
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for row, count, witness, nodes, timed_out in pool.map(_branch_job, jobs):
            results[row] = (count, witness, nodes, timed_out)
    total = sum(r[0] for r in results.values())
    nodes = sum(r[2] for r in results.values())
    timed_out = any(r[3] for r in results.values())
    witness = None
    for row in rows:  # first branch in sequential order that produced a witness
        w = results[row][1]
        if w is not None:
            witness = sorted(w + [row])
            break
    return _outcome(mode, total, witness, nodes, timed_out, time.monotonic() - start)


def find_parallel_class(
    system: TripleSystem,
    mode: str = FIND_ONE,
    time_budget: float | None = None,
    workers: int = 1,
) -> SearchOutcome:
    """Search the system for a set of disjoint triples covering every point."""
    if system.v % 6 != 3:
        raise ValueError(f"v={system.v} is not 3 mod 6; a parallel class cannot exist")
    return solve(build_cover_instance(system), mode, time_budget, workers)


def is_exact_cover(instance: CoverInstance, rows: Sequence[int]) -> bool:
    seen = set()
    for r in rows:
        for c in instance.rows[r]:
            if c in seen:
                return False
            seen.add(c)
    return len(seen) == instance.n_cols
