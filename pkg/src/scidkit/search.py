"""Exhaustive and randomized search over subspace families.

Enumeration walks reduced-row-echelon bases directly: one pivot-column
combination at a time (lexicographic), free cells filled with base-q digits,
most significant first.  Every k-dimensional subspace of F_q^d appears
exactly once, so positions are stable and a search can be split or resumed
by position alone.

:func:`max_sum_bruteforce` is the ground-truth oracle for the largest
dim S + dim I over all families of n k-spaces with pairwise intersections of
dimension exactly k - t.  It is meant for small parameters; the enumeration
cap (env SCIDKIT_ENUM_CAP, default 1000000) keeps accidental monsters out.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations
from multiprocessing import get_context
from random import Random

from .bounds import ScidParams, best_bound
from .gf import FieldSpec
from .linalg import BadDims, Echelon, Subspace, _random_subspace_from, intersect
from .scid import SubspaceFamily, analyze

ENUM_CAP_ENV = "SCIDKIT_ENUM_CAP"
DEFAULT_ENUM_CAP = 1_000_000


class CapExceeded(RuntimeError):
    """An enumeration would visit more subspaces than the configured cap."""


def gaussian_binomial(d: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of a d-dimensional space over F_q."""
    if d < 0 or k < 0:
        raise BadDims(f"dimensions must be >= 0, got d={d}, k={k}")
    if q < 2:
        raise BadDims(f"field order must be >= 2, got {q}")
    if k > d:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= q**d - q**i
        den *= q**k - q**i
    return num // den


def _enum_cap() -> int:
    raw = os.environ.get(ENUM_CAP_ENV)
    return int(raw) if raw else DEFAULT_ENUM_CAP


def _free_cells(pivots: tuple[int, ...], d: int) -> list[tuple[int, int]]:
    taken = set(pivots)
    cells = []
    for r, p in enumerate(pivots):
        for c in range(p + 1, d):
            if c not in taken:
                cells.append((r, c))
    return cells


def iter_subspaces(d: int, k: int, field: FieldSpec, start: int = 0):
    """Yield every k-subspace of F_q^d once, in canonical order, uncapped.

    Canonical order: pivot-column combinations lexicographically, then free
    cells (row-major) as base-q digits with the first cell most significant.
    `start` skips that many subspaces without building them.
    """
    if d < 0 or k < 0:
        raise BadDims(f"dimensions must be >= 0, got d={d}, k={k}")
    q = field.order
    for pivots in combinations(range(d), k):
        cells = _free_cells(pivots, d)
        block = q ** len(cells)
        if start >= block:
            start -= block
            continue
        for index in range(start, block):
            rows = [[0] * d for _ in range(k)]
            for r, p in enumerate(pivots):
                rows[r][p] = 1
            x = index
            for r, c in reversed(cells):
                rows[r][c] = x % q
                x //= q
            yield Subspace(field, d, tuple(tuple(row) for row in rows))
        start = 0


def enumerate_subspaces(d: int, k: int, field: FieldSpec, start: int = 0):
    """Capped canonical enumeration; raises CapExceeded instead of stalling."""
    total = gaussian_binomial(d, k, field.order)
    cap = _enum_cap()
    if total - start > cap:
        raise CapExceeded(
            f"{total - start} subspaces to enumerate exceeds the cap of {cap}; "
            f"raise {ENUM_CAP_ENV} to proceed"
        )
    return iter_subspaces(d, k, field, start)


def subspace_at(d: int, k: int, field: FieldSpec, position: int) -> Subspace:
    """The subspace at a canonical-order position, without a full walk."""
    if position < 0:
        raise BadDims(f"position must be >= 0, got {position}")
    for s in iter_subspaces(d, k, field, start=position):
        return s
    raise BadDims(f"position {position} out of range for ({d}, {k}) over F_{field.order}")


@dataclass(frozen=True)
class EnumerationCursor:
    """Resumable position in the canonical enumeration of (d, k) subspaces."""

    field: FieldSpec
    ambient_dim: int
    subspace_dim: int
    position: int = 0

    @property
    def total(self) -> int:
        return gaussian_binomial(self.ambient_dim, self.subspace_dim, self.field.order)

    @property
    def done(self) -> bool:
        return self.position >= self.total

    def take(self, count: int):
        """Next `count` subspaces and the advanced cursor."""
        batch = []
        for s in iter_subspaces(
            self.ambient_dim, self.subspace_dim, self.field, start=self.position
        ):
            batch.append(s)
            if len(batch) == count:
                break
        cursor = EnumerationCursor(
            self.field, self.ambient_dim, self.subspace_dim, self.position + len(batch)
        )
        return tuple(batch), cursor


@dataclass(frozen=True)
class SearchResult:
    """Outcome of a family search.

    best_sum is None when no family with the requested intersection pattern
    exists in the searched region; exhaustive records whether the region was
    the whole space.  explored counts search-tree nodes (diagnostic only, not
    part of any equality contract).
    """

    best_sum: int | None
    witness: SubspaceFamily | None
    explored: int
    exhaustive: bool

    def to_dict(self) -> dict:
        return {
            "best_sum": self.best_sum,
            "witness": self.witness.to_dict() if self.witness is not None else None,
            "explored": self.explored,
            "exhaustive": self.exhaustive,
        }


def _search_range(
    n: int, k: int, t: int, field: FieldSpec, d: int, lo: int, hi: int
) -> tuple[int | None, tuple[int, ...] | None, int]:
    """DFS over index tuples i_1 < ... < i_n with first index in [lo, hi).

    Increasing tuples kill the n! permutation symmetry.  Pruning uses the
    provable per-member increments of dim S + dim I: the second member adds
    exactly k (t to S, k - t to I); each later member adds at most
    t + min(t, k - t), because its new intersections pairwise meet inside the
    old I, and never more than the best proven bound overall.  Ties keep the
    first (lexicographically least) witness.
    """
    cands = list(enumerate_subspaces(d, k, field))
    total = len(cands)
    hi = min(hi, total)
    bound = best_bound(ScidParams(n, k, t)).best
    step = t + min(t, k - t)

    compat: dict[tuple[int, int], tuple | None] = {}

    def inter_basis(a: int, b: int):
        key = (a, b)
        if key not in compat:
            s = intersect(cands[a], cands[b])
            compat[key] = s.basis if s.dim == k - t else None
        return compat[key]

    best_sum: int | None = None
    best_witness: tuple[int, ...] | None = None
    explored = 0

    def extend(chosen: list[int], s_ech: Echelon, i_ech: Echelon, cur: int) -> None:
        nonlocal best_sum, best_witness, explored
        explored += 1
        m = len(chosen)
        if m == n:
            if best_sum is None or cur > best_sum:
                best_sum = cur
                best_witness = tuple(chosen)
            return
        rem = n - m
        optimistic = cur + (k + (rem - 1) * step if m == 1 else rem * step)
        for c in range(chosen[-1] + 1, total):
            if best_sum is not None and min(optimistic, bound) <= best_sum:
                return
            rows = []
            for a in chosen:
                got = inter_basis(a, c)
                if got is None:
                    break
                rows.extend(got)
            else:
                s2 = s_ech.copy()
                for row in cands[c].basis:
                    s2.insert(row)
                i2 = i_ech.copy()
                for row in rows:
                    i2.insert(row)
                chosen.append(c)
                extend(chosen, s2, i2, s2.rank + i2.rank)
                chosen.pop()

    for r in range(lo, hi):
        s0 = Echelon(field, d)
        for row in cands[r].basis:
            s0.insert(row)
        extend([r], s0, Echelon(field, d), k)

    return best_sum, best_witness, explored


def _bruteforce_worker(payload):
    n, k, t, field, d, lo, hi = payload
    return _search_range(n, k, t, field, d, lo, hi)


def max_sum_bruteforce(
    n: int,
    k: int,
    t: int,
    field: FieldSpec,
    d: int,
    root_range: tuple[int, int] | None = None,
    jobs: int = 1,
) -> SearchResult:
    """Exact maximum of dim S + dim I over all (k, k-t) families in F_q^d.

    Exhaustive within root_range (default: everything); jobs > 1 splits the
    root index range across processes, with a deterministic merge that keeps
    the lexicographically least witness among maximizers.
    """
    if n < 2:
        raise BadDims(f"n must be >= 2, got {n}")
    if not 1 <= t <= k:
        raise BadDims(f"need 1 <= t <= k, got t={t}, k={k}")
    total = gaussian_binomial(d, k, field.order)
    lo, hi = root_range if root_range is not None else (0, total)
    lo = max(lo, 0)
    hi = min(hi, total)
    exhaustive = lo == 0 and hi == total

    if jobs <= 1 or hi - lo <= 1:
        best, witness_idx, explored = _search_range(n, k, t, field, d, lo, hi)
    else:
        jobs = min(jobs, hi - lo)
        chunk = -(-(hi - lo) // jobs)
        payloads = [
            (n, k, t, field, d, a, min(a + chunk, hi)) for a in range(lo, hi, chunk)
        ]
        try:
            ctx = get_context("fork")
        except ValueError:
            ctx = get_context("spawn")
        with ctx.Pool(processes=jobs) as pool:
            parts = pool.map(_bruteforce_worker, payloads)
        best, witness_idx, explored = None, None, 0
        for b, w, e in parts:
            explored += e
            if b is None:
                continue
            if best is None or b > best or (b == best and w < witness_idx):
                best, witness_idx = b, w

    witness = None
    if witness_idx is not None:
        members = [subspace_at(d, k, field, i) for i in witness_idx]
        witness = SubspaceFamily(field, d, tuple(members))
    return SearchResult(best, witness, explored, exhaustive)


def random_scid_search(
    n: int,
    k: int,
    t: int,
    field: FieldSpec,
    d: int,
    seed: int = 0,
    iterations: int = 100,
) -> SearchResult:
    """Seeded greedy sampling of (k, k-t) families; a lower-bound probe.

    Each iteration grows a family member by member from one random stream,
    rejecting candidates that break the intersection pattern, with a fixed
    retry budget.  explored counts completed families.  Never exhaustive.
    """
    if n < 2:
        raise BadDims(f"n must be >= 2, got {n}")
    if not 1 <= t <= k:
        raise BadDims(f"need 1 <= t <= k, got t={t}, k={k}")
    rng = Random(seed)
    best: int | None = None
    witness: SubspaceFamily | None = None
    explored = 0
    for _ in range(iterations):
        members: list[Subspace] = []
        attempts = 0
        while len(members) < n and attempts < 64:
            attempts += 1
            cand = _random_subspace_from(rng, d, k, field)
            if all(intersect(cand, s).dim == k - t for s in members):
                members.append(cand)
        if len(members) < n:
            continue
        family = SubspaceFamily(field, d, tuple(members))
        explored += 1
        total = analyze(family).sum
        if best is None or total > best:
            best = total
            witness = family
    return SearchResult(best, witness, explored, False)
