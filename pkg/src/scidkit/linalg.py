"""Exact linear algebra over finite fields with canonical subspace forms.

Vectors are tuples of field element codes and matrices are tuples of such
rows; there is no wrapper class for either.  A :class:`Subspace` stores the
reduced row echelon basis of its row space together with an explicit ambient
dimension, so subspace equality, hashing and serialization are exact and
independent of how the subspace was presented.

All computations are exact; nothing here floats.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Sequence

from .gf import FieldMismatch, FieldSpec


class AmbientMismatch(ValueError):
    """Operands live in different ambient spaces or fields."""


class NotNested(ValueError):
    """An inclusion precondition between subspaces fails."""


class BadDims(ValueError):
    """Dimension arguments out of range."""


# ---------------------------------------------------------------------------
# row reduction
# ---------------------------------------------------------------------------


def _rref_rows(
    field: FieldSpec, rows: Iterable[Sequence[int]], width: int
) -> tuple[tuple[int, ...], ...]:
    """Reduced row echelon form of the row list; zero rows dropped."""
    add, sub, mul, inv = field.add, field.sub, field.mul, field.inv
    mat = [list(r) for r in rows]
    for r in mat:
        if len(r) != width:
            raise AmbientMismatch(f"row of length {len(r)} in width-{width} matrix")
    nrows = len(mat)
    pivot_row = 0
    for col in range(width):
        found = None
        for r in range(pivot_row, nrows):
            if mat[r][col]:
                found = r
                break
        if found is None:
            continue
        mat[pivot_row], mat[found] = mat[found], mat[pivot_row]
        row = mat[pivot_row]
        pv = row[col]
        if pv != 1:
            pinv = inv(pv)
            row = [mul(pinv, x) for x in row]
            mat[pivot_row] = row
        for r in range(nrows):
            if r != pivot_row and mat[r][col]:
                f = mat[r][col]
                other = mat[r]
                mat[r] = [sub(other[i], mul(f, row[i])) for i in range(width)]
        pivot_row += 1
        if pivot_row == nrows:
            break
    return tuple(tuple(r) for r in mat[:pivot_row])


class Echelon:
    """Incremental row-space accumulator kept in echelon form.

    Cheap rank bookkeeping for search loops: insert vectors one at a time,
    rows stay sorted by pivot column with normalized leading ones.
    """

    __slots__ = ("field", "width", "rows", "pivots")

    def __init__(self, field: FieldSpec, width: int):
        self.field = field
        self.width = width
        self.rows: list[tuple[int, ...]] = []
        self.pivots: list[int] = []

    def copy(self) -> "Echelon":
        other = Echelon.__new__(Echelon)
        other.field = self.field
        other.width = self.width
        other.rows = list(self.rows)
        other.pivots = list(self.pivots)
        return other

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Sequence[int]) -> list[int]:
        """Residual of vec after elimination against the stored rows."""
        sub, mul = self.field.sub, self.field.mul
        v = list(vec)
        for p, row in zip(self.pivots, self.rows):
            c = v[p]
            if c:
                v = [sub(v[i], mul(c, row[i])) for i in range(self.width)]
        return v

    def insert(self, vec: Sequence[int]) -> bool:
        """Insert vec's residual; True when the rank grew."""
        v = self.reduce(vec)
        pivot = next((i for i, x in enumerate(v) if x), None)
        if pivot is None:
            return False
        pv = v[pivot]
        if pv != 1:
            pinv = self.field.inv(pv)
            mul = self.field.mul
            v = [mul(pinv, x) for x in v]
        at = 0
        while at < len(self.pivots) and self.pivots[at] < pivot:
            at += 1
        self.pivots.insert(at, pivot)
        self.rows.insert(at, tuple(v))
        return True

    def contains(self, vec: Sequence[int]) -> bool:
        return not any(self.reduce(vec))


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_q^d held by its reduced row echelon basis.

    The basis must already be canonical (strictly increasing pivots, leading
    ones, zeros above and below each pivot, no zero rows); :func:`rref` is the
    constructor of choice for arbitrary row data.  Canonical form makes
    equality of Subspace values coincide with equality of subspaces.
    """

    field: FieldSpec
    ambient_dim: int
    basis: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(tuple(r) for r in self.basis))
        if self.ambient_dim < 0:
            raise BadDims(f"ambient dimension {self.ambient_dim} < 0")
        for r in self.basis:
            if len(r) != self.ambient_dim:
                raise AmbientMismatch(
                    f"basis row of length {len(r)} in ambient dimension {self.ambient_dim}"
                )

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains_vector(self, vec: Sequence[int]) -> bool:
        ech = Echelon(self.field, self.ambient_dim)
        for r in self.basis:
            ech.rows.append(r)
            ech.pivots.append(next(i for i, x in enumerate(r) if x))
        return ech.contains(vec)

    def vectors(self) -> Iterator[tuple[int, ...]]:
        """All q^dim vectors of the subspace, zero vector included."""
        add, mul = self.field.add, self.field.mul
        d = self.ambient_dim
        for coeffs in product(range(self.field.order), repeat=self.dim):
            v = [0] * d
            for c, row in zip(coeffs, self.basis):
                if c:
                    v = [add(v[i], mul(c, row[i])) for i in range(d)]
            yield tuple(v)

    def to_dict(self) -> dict:
        return {"ambient": self.ambient_dim, "basis": [list(r) for r in self.basis]}

    @classmethod
    def from_dict(cls, field: FieldSpec, data: dict) -> "Subspace":
        ambient = int(data["ambient"])
        rows = [[int(x) for x in r] for r in data["basis"]]
        for r in rows:
            for x in r:
                if not 0 <= x < field.order:
                    raise ValueError(f"entry {x} out of range for {field!r}")
        return rref(field, ambient, rows)


def rref(field: FieldSpec, ambient_dim: int, rows: Iterable[Sequence[int]]) -> Subspace:
    """Canonicalize arbitrary spanning rows into a Subspace."""
    return Subspace(field, ambient_dim, _rref_rows(field, rows, ambient_dim))


def zero_subspace(field: FieldSpec, ambient_dim: int) -> Subspace:
    return Subspace(field, ambient_dim, ())


def full_subspace(field: FieldSpec, ambient_dim: int) -> Subspace:
    return coordinate_subspace(field, ambient_dim, range(ambient_dim))


def coordinate_subspace(field: FieldSpec, ambient_dim: int, coords: Iterable[int]) -> Subspace:
    """Span of the standard basis vectors with the given indices."""
    rows = []
    for c in sorted(set(coords)):
        if not 0 <= c < ambient_dim:
            raise BadDims(f"coordinate {c} outside ambient dimension {ambient_dim}")
        row = [0] * ambient_dim
        row[c] = 1
        rows.append(tuple(row))
    return Subspace(field, ambient_dim, tuple(rows))


def _check_peers(a: Subspace, b: Subspace) -> None:
    if a.field != b.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")
    if a.ambient_dim != b.ambient_dim:
        raise AmbientMismatch(f"ambient {a.ambient_dim} vs {b.ambient_dim}")


def span_sum(a: Subspace, b: Subspace) -> Subspace:
    """The subspace a + b."""
    _check_peers(a, b)
    return rref(a.field, a.ambient_dim, a.basis + b.basis)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """The subspace a ∩ b via the doubled-width elimination trick.

    Rows [v|v] for v in a and [w|0] for w in b are reduced together; rows
    whose left half vanished carry the intersection in their right half, and
    those right halves are already in canonical form.
    """
    _check_peers(a, b)
    d = a.ambient_dim
    zeros = (0,) * d
    stacked = [r + r for r in a.basis] + [r + zeros for r in b.basis]
    reduced = _rref_rows(a.field, stacked, 2 * d)
    inter = tuple(r[d:] for r in reduced if not any(r[:d]))
    return Subspace(a.field, d, inter)


def is_subspace_of(a: Subspace, b: Subspace) -> bool:
    _check_peers(a, b)
    if a.dim > b.dim:
        return False
    ech = Echelon(b.field, b.ambient_dim)
    for r in b.basis:
        ech.rows.append(r)
        ech.pivots.append(next(i for i, x in enumerate(r) if x))
    return all(ech.contains(r) for r in a.basis)


def complement_within(a: Subspace, b: Subspace) -> Subspace:
    """A direct complement of a inside b, chosen greedily from b's basis.

    Deterministic: walks b's canonical basis rows in order and keeps those
    independent of a plus the rows already kept.  Raises NotNested when a is
    not contained in b.
    """
    _check_peers(a, b)
    if not is_subspace_of(a, b):
        raise NotNested("first argument is not contained in the second")
    ech = Echelon(a.field, a.ambient_dim)
    for r in a.basis:
        ech.insert(r)
    kept = []
    for r in b.basis:
        if ech.insert(r):
            kept.append(r)
    return rref(a.field, a.ambient_dim, kept)


# ---------------------------------------------------------------------------
# quotients
# ---------------------------------------------------------------------------


def _invert_matrix(field: FieldSpec, rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Inverse of a square matrix; internal, expects invertibility."""
    n = len(rows)
    sub, mul, inv = field.sub, field.mul, field.inv
    aug = [list(rows[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    for col in range(n):
        pr = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[pr] = aug[pr], aug[col]
        row = aug[col]
        pv = row[col]
        if pv != 1:
            pinv = inv(pv)
            row = [mul(pinv, x) for x in row]
            aug[col] = row
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                other = aug[r]
                aug[r] = [sub(other[i], mul(f, row[i])) for i in range(2 * n)]
    return [r[n:] for r in aug]


def _mat_mul(field: FieldSpec, a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    add, mul = field.add, field.mul
    cols = len(b[0]) if b else 0
    out = []
    for ra in a:
        row = [0] * cols
        for x, rb in zip(ra, b):
            if x:
                row = [add(row[j], mul(x, rb[j])) for j in range(cols)]
        out.append(row)
    return out


@dataclass(frozen=True)
class QuotientMap:
    """Linear projection of `total` onto F_q^(dim total - dim center).

    The kernel is exactly `center`; `matrix` maps ambient row vectors to the
    quotient by right multiplication, and `section` embeds quotient vectors
    back into `total`, splitting the projection.
    """

    total: Subspace
    center: Subspace
    matrix: tuple[tuple[int, ...], ...]
    section: tuple[tuple[int, ...], ...]

    @property
    def target_dim(self) -> int:
        return self.total.dim - self.center.dim

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        field = self.total.field
        add, mul = field.add, field.mul
        out = [0] * self.target_dim
        for x, row in zip(vec, self.matrix):
            if x:
                out = [add(out[j], mul(x, row[j])) for j in range(self.target_dim)]
        return tuple(out)

    def map_subspace(self, x: Subspace) -> Subspace:
        if not is_subspace_of(x, self.total):
            raise NotNested("subspace is not contained in the quotient's total space")
        return rref(self.total.field, self.target_dim, [self.apply(r) for r in x.basis])

    def preimage(self, y: Subspace) -> Subspace:
        if y.ambient_dim != self.target_dim:
            raise AmbientMismatch(f"ambient {y.ambient_dim} vs target {self.target_dim}")
        field = self.total.field
        lifted = _mat_mul(field, y.basis, self.section)
        return rref(field, self.total.ambient_dim, list(self.center.basis) + lifted)


def quotient_map(s: Subspace, c: Subspace) -> QuotientMap:
    """The projection of s with kernel exactly c, built deterministically.

    The complement of c inside s and the extension of s to the full ambient
    space are both chosen by the greedy rule of :func:`complement_within`, so
    equal inputs give bit-identical maps.
    """
    _check_peers(s, c)
    if not is_subspace_of(c, s):
        raise NotNested("center is not contained in the total space")
    field = s.field
    d = s.ambient_dim
    comp = complement_within(c, s)
    ext = complement_within(s, full_subspace(field, d))
    basis_rows = list(c.basis) + list(comp.basis) + list(ext.basis)
    r = comp.dim
    targets = []
    for i in range(len(basis_rows)):
        row = [0] * r
        if c.dim <= i < c.dim + r:
            row[i - c.dim] = 1
        targets.append(row)
    b_inv = _invert_matrix(field, basis_rows)
    matrix = tuple(tuple(r_) for r_ in _mat_mul(field, b_inv, targets))
    return QuotientMap(total=s, center=c, matrix=matrix, section=tuple(comp.basis))


# ---------------------------------------------------------------------------
# sampling and embedding
# ---------------------------------------------------------------------------


def _random_subspace_from(rng: random.Random, d: int, k: int, field: FieldSpec) -> Subspace:
    q = field.order
    while True:
        rows = [[rng.randrange(q) for _ in range(d)] for _ in range(k)]
        ech = Echelon(field, d)
        for r in rows:
            ech.insert(r)
        if ech.rank == k:
            return rref(field, d, rows)


def random_subspace(d: int, k: int, field: FieldSpec, seed: int) -> Subspace:
    """A uniformly distributed k-subspace of F_q^d from a seeded stream.

    Batches of k vectors are drawn from random.Random(seed) and rejected
    until one batch is independent; conditioning on full rank keeps the row
    space uniform over all k-subspaces.
    """
    if not 0 <= k <= d:
        raise BadDims(f"need 0 <= k <= d, got k={k}, d={d}")
    return _random_subspace_from(random.Random(seed), d, k, field)


def embed_subspace(s: Subspace, new_ambient: int) -> Subspace:
    """Zero-pad basis rows on the right into a larger ambient space."""
    if new_ambient < s.ambient_dim:
        raise BadDims(f"cannot embed ambient {s.ambient_dim} into {new_ambient}")
    pad = (0,) * (new_ambient - s.ambient_dim)
    return Subspace(s.field, new_ambient, tuple(r + pad for r in s.basis))
