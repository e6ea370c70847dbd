"""Families of equal-dimensional subspaces and their intersection structure.

A family is an ordered list of pairwise distinct subspaces of one ambient
space.  :func:`analyze` measures everything of interest at once: the pairwise
intersection dimension table, whether the family has constant intersection
dimension (every pair of k-dimensional members meets in dimension exactly
k - t for one common t), the total span S, the span I of all pairwise
intersections, the headline quantity dim S + dim I, and whether the family is
a sunflower (all pairwise intersections are one common center) or a partial
spread (all pairwise intersections trivial).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .gf import FieldMismatch, FieldSpec
from .linalg import AmbientMismatch, Subspace, intersect, rref, zero_subspace


class MixedMemberDimensions(ValueError):
    """Family members do not all have the same dimension."""


class DuplicateMembers(ValueError):
    """Two family members are the same subspace; degenerate and rejected."""


class TooFewMembers(ValueError):
    """Intersection analysis needs at least two members."""


@dataclass(frozen=True)
class SubspaceFamily:
    """Ordered, pairwise distinct subspaces of a common ambient space.

    Single-member families are representable (a one-line spread is one), but
    analysis requires n >= 2.  Families compare order-insensitively: two
    families with the same member set are equal.
    """

    field: FieldSpec
    ambient_dim: int
    members: tuple[Subspace, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        if not self.members:
            raise ValueError("a family needs at least one member")
        seen = set()
        for m in self.members:
            if m.field != self.field:
                raise FieldMismatch(f"member over {m.field!r} in family over {self.field!r}")
            if m.ambient_dim != self.ambient_dim:
                raise AmbientMismatch(
                    f"member ambient {m.ambient_dim} in family ambient {self.ambient_dim}"
                )
            if m.basis in seen:
                raise DuplicateMembers("family members must be pairwise distinct")
            seen.add(m.basis)

    @property
    def n(self) -> int:
        return len(self.members)

    def canonical(self) -> "SubspaceFamily":
        """Members sorted by basis; the order-insensitive representative."""
        ordered = tuple(sorted(self.members, key=lambda s: s.basis))
        return SubspaceFamily(self.field, self.ambient_dim, ordered)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SubspaceFamily):
            return NotImplemented
        return (
            self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and sorted(m.basis for m in self.members) == sorted(m.basis for m in other.members)
        )

    def __hash__(self) -> int:
        return hash((self.field, self.ambient_dim, frozenset(m.basis for m in self.members)))

    @classmethod
    def from_members(cls, members) -> "SubspaceFamily":
        members = tuple(members)
        if not members:
            raise ValueError("a family needs at least one member")
        return cls(members[0].field, members[0].ambient_dim, members)

    def to_dict(self) -> dict:
        return {
            "field": self.field.to_dict(),
            "ambient": self.ambient_dim,
            "members": [m.to_dict() for m in self.members],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SubspaceFamily":
        field = FieldSpec.from_dict(data["field"])
        ambient = int(data["ambient"])
        members = tuple(Subspace.from_dict(field, m) for m in data["members"])
        for m in members:
            if m.ambient_dim != ambient:
                raise AmbientMismatch("member ambient disagrees with family ambient")
        return cls(field, ambient, members)


@dataclass(frozen=True)
class ScidReport:
    """Full intersection-structure analysis of one family.

    `t` is defined only when `is_scid`, as k minus the common pairwise
    intersection dimension.  `sum` is dim S + dim I, the quantity all the
    bounds in :mod:`scidkit.bounds` constrain.
    """

    n: int
    k: int
    pairwise_dims: tuple[tuple[int, ...], ...]
    is_scid: bool
    t: int | None
    S: Subspace
    I: Subspace
    sum: int
    sunflower_center: Subspace | None
    is_partial_spread: bool

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "pairwise_dims": [list(r) for r in self.pairwise_dims],
            "is_scid": self.is_scid,
            "t": self.t,
            "S": self.S.to_dict(),
            "I": self.I.to_dict(),
            "sum": self.sum,
            "sunflower_center": None
            if self.sunflower_center is None
            else self.sunflower_center.to_dict(),
            "is_partial_spread": self.is_partial_spread,
        }


def analyze(family: SubspaceFamily) -> ScidReport:
    """Measure a family's intersection structure from scratch.

    Order-invariant: permuting the members permutes the pairwise table but
    changes nothing else.  Raises MixedMemberDimensions on unequal member
    dimensions and TooFewMembers below two members.
    """
    n = family.n
    if n < 2:
        raise TooFewMembers(f"analysis needs n >= 2 members, got {n}")
    dims = {m.dim for m in family.members}
    if len(dims) != 1:
        raise MixedMemberDimensions(f"member dimensions {sorted(dims)} are not constant")
    k = dims.pop()
    field, d = family.field, family.ambient_dim

    inter: dict[tuple[int, int], Subspace] = {}
    for i, j in combinations(range(n), 2):
        inter[(i, j)] = intersect(family.members[i], family.members[j])

    table = [[k] * n for _ in range(n)]
    for (i, j), sub in inter.items():
        table[i][j] = table[j][i] = sub.dim
    off_diag = {sub.dim for sub in inter.values()}
    is_scid = len(off_diag) == 1
    t = k - off_diag.pop() if is_scid else None

    s_rows = [r for m in family.members for r in m.basis]
    big_s = rref(field, d, s_rows)
    i_rows = [r for sub in inter.values() for r in sub.basis]
    big_i = rref(field, d, i_rows) if i_rows else zero_subspace(field, d)

    first = inter[(0, 1)]
    center = first if all(sub == first for sub in inter.values()) else None

    return ScidReport(
        n=n,
        k=k,
        pairwise_dims=tuple(tuple(r) for r in table),
        is_scid=is_scid,
        t=t,
        S=big_s,
        I=big_i,
        sum=big_s.dim + big_i.dim,
        sunflower_center=center,
        is_partial_spread=bool(is_scid and t == k),
    )


def verify_scid(family: SubspaceFamily, k: int, t: int) -> bool:
    """True iff every member is k-dimensional and every pair meets in k - t.

    Never raises on structural mismatch; anything off simply returns False.
    """
    if family.n < 2:
        return False
    if any(m.dim != k for m in family.members):
        return False
    want = k - t
    return all(
        intersect(a, b).dim == want for a, b in combinations(family.members, 2)
    )
