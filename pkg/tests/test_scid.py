"""Family analysis: intersection tables, S and I, sunflowers, spreads."""

import random

import pytest

from scidkit.gf import field_from_order
from scidkit.linalg import coordinate_subspace, rref
from scidkit.scid import (
    DuplicateMembers,
    MixedMemberDimensions,
    SubspaceFamily,
    TooFewMembers,
    analyze,
    verify_scid,
)

F2 = field_from_order(2)


def _coord_family(d, *coord_sets):
    return SubspaceFamily.from_members(
        [coordinate_subspace(F2, d, cs) for cs in coord_sets]
    )


def test_three_planes_pairwise_lines():
    fam = _coord_family(3, [0, 1], [0, 2], [1, 2])
    rep = analyze(fam)
    assert rep.n == 3 and rep.k == 2
    assert rep.is_scid and rep.t == 1
    assert rep.pairwise_dims == ((2, 1, 1), (1, 2, 1), (1, 1, 2))
    assert rep.S.dim == 3 and rep.I.dim == 3
    assert rep.sum == 6
    assert rep.sunflower_center is None
    assert not rep.is_partial_spread
    assert verify_scid(fam, 2, 1)


def test_sunflower_three_planes_common_line():
    fam = _coord_family(4, [0, 1], [0, 2], [0, 3])
    rep = analyze(fam)
    assert rep.is_scid and rep.t == 1
    assert rep.S.dim == 4 and rep.I.dim == 1
    assert rep.sum == 5
    assert rep.sunflower_center is not None
    assert rep.sunflower_center.dim == 1
    assert rep.sunflower_center.contains_vector((1, 0, 0, 0))


def test_partial_spread():
    fam = _coord_family(4, [0, 1], [2, 3])
    rep = analyze(fam)
    assert rep.is_scid and rep.t == 2
    assert rep.is_partial_spread
    assert rep.I.dim == 0 and rep.sum == 4
    # all-zero intersections still count as a (degenerate) common center
    assert rep.sunflower_center is not None and rep.sunflower_center.dim == 0


def test_not_constant_intersection():
    # pairs meet in dims 1, 1, 0: not constant
    fam = _coord_family(4, [0, 1], [1, 2], [3, 0])
    rep = analyze(fam)
    assert not rep.is_scid and rep.t is None
    assert not verify_scid(fam, 2, 1)


def test_analysis_is_order_invariant():
    rng = random.Random(3)
    fam = _coord_family(4, [0, 1], [0, 2], [0, 3])
    base = analyze(fam)
    members = list(fam.members)
    for _ in range(5):
        rng.shuffle(members)
        rep = analyze(SubspaceFamily(F2, 4, tuple(members)))
        assert (rep.sum, rep.S, rep.I, rep.is_scid, rep.t) == (
            base.sum,
            base.S,
            base.I,
            base.is_scid,
            base.t,
        )


def test_subfamily_inherits_pattern():
    fam = _coord_family(3, [0, 1], [0, 2], [1, 2])
    for drop in range(3):
        members = [m for i, m in enumerate(fam.members) if i != drop]
        sub = SubspaceFamily(F2, 3, tuple(members))
        assert verify_scid(sub, 2, 1)


def test_family_equality_ignores_order():
    a = _coord_family(3, [0, 1], [0, 2])
    b = _coord_family(3, [0, 2], [0, 1])
    assert a == b and hash(a) == hash(b)
    assert a.canonical() == b.canonical()
    assert a.canonical().members == b.canonical().members


def test_duplicate_members_rejected():
    s = coordinate_subspace(F2, 3, [0, 1])
    with pytest.raises(DuplicateMembers):
        SubspaceFamily(F2, 3, (s, s))


def test_too_few_members():
    fam = SubspaceFamily.from_members([coordinate_subspace(F2, 3, [0])])
    with pytest.raises(TooFewMembers):
        analyze(fam)
    assert not verify_scid(fam, 1, 1)


def test_mixed_dimensions_rejected():
    fam = SubspaceFamily.from_members(
        [coordinate_subspace(F2, 3, [0, 1]), coordinate_subspace(F2, 3, [2])]
    )
    with pytest.raises(MixedMemberDimensions):
        analyze(fam)
    assert not verify_scid(fam, 2, 1)


def test_verify_scid_wrong_parameters():
    fam = _coord_family(3, [0, 1], [0, 2], [1, 2])
    assert not verify_scid(fam, 2, 2)
    assert not verify_scid(fam, 3, 1)


def test_family_serialization_roundtrip():
    fam = _coord_family(4, [0, 1], [0, 2], [0, 3])
    again = SubspaceFamily.from_dict(fam.to_dict())
    assert again == fam
    assert analyze(again).sum == 5


def test_from_dict_normalizes_bases():
    data = {
        "field": {"p": 2, "tower": []},
        "ambient": 3,
        "members": [
            {"ambient": 3, "basis": [[1, 1, 0], [0, 1, 0]]},
            {"ambient": 3, "basis": [[0, 0, 1], [1, 0, 0]]},
        ],
    }
    fam = SubspaceFamily.from_dict(data)
    assert fam.members[0].basis == ((1, 0, 0), (0, 1, 0))
    assert fam.members[1].basis == ((1, 0, 0), (0, 0, 1))


def test_report_to_dict_shape():
    rep = analyze(_coord_family(3, [0, 1], [0, 2], [1, 2]))
    d = rep.to_dict()
    assert d["sum"] == 6 and d["is_scid"] and d["t"] == 1
    assert d["pairwise_dims"][0] == [2, 1, 1]
    assert d["S"]["ambient"] == 3

def test_analysis_with_non_rref_input_rows():
    # construction via rref from messy spanning sets, same verdicts
    m1 = rref(F2, 3, [(1, 1, 0), (1, 0, 0)])
    m2 = rref(F2, 3, [(1, 0, 1), (0, 0, 1)])
    m3 = rref(F2, 3, [(0, 1, 1), (0, 1, 0)])
    rep = analyze(SubspaceFamily.from_members([m1, m2, m3]))
    assert rep.sum == 6 and rep.t == 1
