"""Subspace arithmetic: canonical form, Zassenhaus, quotients, batteries."""

import random

import pytest

from scidkit.gf import field_from_order
from scidkit.linalg import (
    AmbientMismatch,
    BadDims,
    Echelon,
    NotNested,
    Subspace,
    complement_within,
    coordinate_subspace,
    embed_subspace,
    full_subspace,
    intersect,
    is_subspace_of,
    quotient_map,
    random_subspace,
    rref,
    span_sum,
    zero_subspace,
)

F2 = field_from_order(2)
F3 = field_from_order(3)
F4 = field_from_order(4)


def _random_rows(rng, field, count, width):
    return [[rng.randrange(field.order) for _ in range(width)] for _ in range(count)]


def test_rref_canonical_golden():
    s = rref(F2, 3, [(1, 1, 0), (0, 1, 1)])
    assert s.basis == ((1, 0, 1), (0, 1, 1))
    assert s.dim == 2
    # dependent rows collapse
    s2 = rref(F2, 3, [(1, 1, 0), (1, 1, 0), (0, 0, 0)])
    assert s2.basis == ((1, 1, 0),)


def test_rref_scaling_needs_nonbinary_field():
    s = rref(F3, 2, [(2, 1)])
    assert s.basis == ((1, 2),)


def test_rref_invariant_under_row_shuffle_and_scale():
    rng = random.Random(11)
    for field in (F2, F3, F4):
        for _ in range(40):
            rows = _random_rows(rng, field, 3, 5)
            a = rref(field, 5, rows)
            shuffled = rows[:]
            rng.shuffle(shuffled)
            scaled = [
                [field.mul(c, scale) for c in row]
                for row, scale in zip(shuffled, [rng.randrange(1, field.order) for _ in shuffled])
            ]
            assert rref(field, 5, scaled) == a


def test_subspace_rejects_bad_entries():
    with pytest.raises(ValueError):
        Subspace.from_dict(F2, {"ambient": 2, "basis": [[1, 2]]})


def test_vectors_enumerates_all_points():
    s = rref(F3, 3, [(1, 0, 1), (0, 1, 2)])
    pts = list(s.vectors())
    assert len(pts) == 9 and len(set(pts)) == 9
    assert all(s.contains_vector(v) for v in pts)


def test_zero_full_coordinate():
    assert zero_subspace(F2, 4).dim == 0
    assert full_subspace(F2, 4).dim == 4
    c = coordinate_subspace(F2, 4, [2, 0])
    assert c.basis == ((1, 0, 0, 0), (0, 0, 1, 0))
    with pytest.raises(BadDims):
        coordinate_subspace(F2, 4, [4])


def test_echelon_matches_rref():
    rng = random.Random(5)
    for field in (F2, F3):
        for _ in range(50):
            rows = _random_rows(rng, field, 4, 5)
            ech = Echelon(field, 5)
            for r in rows:
                ech.insert(r)
            assert ech.rank == rref(field, 5, rows).dim
            inside = rows[rng.randrange(len(rows))]
            assert ech.contains(inside)


def test_grassmann_identity_battery():
    # dim(A+B) + dim(A∩B) == dim A + dim B, across fields and sizes
    rng = random.Random(23)
    for field in (F2, F3, F4):
        for _ in range(60):
            d = rng.randrange(2, 6)
            a = rref(field, d, _random_rows(rng, field, rng.randrange(1, d + 1), d))
            b = rref(field, d, _random_rows(rng, field, rng.randrange(1, d + 1), d))
            u = span_sum(a, b)
            i = intersect(a, b)
            assert u.dim + i.dim == a.dim + b.dim
            assert is_subspace_of(i, a) and is_subspace_of(i, b)
            assert is_subspace_of(a, u) and is_subspace_of(b, u)


def test_intersect_membership_exact():
    # the intersection contains exactly the common vectors
    rng = random.Random(31)
    for _ in range(30):
        a = rref(F2, 4, _random_rows(rng, F2, 2, 4))
        b = rref(F2, 4, _random_rows(rng, F2, 2, 4))
        i = intersect(a, b)
        common = {v for v in a.vectors() if b.contains_vector(v)}
        assert set(i.vectors()) == common


def test_peer_checks():
    with pytest.raises(AmbientMismatch):
        span_sum(zero_subspace(F2, 3), zero_subspace(F2, 4))
    with pytest.raises(ValueError):
        intersect(zero_subspace(F2, 3), zero_subspace(F3, 3))


def test_complement_within():
    rng = random.Random(47)
    for field in (F2, F3):
        for _ in range(40):
            d = rng.randrange(2, 6)
            b = rref(field, d, _random_rows(rng, field, rng.randrange(1, d + 1), d))
            sub_rows = [r for r in b.basis if rng.random() < 0.6]
            a = rref(field, d, sub_rows)
            c = complement_within(a, b)
            assert intersect(a, c).dim == 0
            assert span_sum(a, c) == b
    with pytest.raises(NotNested):
        complement_within(full_subspace(F2, 3), coordinate_subspace(F2, 3, [0]))


def test_quotient_map_properties():
    rng = random.Random(59)
    for _ in range(30):
        d = rng.randrange(2, 6)
        s_rows = _random_rows(rng, F2, d, d)
        s = rref(F2, d, s_rows)
        if s.dim == 0:
            continue
        c_rows = [r for r in s.basis if rng.random() < 0.5]
        c = rref(F2, d, c_rows)
        qm = quotient_map(s, c)
        assert qm.target_dim == s.dim - c.dim
        # kernel on s is exactly c
        for v in s.vectors():
            img = qm.apply(v)
            assert (img == (0,) * qm.target_dim) == c.contains_vector(v)
        # image of s is everything
        assert qm.map_subspace(s).dim == qm.target_dim
        # preimage round trip
        y = qm.map_subspace(s)
        back = qm.preimage(y)
        assert back == s


def test_quotient_map_is_linear():
    s = full_subspace(F3, 4)
    c = coordinate_subspace(F3, 4, [0])
    qm = quotient_map(s, c)
    rng = random.Random(61)
    for _ in range(50):
        u = [rng.randrange(3) for _ in range(4)]
        v = [rng.randrange(3) for _ in range(4)]
        uv = [F3.add(a, b) for a, b in zip(u, v)]
        lhs = qm.apply(uv)
        rhs = tuple(F3.add(a, b) for a, b in zip(qm.apply(u), qm.apply(v)))
        assert lhs == rhs


def test_quotient_requires_nesting():
    with pytest.raises(NotNested):
        quotient_map(coordinate_subspace(F2, 3, [0]), coordinate_subspace(F2, 3, [1]))


def test_random_subspace_golden_stream():
    # pins the reference sampling stream; a change here breaks replayability
    s = random_subspace(4, 2, F2, seed=42)
    assert s.basis == ((1, 0, 0, 0), (0, 0, 1, 1))
    s3 = random_subspace(3, 2, F3, seed=7)
    assert s3.basis == ((1, 0, 0), (0, 0, 1))


def test_random_subspace_dimensions_and_determinism():
    for seed in range(20):
        a = random_subspace(5, 3, F2, seed=seed)
        b = random_subspace(5, 3, F2, seed=seed)
        assert a == b and a.dim == 3 and a.ambient_dim == 5
    with pytest.raises(BadDims):
        random_subspace(2, 3, F2, seed=0)


def test_embed_subspace():
    s = rref(F2, 2, [(1, 1)])
    e = embed_subspace(s, 4)
    assert e.basis == ((1, 1, 0, 0),) and e.ambient_dim == 4
    with pytest.raises(BadDims):
        embed_subspace(s, 1)
