"""Extreme-point classification against the brute-force oracle."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import point_sets
from onionpeel import (
    DomainError,
    ExtremenessQuery,
    PointSet,
    SizeLimitError,
    affine_rank,
    brute_force_is_extreme,
    extreme_points,
    is_extreme,
    materialize,
    Grid,
)
from onionpeel.hull import _filter_numpy, _filter_python, lattice_directions


def test_query_requires_subject_in_ambient():
    with pytest.raises(DomainError):
        ExtremenessQuery((5, 5), PointSet([(0, 0), (1, 1)]))
    with pytest.raises(DomainError):
        ExtremenessQuery((0, 0, 0), PointSet([(0, 0), (1, 1)]))


def test_singleton_is_extreme():
    v = is_extreme(ExtremenessQuery((3, 4), PointSet([(3, 4)])))
    assert v.extreme and v.witness is None


def test_midpoint_of_cube_edge():
    amb = PointSet([(1, 0, 0), (1, 1, 0), (1, -1, 0), (0, 0, 1)])
    v = is_extreme(ExtremenessQuery((1, 0, 0), amb))
    assert not v.extreme
    assert dict(v.witness.support) == {
        (1, 1, 0): Fraction(1, 2),
        (1, -1, 0): Fraction(1, 2),
    }


def test_octahedron_vertex():
    amb = PointSet(
        [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
    )
    assert is_extreme(ExtremenessQuery((1, 0, 0), amb)).extreme


def test_false_verdicts_carry_verified_witness():
    amb = materialize(Grid(2, 2))
    for p in amb:
        v = is_extreme(ExtremenessQuery(p, amb))
        if not v.extreme:
            assert v.witness.verify(p, amb)
        else:
            assert p in {(-2, -2), (-2, 2), (2, -2), (2, 2)}


def test_affine_rank():
    assert affine_rank([(0, 0)]) == 0
    assert affine_rank([(0, 0), (2, 4), (1, 2)]) == 1
    assert affine_rank([(0, 0), (1, 0), (0, 1)]) == 2
    assert affine_rank([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)]) == 2
    assert affine_rank(materialize(Grid(3, 1)).points) == 3


def test_lattice_directions_no_antipodal_pairs():
    for d in (1, 2, 3, 4):
        dirs = lattice_directions(d)
        assert len(dirs) == (3**d - 1) // 2
        as_set = set(dirs)
        assert all(tuple(-c for c in v) not in as_set for v in dirs)


def test_extreme_points_square_grid():
    ep = extreme_points(materialize(Grid(2, 2)))
    assert ep.points == ((-2, -2), (-2, 2), (2, -2), (2, 2))


def test_extreme_points_collinear_endpoints():
    ep = extreme_points(PointSet([(i, 2 * i) for i in range(7)]))
    assert ep.points == ((0, 0), (6, 12))


def test_extreme_points_tiny_sets():
    assert len(extreme_points(PointSet([(1, 1)]))) == 1
    assert len(extreme_points(PointSet([(0, 0), (1, 1)]))) == 2
    with pytest.raises(DomainError):
        extreme_points(PointSet([], 2))


def test_filters_agree():
    """The vectorized and plain midpoint/norm filters are interchangeable.

    Includes the regression set where base-(2c+1) key packing used to
    alias out-of-box probe points onto set members.
    """
    from onionpeel import peel_orbits

    a = peel_orbits(Grid(4, 2))
    regression = PointSet([p for p, v in a if v >= 6], 4)
    sets = [
        regression,
        materialize(Grid(2, 3)),
        materialize(Grid(3, 2)),
        PointSet([(0, 0), (1, 0), (0, 1), (1, 1), (2, 2)]),
    ]
    for s in sets:
        e1, u1 = _filter_python(s)
        e2, u2 = _filter_numpy(s, s.int64_array())
        assert sorted(e1) == sorted(e2)
        assert sorted(u1) == sorted(u2)


@given(point_sets(max_dim=4, max_coord=4, max_points=30))
@settings(max_examples=150, deadline=None)
def test_filter_implementations_equivalent(s):
    arr = s.int64_array()
    e1, u1 = _filter_python(s)
    e2, u2 = _filter_numpy(s, arr)
    assert sorted(e1) == sorted(e2) and sorted(u1) == sorted(u2)


def test_brute_force_cap():
    s = materialize(Grid(2, 5))  # 121 points
    with pytest.raises(SizeLimitError):
        brute_force_is_extreme(ExtremenessQuery((0, 0), s))
    assert brute_force_is_extreme(ExtremenessQuery((0, 0), s), cap=200) is False


@given(point_sets(max_dim=3, max_coord=4, max_points=16))
@settings(max_examples=200, deadline=None)
def test_is_extreme_matches_oracle(s):
    """The LP classifier and the subset-enumeration oracle must agree on
    every point of every set."""
    for p in s:
        q = ExtremenessQuery(p, s)
        assert bool(is_extreme(q)) == brute_force_is_extreme(q)


@given(point_sets(max_dim=3, max_coord=4, max_points=20))
@settings(max_examples=150, deadline=None)
def test_extreme_points_matches_pointwise(s):
    """Bulk classification equals the point-by-point LP answers."""
    bulk = set(extreme_points(s))
    single = {p for p in s if is_extreme(ExtremenessQuery(p, s)).extreme}
    assert bulk == single
