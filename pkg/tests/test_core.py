"""Core primitives: points, point sets, grids, conventions."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from onionpeel import (
    DomainError,
    Grid,
    PointSet,
    SizeLimitError,
    as_point,
    materialize,
    materialize_box,
    max_points_cap,
    norm_sq,
    translate_convention,
    translate_convention_inv,
)
from onionpeel.core import INT64_SAFE_COORD, MAX_POINTS_ENV


def test_as_point_normalizes_integral_types():
    assert as_point([np.int64(2), 3]) == (2, 3)
    assert all(type(c) is int for c in as_point([np.int32(1), np.int64(5)]))


def test_as_point_rejects_floats_and_empty():
    with pytest.raises(DomainError):
        as_point((1.5, 2))
    with pytest.raises(DomainError):
        as_point(())


def test_norm_sq():
    assert norm_sq((3, -4)) == 25
    assert norm_sq((0,)) == 0
    big = 10**12
    assert norm_sq((big, big)) == 2 * big * big  # exact, no overflow


def test_pointset_sorts_dedups_and_validates():
    s = PointSet([(1, 0), (0, 1), (1, 0), (0, 0)])
    assert s.points == ((0, 0), (0, 1), (1, 0))
    assert len(s) == 3 and (1, 0) in s and (2, 2) not in s
    with pytest.raises(DomainError):
        PointSet([(1, 2), (1, 2, 3)])
    with pytest.raises(DomainError):
        PointSet([])


def test_pointset_empty_with_explicit_dimension():
    s = PointSet([], 2)
    assert len(s) == 0 and s.dimension == 2


def test_pointset_index_and_difference():
    s = PointSet([(0, 0), (1, 1), (2, 2)])
    assert s.index_of((1, 1)) == 1
    with pytest.raises(KeyError):
        s.index_of((5, 5))
    t = s.difference([(1, 1)])
    assert t.points == ((0, 0), (2, 2))
    assert s.points == ((0, 0), (1, 1), (2, 2))  # original untouched


def test_pointset_int64_array_cache_and_guard():
    s = PointSet([(1, 2), (3, 4)])
    arr = s.int64_array()
    assert arr is not None and arr.dtype == np.int64
    assert not arr.flags.writeable
    assert s.int64_array() is arr  # cached
    huge = PointSet([(INT64_SAFE_COORD + 1, 0), (0, 0)])
    assert huge.int64_array() is None


def test_grid_basics():
    g = Grid(2, 3)
    assert g.side == 7 and g.point_count == 49
    assert (3, -3) in g and (4, 0) not in g and (0, 0, 0) not in g
    with pytest.raises(DomainError):
        Grid(0, 3)
    with pytest.raises(DomainError):
        Grid(2, -1)


def test_materialize_lex_order_and_cap():
    s = materialize(Grid(2, 1))
    assert s.points[0] == (-1, -1) and s.points[-1] == (1, 1)
    assert len(s) == 9
    with pytest.raises(SizeLimitError):
        materialize(Grid(2, 100), cap=100)


def test_materialize_box():
    s = materialize_box(2, 0, 2)
    assert len(s) == 9 and s.points[0] == (0, 0)
    with pytest.raises(DomainError):
        materialize_box(2, 3, 1)
    with pytest.raises(SizeLimitError):
        materialize_box(3, 0, 99, cap=10)


def test_max_points_cap_sources(monkeypatch):
    assert max_points_cap(123) == 123
    monkeypatch.setenv(MAX_POINTS_ENV, "456")
    assert max_points_cap() == 456
    assert max_points_cap(7) == 7  # explicit override beats env
    monkeypatch.setenv(MAX_POINTS_ENV, "junk")
    with pytest.raises(DomainError):
        max_points_cap()


def test_translate_convention_round_trip():
    assert translate_convention((1, 1), 3) == (-3, -3)
    assert translate_convention((7, 4), 3) == (3, 0)
    assert translate_convention_inv((-3, 0), 3) == (1, 4)
    with pytest.raises(DomainError):
        translate_convention((0, 1), 3)
    with pytest.raises(DomainError):
        translate_convention_inv((4, 0), 3)


@given(st.integers(1, 4), st.integers(0, 3))
def test_translate_convention_inverse_property(d, n):
    g = Grid(d, n)
    for p in materialize(g):
        assert translate_convention(translate_convention_inv(p, n), n) == p
