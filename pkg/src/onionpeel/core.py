"""Exact integer geometry primitives: points, point sets, and grids.

Coordinates are arbitrary-precision Python ints and every operation here
is exact; there is no floating point anywhere in this module. A point is
a plain tuple of ints, so hashing, equality, and lexicographic ordering
come for free, and a PointSet is an immutable, deduplicated, lex-sorted
collection of points of one common dimension. numpy arrays appear only
as an optional acceleration cache for coordinates that fit in int64.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product
from operator import index as _index
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

Point = tuple  # a point is a tuple[int, ...]; the alias is documentation

DEFAULT_MAX_POINTS = 2_000_000
MAX_POINTS_ENV = "ONIONPEEL_MAX_POINTS"

# Largest |coordinate| for which int64 caches are handed out. Chosen so a
# 2D cross product of coordinate differences, (2C)*(2C)*2, stays < 2**63.
INT64_SAFE_COORD = 10**9


class OnionError(Exception):
    """Base class for errors raised by this package."""


class DomainError(OnionError, ValueError):
    """Input outside an operation's domain (dimension mismatch, bad range)."""


class SizeLimitError(OnionError):
    """A configurable size cap was exceeded."""


class ParseError(OnionError, ValueError):
    """Malformed input file or serialized document."""


class InternalInconsistencyError(OnionError):
    """A computed result failed one of its own invariants: a bug, never
    a valid outcome."""


def max_points_cap(override: Optional[int] = None) -> int:
    """Active point-count cap: explicit override, else env var, else default."""
    if override is not None:
        return int(override)
    env = os.environ.get(MAX_POINTS_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise DomainError(f"{MAX_POINTS_ENV} must be an integer, got {env!r}")
    return DEFAULT_MAX_POINTS


def as_point(coords: Sequence) -> Point:
    """Normalize a coordinate sequence to a tuple of Python ints.

    Accepts anything integral (numpy ints included); rejects floats so no
    silent rounding can occur.
    """
    try:
        p = tuple(_index(c) for c in coords)
    except TypeError:
        raise DomainError(f"non-integer coordinates in {coords!r}")
    if not p:
        raise DomainError("points must have dimension >= 1")
    return p


def norm_sq(p: Point) -> int:
    """Squared Euclidean norm, exact."""
    return sum(c * c for c in p)


class PointSet:
    """Immutable, deduplicated set of equal-dimension integer points.

    Iteration order is lexicographic by coordinates, so everything derived
    from a PointSet is reproducible byte-for-byte across runs.
    """

    __slots__ = ("_dimension", "_pts", "_members", "_arr", "_arr_ready")

    def __init__(self, points: Iterable[Sequence], dimension: Optional[int] = None):
        pts = sorted({as_point(p) for p in points})
        if dimension is None:
            if not pts:
                raise DomainError("cannot infer dimension of an empty PointSet")
            dimension = len(pts[0])
        if dimension < 1:
            raise DomainError(f"dimension must be >= 1, got {dimension}")
        for p in pts:
            if len(p) != dimension:
                raise DomainError(
                    f"point {p} has dimension {len(p)}, expected {dimension}"
                )
        self._finish(tuple(pts), dimension)

    def _finish(self, pts: tuple, dimension: int) -> None:
        self._dimension = dimension
        self._pts = pts
        self._members = frozenset(pts)
        self._arr = None
        self._arr_ready = False

    @classmethod
    def _presorted(cls, pts: Sequence[Point], dimension: int) -> "PointSet":
        """Internal constructor for points already sorted, unique, validated."""
        self = object.__new__(cls)
        self._finish(tuple(pts), dimension)
        return self

    @property
    def dimension(self) -> int:
        return self._dimension

    @property
    def points(self) -> tuple:
        return self._pts

    def __len__(self) -> int:
        return len(self._pts)

    def __iter__(self) -> Iterator[Point]:
        return iter(self._pts)

    def __contains__(self, p) -> bool:
        return p in self._members

    def __getitem__(self, i: int) -> Point:
        return self._pts[i]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PointSet)
            and self._dimension == other._dimension
            and self._pts == other._pts
        )

    def __hash__(self) -> int:
        return hash((self._dimension, self._pts))

    def __repr__(self) -> str:
        return f"PointSet(d={self._dimension}, n={len(self._pts)})"

    def index_of(self, p: Point) -> int:
        """Position of p in lexicographic order (binary search)."""
        import bisect

        i = bisect.bisect_left(self._pts, p)
        if i == len(self._pts) or self._pts[i] != p:
            raise KeyError(p)
        return i

    def difference(self, remove: Iterable[Point]) -> "PointSet":
        """New PointSet without the given points; order preserved."""
        drop = set(remove)
        kept = [p for p in self._pts if p not in drop]
        return PointSet._presorted(kept, self._dimension)

    def max_abs_coord(self) -> int:
        return max((abs(c) for p in self._pts for c in p), default=0)

    def int64_array(self) -> Optional[np.ndarray]:
        """Coordinates as an (N, d) int64 array, or None if any coordinate
        is too large for the int64-safe regime. Cached."""
        if not self._arr_ready:
            if self._pts and self.max_abs_coord() <= INT64_SAFE_COORD:
                arr = np.array(self._pts, dtype=np.int64)
                arr.setflags(write=False)
                self._arr = arr
            else:
                self._arr = None
            self._arr_ready = True
        return self._arr


@dataclass(frozen=True)
class Grid:
    """The centered integer grid [-n, n]^d."""

    d: int
    n: int

    def __post_init__(self):
        if self.d < 1:
            raise DomainError(f"grid dimension must be >= 1, got {self.d}")
        if self.n < 0:
            raise DomainError(f"grid radius must be >= 0, got {self.n}")

    @property
    def side(self) -> int:
        return 2 * self.n + 1

    @property
    def point_count(self) -> int:
        return self.side**self.d

    def __contains__(self, p) -> bool:
        return len(p) == self.d and all(-self.n <= c <= self.n for c in p)


def materialize(g: Grid, cap: Optional[int] = None) -> PointSet:
    """All (2n+1)^d lattice points of the grid, in lexicographic order.

    Refuses to allocate more than the active point-count cap.
    """
    count = g.point_count
    limit = max_points_cap(cap)
    if count > limit:
        raise SizeLimitError(
            f"grid [-{g.n},{g.n}]^{g.d} has {count} points, over the cap of {limit}"
        )
    rng = range(-g.n, g.n + 1)
    pts = list(product(rng, repeat=g.d))  # product iterates lexicographically
    return PointSet._presorted(pts, g.d)


def materialize_box(d: int, lo: int, hi: int, cap: Optional[int] = None) -> PointSet:
    """All lattice points of [lo, hi]^d, in lexicographic order.

    The general-box companion of materialize, for inputs that are not
    centered grids (e.g. even side lengths). Same cap behavior.
    """
    if d < 1:
        raise DomainError(f"dimension must be >= 1, got {d}")
    if hi < lo:
        raise DomainError(f"empty box: [{lo}, {hi}]")
    count = (hi - lo + 1) ** d
    limit = max_points_cap(cap)
    if count > limit:
        raise SizeLimitError(
            f"box [{lo},{hi}]^{d} has {count} points, over the cap of {limit}"
        )
    pts = list(product(range(lo, hi + 1), repeat=d))
    return PointSet._presorted(pts, d)


def translate_convention(p: Point, n: int) -> Point:
    """Map a point of [1, 2n+1]^d to the centered grid [-n, n]^d."""
    for c in p:
        if not 1 <= c <= 2 * n + 1:
            raise DomainError(f"coordinate {c} outside [1, {2 * n + 1}]")
    return tuple(c - (n + 1) for c in p)


def translate_convention_inv(p: Point, n: int) -> Point:
    """Inverse of translate_convention: [-n, n]^d back to [1, 2n+1]^d."""
    for c in p:
        if not -n <= c <= n:
            raise DomainError(f"coordinate {c} outside [-{n}, {n}]")
    return tuple(c + (n + 1) for c in p)
