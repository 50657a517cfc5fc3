"""Convex-layer peeling: repeatedly strip hull vertices, label by round.

Layer 1 is the vertex set of the whole input; layer i+1 is the vertex
set of what remains after layers 1..i are gone. Indices are 1-based and
every input point receives exactly one. Lower-dimensional remainders
need no special casing: the extreme-point predicate is affine-rank
agnostic, so e.g. a collinear remainder peels by its two endpoints.

Every peel run, from any engine, ends by asserting norm descent: the
maximum squared norm per layer must strictly decrease. A failure is
reported as an internal inconsistency, never returned as a result.
"""

from __future__ import annotations

from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .core import (
    DomainError,
    InternalInconsistencyError,
    Point,
    PointSet,
    norm_sq,
)
from .hull import affine_rank, extreme_points
from .kernels import peel2d_layers


class LayerAssignment:
    """Immutable layer labeling of a point set.

    Holds the source set and one positive layer index per point, aligned
    with the source's lexicographic order.
    """

    __slots__ = ("_source", "_labels", "_num_layers", "_by_layer")

    def __init__(self, source: PointSet, labels: Sequence[int]):
        labels = tuple(int(v) for v in labels)
        if len(labels) != len(source):
            raise DomainError(
                f"{len(labels)} labels for {len(source)} points"
            )
        if not labels:
            raise DomainError("empty assignment")
        top = max(labels)
        if min(labels) < 1:
            raise DomainError("layer indices must be positive")
        seen = [False] * top
        for v in labels:
            seen[v - 1] = True
        if not all(seen):
            missing = seen.index(False) + 1
            raise DomainError(f"no point carries layer index {missing}")
        self._source = source
        self._labels = labels
        self._num_layers = top
        self._by_layer: Optional[List[PointSet]] = None

    @property
    def source(self) -> PointSet:
        return self._source

    @property
    def num_layers(self) -> int:
        return self._num_layers

    @property
    def labels(self) -> tuple:
        """Layer index per point, aligned with source.points."""
        return self._labels

    def layer_of(self, p: Point) -> int:
        try:
            idx = self._source.index_of(p)
        except KeyError:
            raise DomainError(f"{p} is not in the peeled set")
        return self._labels[idx]

    def layer(self, i: int) -> PointSet:
        """The points of layer i (1-based), as a PointSet."""
        if not 1 <= i <= self._num_layers:
            raise DomainError(
                f"layer {i} out of range 1..{self._num_layers}"
            )
        return self.layers()[i - 1]

    def layers(self) -> List[PointSet]:
        if self._by_layer is None:
            buckets: List[list] = [[] for _ in range(self._num_layers)]
            for p, v in zip(self._source, self._labels):
                buckets[v - 1].append(p)
            self._by_layer = [
                PointSet._presorted(tuple(b), self._source.dimension)
                for b in buckets
            ]
        return list(self._by_layer)

    def layer_sizes(self) -> Tuple[int, ...]:
        counts = [0] * self._num_layers
        for v in self._labels:
            counts[v - 1] += 1
        return tuple(counts)

    def __iter__(self) -> Iterator:
        """(point, layer index) pairs in lexicographic point order."""
        return iter(zip(self._source, self._labels))

    def __eq__(self, other) -> bool:
        if not isinstance(other, LayerAssignment):
            return NotImplemented
        return self._source == other._source and self._labels == other._labels

    def __hash__(self):
        return hash((self._source, self._labels))

    def __repr__(self) -> str:
        return (
            f"LayerAssignment({len(self._source)} points, "
            f"{self._num_layers} layers)"
        )


def layer_max_norm_sq(a: LayerAssignment) -> Tuple[int, ...]:
    """Maximum squared norm per layer, indexed by layer - 1."""
    out: List[Optional[int]] = [None] * a.num_layers
    for p, v in a:
        m = norm_sq(p)
        cur = out[v - 1]
        if cur is None or m > cur:
            out[v - 1] = m
    return tuple(int(v) for v in out)  # type: ignore[arg-type]


def _assert_norm_descent(a: LayerAssignment) -> LayerAssignment:
    # tangent-sphere argument: each layer's max norm must drop strictly
    radii = layer_max_norm_sq(a)
    for i in range(1, len(radii)):
        if radii[i] >= radii[i - 1]:
            raise InternalInconsistencyError(
                f"norm descent violated between layers {i} and {i + 1}: "
                f"{radii[i - 1]} then {radii[i]}"
            )
    return a


def _rank_le_1_labels(s: PointSet) -> List[int]:
    # along a line, each round peels the two lex endpoints
    n = len(s)
    return [min(i, n - 1 - i) + 1 for i in range(n)]


def _peel_generic(s: PointSet) -> LayerAssignment:
    if affine_rank(s.points) <= 1:
        return _assert_norm_descent(
            LayerAssignment(s, _rank_le_1_labels(s))
        )
    label: Dict[Point, int] = {}
    remaining = s
    cur = 0
    while len(remaining):
        cur += 1
        verts = extreme_points(remaining)
        for p in verts:
            label[p] = cur
        remaining = remaining.difference(verts)
    return _assert_norm_descent(
        LayerAssignment(s, [label[p] for p in s])
    )


def peel_2d(s: PointSet) -> LayerAssignment:
    """Fast 2D peeling: one sort, then monotone chains per layer."""
    if s.dimension != 2:
        raise DomainError(f"peel_2d requires dimension 2, got {s.dimension}")
    if len(s) == 0:
        raise DomainError("cannot peel an empty set")
    labels, _ = peel2d_layers(s)
    return _assert_norm_descent(LayerAssignment(s, labels))


def peel(s: PointSet, force_generic: bool = False) -> LayerAssignment:
    """Full convex-layer assignment of a nonempty integer point set.

    Dispatches to the specialized 2D engine when the dimension is 2;
    force_generic keeps the dimension-agnostic path (the equivalence
    tests rely on this).
    """
    if len(s) == 0:
        raise DomainError("cannot peel an empty set")
    if s.dimension == 2 and not force_generic:
        return peel_2d(s)
    return _peel_generic(s)
