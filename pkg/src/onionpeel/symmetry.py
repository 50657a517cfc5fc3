"""Signed-permutation symmetry of centered grids and orbit-reduced peeling.

The symmetry group of the grid [-n, n]^d is the hyperoctahedral group:
all coordinate permutations composed with sign flips, 2^d * d! elements.
Peeling commutes with the group action, so on a grid it suffices to
classify one canonical representative per orbit and broadcast the
verdict; that is what peel_orbits does.

Canonical form: absolute values of the coordinates, sorted nonincreasing.
Two points share an orbit iff their canonical forms coincide, and the
orbit size reads off the multiset structure directly:
2^z * d! / prod(m_v!) with z nonzero coordinates and m_v the multiplicity
of each distinct absolute value (zero included).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement, permutations, product
from math import factorial
from typing import Dict, Iterable, List, Sequence, Tuple, Union

from .core import (
    DomainError,
    Grid,
    Point,
    PointSet,
    as_point,
    materialize,
    norm_sq,
)
from .hull import lattice_directions
from .peel import LayerAssignment, _assert_norm_descent
from .simplex import convex_membership


@dataclass(frozen=True)
class SignedPermutation:
    """One grid symmetry: permute coordinates, then flip chosen signs."""

    perm: Tuple[int, ...]
    signs: Tuple[int, ...]

    def __post_init__(self):
        d = len(self.perm)
        if sorted(self.perm) != list(range(d)):
            raise DomainError(f"{self.perm} is not a permutation of 0..{d - 1}")
        if len(self.signs) != d or any(s not in (-1, 1) for s in self.signs):
            raise DomainError("signs must be a +-1 vector of matching length")

    @property
    def dimension(self) -> int:
        return len(self.perm)

    def apply(self, p: Point) -> Point:
        if len(p) != len(self.perm):
            raise DomainError(
                f"point dimension {len(p)} != group dimension {len(self.perm)}"
            )
        return tuple(self.signs[i] * p[self.perm[i]] for i in range(len(p)))


def hyperoctahedral_group(d: int) -> Tuple[SignedPermutation, ...]:
    """All 2^d * d! signed permutations in dimension d."""
    if d < 1:
        raise DomainError(f"dimension must be >= 1, got {d}")
    return tuple(
        SignedPermutation(perm, signs)
        for perm in permutations(range(d))
        for signs in product((1, -1), repeat=d)
    )


def canonicalize(p: Point) -> Point:
    """The orbit representative: absolute values, sorted nonincreasing."""
    return tuple(sorted((abs(c) for c in as_point(p)), reverse=True))


@dataclass(frozen=True)
class Orbit:
    representative: Point
    size: int


def _orbit_size(rep: Point) -> int:
    z = sum(1 for c in rep if c)
    size = (2**z) * factorial(len(rep))
    mult: Dict[int, int] = {}
    for c in rep:
        mult[c] = mult.get(c, 0) + 1
    for m in mult.values():
        size //= factorial(m)
    return size


def orbit_of(p: Point) -> Orbit:
    rep = canonicalize(p)
    return Orbit(representative=rep, size=_orbit_size(rep))


def orbit_points(rep: Point) -> List[Point]:
    """Every distinct image of rep's orbit, in arbitrary order."""
    rep = canonicalize(rep)
    out = []
    for perm in set(permutations(rep)):
        nz = [i for i, c in enumerate(perm) if c]
        for signs in product((1, -1), repeat=len(nz)):
            q = list(perm)
            for i, s in zip(nz, signs):
                q[i] *= s
            out.append(tuple(q))
    return out


def grid_representatives(g: Grid) -> List[Point]:
    """Canonical representatives of all orbits of the grid, lex sorted."""
    return [
        tuple(c)
        for c in combinations_with_replacement(range(g.n, -1, -1), g.d)
    ]


def _as_grid(source: Union[Grid, PointSet]) -> Grid:
    if isinstance(source, Grid):
        return source
    n = source.max_abs_coord()
    g = Grid(source.dimension, n)
    if len(source) != g.point_count or source != materialize(g):
        raise DomainError(
            "orbit peeling requires a full centered grid; "
            "the symmetry broadcast is unsound otherwise"
        )
    return g


def peel_orbits(source: Union[Grid, PointSet]) -> LayerAssignment:
    """Peel a centered grid by classifying one point per orbit.

    Identical output to peel(materialize(g)); work is shared across each
    orbit because a layer is a union of orbits. Non-grid input is
    refused.
    """
    g = _as_grid(source)
    pts = materialize(g)
    if g.n == 0:
        return LayerAssignment(pts, [1] * len(pts))
    if g.d == 1:
        # endpoints peel per round: orbit {+-k} lands in layer n-k+1
        return _assert_norm_descent(
            LayerAssignment(pts, [g.n - abs(p[0]) + 1 for p in pts])
        )

    reps = grid_representatives(g)
    alive: Dict[Point, bool] = {r: True for r in reps}
    rep_layer: Dict[Point, int] = {}
    dirs = lattice_directions(g.d)
    cur = 0
    remaining = len(reps)

    def in_current(q: Point) -> bool:
        return q in g and alive.get(canonicalize(q), False)

    while remaining:
        cur += 1
        layer_reps: List[Point] = []
        undecided: List[Point] = []
        candidates: List[Point] = []  # filter survivors, expanded lazily below
        top = max(norm_sq(r) for r, a in alive.items() if a)
        for r in reps:
            if not alive[r]:
                continue
            if norm_sq(r) == top:
                # max-norm orbit is extreme by the tangent-sphere argument
                layer_reps.append(r)
                candidates.append(r)
                continue
            blocked = False
            for v in dirs:
                plus = tuple(a + b for a, b in zip(r, v))
                if not in_current(plus):
                    continue
                minus = tuple(a - b for a, b in zip(r, v))
                if in_current(minus):
                    blocked = True
                    break
            if not blocked:
                undecided.append(r)
                candidates.append(r)
        if undecided:
            # candidate orbits cover every hull vertex, so membership
            # against their expansion is exact
            pool = sorted(
                q for rep in candidates for q in orbit_points(rep)
            )
            for r in undecided:
                others = [q for q in pool if q != r]
                if convex_membership(r, others).feasible:
                    continue
                layer_reps.append(r)
        for r in layer_reps:
            rep_layer[r] = cur
            alive[r] = False
            remaining -= 1

    labels = [rep_layer[canonicalize(p)] for p in pts]
    return _assert_norm_descent(LayerAssignment(pts, labels))
