"""Machine-checkable certificates bounding a grid's layer count.

Two independent mechanisms:

* Norm descent (upper bound): the maximum squared norm per layer is a
  strictly decreasing sequence of nonnegative integers starting at
  d*n^2, so there are at most d*n^2 + 1 layers. The certificate is the
  sequence itself.

* Precedence chain (lower bound): write x < y when the two points agree
  outside a single coordinate k and |x_k| < |y_k|. Such an x is a convex
  combination of y and y's reflection in coordinate k, which share a
  layer by symmetry, so x is peeled strictly after y. A chain of d*n + 1
  points from the origin to the corner, each step increasing one
  coordinate, therefore meets d*n + 1 distinct layers. The certificate
  is the chain with its layer indices.

The verifier re-checks every invariant from the raw certificate data
using only integer arithmetic and the precedence predicate. It never
runs the peeler, so a peeling bug cannot certify itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from operator import index as _index
from typing import List, Optional, Tuple, Union

from .core import (
    DomainError,
    Grid,
    InternalInconsistencyError,
    ParseError,
    Point,
    materialize,
)
from .hull import ConvexCombinationWitness
from .peel import LayerAssignment, layer_max_norm_sq


def upper_bound(d: int, n: int) -> int:
    """Largest possible layer count of [-n, n]^d: d*n^2 + 1."""
    if d < 1 or n < 0:
        raise DomainError(f"need d >= 1 and n >= 0, got d={d}, n={n}")
    return d * n * n + 1


def lower_bound(d: int, n: int) -> int:
    """Smallest possible layer count of [-n, n]^d: d*n + 1."""
    if d < 1 or n < 0:
        raise DomainError(f"need d >= 1 and n >= 0, got d={d}, n={n}")
    return d * n + 1


def prec(x: Point, y: Point) -> bool:
    """Precedence: x and y agree except in one coordinate k, |x_k| < |y_k|."""
    if len(x) != len(y):
        raise DomainError(f"dimension mismatch: {len(x)} vs {len(y)}")
    k = None
    for i, (a, b) in enumerate(zip(x, y)):
        if a != b:
            if k is not None:
                return False
            k = i
    return k is not None and abs(x[k]) < abs(y[k])


def convex_witness_for_prec(
    x: Point, y: Point, a: LayerAssignment
) -> ConvexCombinationWitness:
    """The two-point witness placing x inside the hull of y's layer.

    x = c1*y + c2*y' with y' the reflection of y in the differing
    coordinate and c1, c2 = (1 +- x_k/y_k)/2. Both support points share
    y's layer in `a` (reflections are grid symmetries), which is what
    forces layer_of(x) > layer_of(y).
    """
    if not prec(x, y):
        raise DomainError(f"{x} does not precede {y}")
    k = next(i for i, (p, q) in enumerate(zip(x, y)) if p != q)
    yk = y[k]
    y_ref = tuple(-c if i == k else c for i, c in enumerate(y))
    ratio = Fraction(x[k], yk)
    c1 = (1 + ratio) / 2
    c2 = (1 - ratio) / 2
    witness = ConvexCombinationWitness(((y, c1), (y_ref, c2)))
    if not witness.verify(x):
        raise InternalInconsistencyError("precedence witness failed verification")
    if a.layer_of(y) != a.layer_of(y_ref):
        raise InternalInconsistencyError(
            f"reflection {y_ref} not in the same layer as {y}; "
            "input assignment is not symmetry-invariant"
        )
    return witness


@dataclass(frozen=True)
class NormDescentCertificate:
    """Proof artifact for the upper bound: max norm^2 per layer."""

    grid: Grid
    radii_sq: Tuple[int, ...]


@dataclass(frozen=True)
class ChainCertificate:
    """Proof artifact for the lower bound: a precedence chain with layers."""

    grid: Grid
    chain: Tuple[Point, ...]
    layer_indices: Tuple[int, ...]


Certificate = Union[NormDescentCertificate, ChainCertificate]


@dataclass(frozen=True)
class VerificationResult:
    ok: bool
    reason: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


def _check_assignment_matches(g: Grid, a: LayerAssignment) -> None:
    if a.source.dimension != g.d or len(a.source) != g.point_count:
        raise DomainError(
            f"assignment over {len(a.source)} points of dimension "
            f"{a.source.dimension} is not a peeling of [-{g.n},{g.n}]^{g.d}"
        )
    if a.source != materialize(g):
        raise DomainError("assignment source is not the materialized grid")


def build_norm_certificate(g: Grid, a: LayerAssignment) -> NormDescentCertificate:
    """Norm-descent certificate of a grid peeling, pre-checked by builder."""
    _check_assignment_matches(g, a)
    radii = layer_max_norm_sq(a)
    if radii[0] != g.d * g.n * g.n:
        raise InternalInconsistencyError(
            f"first radius^2 {radii[0]} != corner norm {g.d * g.n * g.n}"
        )
    for i in range(1, len(radii)):
        if radii[i] >= radii[i - 1]:
            raise InternalInconsistencyError(
                f"radii not strictly decreasing at layer {i + 1}"
            )
    if radii[-1] < 0 or len(radii) > upper_bound(g.d, g.n):
        raise InternalInconsistencyError("radii escape the certified range")
    return NormDescentCertificate(grid=g, radii_sq=tuple(radii))


def staircase_chain(g: Grid) -> List[Point]:
    """Canonical chain: raise coordinate 1 from 0 to n, then coordinate 2, ..."""
    cur = [0] * g.d
    chain = [tuple(cur)]
    for axis in range(g.d):
        for v in range(1, g.n + 1):
            cur[axis] = v
            chain.append(tuple(cur))
    return chain


def build_chain_certificate(g: Grid, a: LayerAssignment) -> ChainCertificate:
    """Chain certificate along the canonical staircase, layers from `a`."""
    _check_assignment_matches(g, a)
    chain = staircase_chain(g)
    layers = [a.layer_of(p) for p in chain]
    for i in range(1, len(layers)):
        if layers[i] >= layers[i - 1]:
            raise InternalInconsistencyError(
                f"chain layer indices not strictly decreasing at step {i}: "
                f"{layers[i - 1]} then {layers[i]} — peeling violated precedence"
            )
    return ChainCertificate(
        grid=g, chain=tuple(chain), layer_indices=tuple(layers)
    )


def _verify_norm(cert: NormDescentCertificate) -> VerificationResult:
    g = cert.grid
    radii = cert.radii_sq
    if not radii:
        return VerificationResult(False, "empty radii list")
    for i, r in enumerate(radii):
        try:
            _index(r)
        except TypeError:
            return VerificationResult(False, f"entry {i + 1} is not an integer")
        if r < 0:
            return VerificationResult(False, f"negative entry at layer {i + 1}")
    for i in range(1, len(radii)):
        if radii[i] >= radii[i - 1]:
            return VerificationResult(False, "not strictly decreasing")
    if radii[0] != g.d * g.n * g.n:
        return VerificationResult(
            False,
            f"first entry {radii[0]} != d*n^2 = {g.d * g.n * g.n}",
        )
    # strict descent of nonnegative integers from d*n^2 caps the length
    if len(radii) > upper_bound(g.d, g.n):
        return VerificationResult(
            False, f"{len(radii)} layers exceed d*n^2 + 1 = {upper_bound(g.d, g.n)}"
        )
    return VerificationResult(True)


def _verify_chain(cert: ChainCertificate) -> VerificationResult:
    g = cert.grid
    chain = cert.chain
    layers = cert.layer_indices
    want = lower_bound(g.d, g.n)
    if len(chain) != want:
        return VerificationResult(
            False, f"chain length {len(chain)} != d*n + 1 = {want}"
        )
    if len(layers) != len(chain):
        return VerificationResult(False, "layer count != chain length")
    if chain[0] != (0,) * g.d:
        return VerificationResult(False, "chain does not start at the origin")
    if chain[-1] != (g.n,) * g.d:
        return VerificationResult(False, "chain does not end at the corner")
    for i, p in enumerate(chain):
        if p not in g:
            return VerificationResult(False, f"chain point {i} outside the grid")
    for i in range(1, len(chain)):
        if not prec(chain[i - 1], chain[i]):
            return VerificationResult(False, f"prec violated at index {i}")
    for i, v in enumerate(layers):
        if not isinstance(v, int) or v < 1:
            return VerificationResult(
                False, f"layer index at position {i} is not a positive integer"
            )
    for i in range(1, len(layers)):
        if layers[i] >= layers[i - 1]:
            return VerificationResult(
                False, "layer indices not strictly decreasing"
            )
    return VerificationResult(True)


def verify(cert: Certificate) -> VerificationResult:
    """Re-check a certificate from raw data; never consults the peeler."""
    if isinstance(cert, NormDescentCertificate):
        return _verify_norm(cert)
    if isinstance(cert, ChainCertificate):
        return _verify_chain(cert)
    raise DomainError(f"not a certificate: {cert!r}")


KIND_NORM = "norm-descent"
KIND_CHAIN = "precedence-chain"


def certificate_to_text(cert: Certificate) -> str:
    """Self-describing text serialization; decimal integers only."""
    if isinstance(cert, NormDescentCertificate):
        kind = KIND_NORM
        lines = [
            f"{i + 1} {r}" for i, r in enumerate(cert.radii_sq)
        ]
        count = len(cert.radii_sq)
    elif isinstance(cert, ChainCertificate):
        kind = KIND_CHAIN
        lines = [
            " ".join(str(c) for c in p) + f" {v}"
            for p, v in zip(cert.chain, cert.layer_indices)
        ]
        count = len(cert.chain)
    else:
        raise DomainError(f"not a certificate: {cert!r}")
    head = [
        f"kind: {kind}",
        f"d: {cert.grid.d}",
        f"n: {cert.grid.n}",
        f"entries: {count}",
    ]
    return "\n".join(head + lines) + "\n"


def _parse_header_int(lines: List[str], idx: int, key: str) -> int:
    if idx >= len(lines):
        raise ParseError(f"missing header line '{key}'")
    raw = lines[idx]
    prefix = f"{key}: "
    if not raw.startswith(prefix):
        raise ParseError(f"expected '{key}: ...', got {raw!r}")
    try:
        return int(raw[len(prefix):])
    except ValueError:
        raise ParseError(f"non-integer value in header line {raw!r}")


def certificate_from_text(text: str) -> Certificate:
    """Inverse of certificate_to_text. Raises ParseError on malformed input."""
    lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln]
    if not lines:
        raise ParseError("empty certificate document")
    if not lines[0].startswith("kind: "):
        raise ParseError(f"expected 'kind: ...', got {lines[0]!r}")
    kind = lines[0][len("kind: "):]
    if kind not in (KIND_NORM, KIND_CHAIN):
        raise ParseError(f"unknown certificate kind {kind!r}")
    d = _parse_header_int(lines, 1, "d")
    n = _parse_header_int(lines, 2, "n")
    count = _parse_header_int(lines, 3, "entries")
    body = lines[4:]
    if len(body) != count:
        raise ParseError(f"expected {count} entries, found {len(body)}")
    try:
        g = Grid(d, n)
    except DomainError as e:
        raise ParseError(str(e))
    rows = []
    for ln in body:
        try:
            rows.append([int(tok) for tok in ln.split()])
        except ValueError:
            raise ParseError(f"non-integer token in entry {ln!r}")
    if kind == KIND_NORM:
        if any(len(r) != 2 for r in rows):
            raise ParseError("norm-descent entries must be 'layer radius_sq'")
        if [r[0] for r in rows] != list(range(1, count + 1)):
            raise ParseError("layer column must count 1, 2, ...")
        return NormDescentCertificate(
            grid=g, radii_sq=tuple(r[1] for r in rows)
        )
    if any(len(r) != d + 1 for r in rows):
        raise ParseError(f"chain entries must be {d} coordinates plus a layer")
    return ChainCertificate(
        grid=g,
        chain=tuple(tuple(r[:d]) for r in rows),
        layer_indices=tuple(r[d] for r in rows),
    )
