"""Exact convex-layer computation for integer point sets.

Computes the onion peeling (convex layers) of finite sets of integer
points with exact arithmetic throughout, plus machine-checkable
certificates bounding the layer count of the centered grid [-n, n]^d:
a norm-descent certificate for the upper bound d*n^2 + 1 and a
precedence-chain certificate for the lower bound d*n + 1.
"""

from .certify import (
    ChainCertificate,
    NormDescentCertificate,
    VerificationResult,
    build_chain_certificate,
    build_norm_certificate,
    certificate_from_text,
    certificate_to_text,
    convex_witness_for_prec,
    lower_bound,
    prec,
    staircase_chain,
    upper_bound,
    verify,
)
from .core import (
    DomainError,
    Grid,
    InternalInconsistencyError,
    OnionError,
    ParseError,
    Point,
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
from .hull import (
    ConvexCombinationWitness,
    ExtremenessQuery,
    ExtremenessVerdict,
    affine_rank,
    brute_force_is_extreme,
    extreme_points,
    is_extreme,
)
from .peel import LayerAssignment, layer_max_norm_sq, peel, peel_2d
from .render import render_step
from .symmetry import (
    Orbit,
    SignedPermutation,
    canonicalize,
    grid_representatives,
    hyperoctahedral_group,
    orbit_of,
    orbit_points,
    peel_orbits,
)

__version__ = "0.1.0"

__all__ = [
    "ChainCertificate",
    "ConvexCombinationWitness",
    "DomainError",
    "ExtremenessQuery",
    "ExtremenessVerdict",
    "Grid",
    "InternalInconsistencyError",
    "LayerAssignment",
    "NormDescentCertificate",
    "OnionError",
    "Orbit",
    "ParseError",
    "Point",
    "PointSet",
    "SignedPermutation",
    "SizeLimitError",
    "VerificationResult",
    "affine_rank",
    "as_point",
    "brute_force_is_extreme",
    "build_chain_certificate",
    "build_norm_certificate",
    "canonicalize",
    "certificate_from_text",
    "certificate_to_text",
    "convex_witness_for_prec",
    "extreme_points",
    "grid_representatives",
    "hyperoctahedral_group",
    "is_extreme",
    "layer_max_norm_sq",
    "lower_bound",
    "materialize",
    "materialize_box",
    "max_points_cap",
    "norm_sq",
    "orbit_of",
    "orbit_points",
    "peel",
    "peel_2d",
    "peel_orbits",
    "prec",
    "render_step",
    "staircase_chain",
    "translate_convention",
    "translate_convention_inv",
    "upper_bound",
    "verify",
    "__version__",
]
