"""Exact convex-combination feasibility via a phase-1 simplex.

Decides whether a target integer point lies in the convex hull of a list
of integer points: feasibility of {lambda >= 0, sum lambda = 1,
sum lambda_j * s_j = target}. The tableau is kept fraction-free: with
basis B and D = det(B) > 0, the stored integer matrix is D * B^-1 [A|I|b],
so every entry is a minor of the input data and the pivot update

    T'[i, :] = (T[i, :] * T[r, c] - T[i, c] * T[r, :]) / D_prev

divides exactly. Bland's rule (lowest eligible index) guarantees
termination. Arithmetic runs vectorized on an int64 tableau while a
conservative magnitude guard holds, and escalates to a Python-int
(object dtype) tableau otherwise, so results are exact for arbitrary
coordinate sizes.

Both possible answers carry an exact certificate: rational coefficients
when feasible, an integer Farkas vector (y . col_j <= 0 for every column,
y . b > 0) when not. Callers re-verify these with plain integer
arithmetic, so no tableau bug can silently corrupt a verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .core import InternalInconsistencyError, Point

# Pre-pivot bound on |tableau| entries for the int64 path: the update's
# intermediates are bounded by 2*maxT**2, which must stay below 2**63.
_INT64_PIVOT_LIMIT = 2**31 - 1

_MAX_PIVOTS = 50_000


class _NeedsBigInts(Exception):
    """Internal: int64 tableau would overflow; redo with object dtype."""


@dataclass
class MembershipResult:
    """Outcome of a convex-membership query, with its certificate.

    feasible: target is a convex combination of the input points.
    coefficients: (point index, coefficient) pairs, coefficients > 0 and
        summing to 1; at most m = d+1 of them (simplex basis size).
    farkas: integer vector y of length d+1 with y . (1, s_j - target) <= 0
        for every input point and y[0] > 0, proving infeasibility.
    """

    feasible: bool
    coefficients: Optional[list] = None
    farkas: Optional[list] = None


def convex_membership(subject: Point, points: Sequence[Point]) -> MembershipResult:
    """Exact test: is `subject` a convex combination of `points`?

    The returned certificate is re-verified here with exact arithmetic
    before being handed back.
    """
    n = len(points)
    if n == 0:
        return MembershipResult(feasible=False, farkas=[1] + [0] * len(subject))
    d = len(subject)

    # Column j is (1, s_j - subject); rhs is (1, 0, ..., 0).
    cols = [[1] + [s[i] - subject[i] for i in range(d)] for s in points]

    max_abs = max(1, max(abs(v) for col in cols for v in col))
    use_int64 = (1 + d * max_abs) <= _INT64_PIVOT_LIMIT
    try:
        result = _solve(cols, d, object_dtype=not use_int64)
    except _NeedsBigInts:
        result = _solve(cols, d, object_dtype=True)

    _verify(result, subject, points)
    return result


def _solve(cols: list, d: int, object_dtype: bool) -> MembershipResult:
    n = len(cols)
    m = d + 1
    dtype = object if object_dtype else np.int64

    # Rows 0..m-1: constraints; row m: phase-1 objective (reduced costs).
    # Columns 0..n-1: structural; n..n+m-1: artificial; last: rhs.
    T = np.zeros((m + 1, n + m + 1), dtype=dtype)
    if object_dtype:
        T[:, :] = 0
    for j, col in enumerate(cols):
        for i in range(m):
            T[i, j] = col[i]
        T[m, j] = -sum(col)  # reduced cost with the all-artificial basis
    for i in range(m):
        T[i, n + i] = 1
    T[0, n + m] = 1  # rhs b = (1, 0, ..., 0)
    T[m, n + m] = -1  # -(objective value) * D

    det = 1  # always > 0
    basis = list(range(n, n + m))
    rhs = n + m

    for _ in range(_MAX_PIVOTS):
        # Bland: entering column = lowest index with negative reduced cost.
        obj = T[m]
        enter = -1
        for j in range(n + m):
            if obj[j] < 0:
                enter = j
                break
        if enter < 0:
            break  # optimal

        if not object_dtype:
            if int(np.abs(T).max()) > _INT64_PIVOT_LIMIT:
                raise _NeedsBigInts

        # Ratio test over rows with positive pivot-column entry; ties broken
        # by the smallest basic-variable index (Bland).
        leave = -1
        best_num = best_den = 0  # best ratio = best_num / best_den
        for i in range(m):
            t_ic = int(T[i, enter])
            if t_ic <= 0:
                continue
            t_ib = int(T[i, rhs])
            if leave < 0:
                leave, best_num, best_den = i, t_ib, t_ic
                continue
            diff = t_ib * best_den - best_num * t_ic  # ratio_i - ratio_best
            if diff < 0 or (diff == 0 and basis[i] < basis[leave]):
                leave, best_num, best_den = i, t_ib, t_ic
        if leave < 0:
            raise InternalInconsistencyError(
                "phase-1 simplex column unbounded; objective is bounded below"
            )

        piv = int(T[leave, enter])
        pivot_row = T[leave].copy()
        pivot_col = T[:, enter].copy()
        T *= piv
        T -= np.outer(pivot_col, pivot_row)
        T //= det
        T[leave] = pivot_row
        det = piv
        basis[leave] = enter
    else:
        raise InternalInconsistencyError("simplex pivot budget exhausted")

    if int(T[m, rhs]) == 0:
        coeffs = []
        for i in range(m):
            if basis[i] < n:
                val = Fraction(int(T[i, rhs]), det)
                if val:
                    coeffs.append((basis[i], val))
        coeffs.sort()
        return MembershipResult(feasible=True, coefficients=coeffs)

    farkas = [det - int(T[m, n + i]) for i in range(m)]
    return MembershipResult(feasible=False, farkas=farkas)


def _verify(result: MembershipResult, subject: Point, points: Sequence[Point]) -> None:
    d = len(subject)
    if result.feasible:
        coeffs = result.coefficients
        if len(coeffs) > d + 1:
            raise InternalInconsistencyError("witness support exceeds d+1 points")
        if any(c <= 0 for _, c in coeffs):
            raise InternalInconsistencyError("witness has a nonpositive coefficient")
        if sum(c for _, c in coeffs) != 1:
            raise InternalInconsistencyError("witness coefficients do not sum to 1")
        for i in range(d):
            if sum(c * points[j][i] for j, c in coeffs) != subject[i]:
                raise InternalInconsistencyError("witness combination misses subject")
    else:
        y = result.farkas
        if y[0] <= 0:
            raise InternalInconsistencyError("Farkas vector has y.b <= 0")
        for s in points:
            val = y[0] + sum(y[i + 1] * (s[i] - subject[i]) for i in range(d))
            if val > 0:
                raise InternalInconsistencyError("Farkas vector fails on a column")
