"""Repeated monotone-chain peeling kernels for 2D point sets.

Both kernels consume points in lexicographic order and peel all layers
in one pass over a shrinking index array: per round, one lower and one
upper Andrew chain with strict-turn popping (cross <= 0), so exactly the
hull *vertices* are taken, never interior points of edges. Collinear
remainders degrade gracefully to their two endpoints per round.

The compiled kernel works on int64 coordinates; cross products of points
within +-10^9 stay below 2^63. The pure fallback uses Python integers
and is exact for any magnitude. Selection: the compiled path is used
when numba imported, coordinates are in int64-safe range, and the
ONIONPEEL_NO_NUMBA environment variable is unset.
"""

from __future__ import annotations

import os
from typing import Optional, Sequence

import numpy as np

from .core import Point, PointSet

NO_NUMBA_ENV = "ONIONPEEL_NO_NUMBA"

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = None
    HAVE_NUMBA = False


def _peel2d_python(pts: Sequence[Point]) -> tuple:
    """Peel lex-sorted 2D points; returns (layer list, num_layers)."""
    n = len(pts)
    layer = [0] * n
    alive = list(range(n))
    cur = 0
    while alive:
        cur += 1
        if len(alive) <= 2:
            for i in alive:
                layer[i] = cur
            break
        stamped = set()
        for seq in (alive, alive[::-1]):
            st: list = []
            for i in seq:
                xi, yi = pts[i]
                while len(st) >= 2:
                    ax, ay = pts[st[-2]]
                    bx, by = pts[st[-1]]
                    if (bx - ax) * (yi - ay) - (by - ay) * (xi - ax) <= 0:
                        st.pop()
                    else:
                        break
                st.append(i)
            stamped.update(st)
        survivors = []
        for i in alive:
            if i in stamped:
                layer[i] = cur
            else:
                survivors.append(i)
        alive = survivors
    return layer, cur


def _compile_kernel():
    @njit(cache=True)
    def peel2d(xs, ys):  # pragma: no cover - exercised via dispatcher
        n = xs.shape[0]
        layer = np.zeros(n, dtype=np.int64)
        alive = np.empty(n, dtype=np.int64)
        for i in range(n):
            alive[i] = i
        stack = np.empty(n, dtype=np.int64)
        stamp = np.zeros(n, dtype=np.int64)
        m = n
        cur = 0
        while m > 0:
            cur += 1
            if m <= 2:
                for t in range(m):
                    layer[alive[t]] = cur
                break
            top = 0
            for t in range(m):
                i = alive[t]
                while top >= 2:
                    a = stack[top - 2]
                    b = stack[top - 1]
                    cr = (xs[b] - xs[a]) * (ys[i] - ys[a]) - (
                        ys[b] - ys[a]
                    ) * (xs[i] - xs[a])
                    if cr <= 0:
                        top -= 1
                    else:
                        break
                stack[top] = i
                top += 1
            for t in range(top):
                stamp[stack[t]] = cur
            top = 0
            for t in range(m - 1, -1, -1):
                i = alive[t]
                while top >= 2:
                    a = stack[top - 2]
                    b = stack[top - 1]
                    cr = (xs[b] - xs[a]) * (ys[i] - ys[a]) - (
                        ys[b] - ys[a]
                    ) * (xs[i] - xs[a])
                    if cr <= 0:
                        top -= 1
                    else:
                        break
                stack[top] = i
                top += 1
            for t in range(top):
                stamp[stack[t]] = cur
            w = 0
            for t in range(m):
                i = alive[t]
                if stamp[i] == cur:
                    layer[i] = cur
                else:
                    alive[w] = i
                    w += 1
            m = w
        return layer, cur

    return peel2d


_kernel = None


def _numba_kernel():
    global _kernel
    if _kernel is None:
        _kernel = _compile_kernel()
    return _kernel


def numba_enabled() -> bool:
    return HAVE_NUMBA and not os.environ.get(NO_NUMBA_ENV)


def peel2d_layers(s: PointSet) -> tuple:
    """Layer index per point of s (lex order) and the layer count."""
    if s.dimension != 2:
        raise ValueError(f"2D kernel got dimension {s.dimension}")
    if len(s) == 0:
        return [], 0
    arr: Optional[np.ndarray] = s.int64_array() if numba_enabled() else None
    if arr is not None:
        xs = np.ascontiguousarray(arr[:, 0])
        ys = np.ascontiguousarray(arr[:, 1])
        layer, count = _numba_kernel()(xs, ys)
        return [int(v) for v in layer], int(count)
    return _peel2d_python(s.points)
