"""Compiled inner loops for the binary64 backend.

Arrays use 0-based interval indices: ``x`` and ``xp`` hold the partial sums
``x_0..x_d`` and ``x'_0..x'_d``, ``sigma0[i] = sigma(i+1) - 1`` and
``inv0`` is its inverse.
"""

import numba
import numpy as np


@numba.njit(cache=True, nogil=True)
def _locate(x, v):
    # index i with x[i] <= v < x[i+1]
    d = x.shape[0] - 1
    lo = 0
    hi = d
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if x[mid] <= v:
            lo = mid
        else:
            hi = mid
    return lo


@numba.njit(cache=True, nogil=True)
def _step(x, xp, sigma0, v):
    i = _locate(x, v)
    return v - x[i] + xp[sigma0[i]]


@numba.njit(cache=True, nogil=True)
def _step_back(x, xp, inv0, v):
    j = _locate(xp, v)
    return v - xp[j] + x[inv0[j]]


@numba.njit(cache=True, nogil=True)
def orbit(x, xp, sigma0, inv0, start, n, backward):
    out = np.empty(n + 1)
    v = start
    out[0] = v
    for r in range(1, n + 1):
        if backward:
            v = _step_back(x, xp, inv0, v)
        else:
            v = _step(x, xp, sigma0, v)
        out[r] = v
    return out


@numba.njit(cache=True, nogil=True)
def forward_orbits(x, xp, sigma0, n):
    """``T^t x_j`` for ``0 <= t <= n``, ``1 <= j <= d-1``, stored time-major.

    The orbit segments up to time ``t`` form the prefix of length ``(d-1)(t+1)``.
    """
    d = x.shape[0] - 1
    m = d - 1
    pts = np.empty(m * (n + 1))
    for j in range(m):
        v = x[j + 1]
        pts[j] = v
        for t in range(1, n + 1):
            v = _step(x, xp, sigma0, v)
            pts[t * m + j] = v
    return pts


@numba.njit(cache=True, nogil=True)
def visit_counts(x, xp, sigma0, start, n):
    d = x.shape[0] - 1
    counts = np.zeros(d, dtype=np.int64)
    v = start
    for _ in range(n):
        i = _locate(x, v)
        counts[i] += 1
        v = v - x[i] + xp[sigma0[i]]
    return counts
