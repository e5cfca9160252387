"""Interval exchange transformations.

An :class:`Iet` is built from a :class:`~horolift.perm.Permutation` and a
vector of positive lengths.  The backend follows the scalars: ``Fraction``
and :class:`~horolift.numbers.Golden` lengths give exact arithmetic, floats
give binary64 with tolerance ``1e-12 * total length``.

Intervals are closed on the left and open on the right.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .errors import InvalidLengths, OutOfDomain
from .numbers import Golden, coerce_vector, vector_kind
from .perm import Permutation

FLOAT_RTOL = 1e-12


@dataclass(frozen=True, order=True)
class Connection:
    """``T^m(x_i) = x_j``; ``approximate`` marks tolerance matches (float backend)."""

    m: int
    i: int
    j: int
    approximate: bool = False

    def as_tuple(self):
        return (self.i, self.j, self.m)


class Iet:
    """The interval exchange ``T_sigma(a)`` on ``[0, sum a)``."""

    def __init__(self, perm, lengths):
        if not isinstance(perm, Permutation):
            perm = Permutation(tuple(perm))
        lengths = coerce_vector(lengths)
        if len(lengths) != perm.d:
            raise InvalidLengths(f"expected {perm.d} lengths, got {len(lengths)}")
        if any(not (v > 0) for v in lengths):
            raise InvalidLengths(f"lengths must be positive: {lengths}")
        self.perm = perm
        self.lengths = lengths
        self.kind = vector_kind(lengths)
        self.exact = self.kind != "float"
        d = perm.d
        inv = perm.inverse()
        x = [lengths[0] * 0]
        xp = [lengths[0] * 0]
        for i in range(1, d + 1):
            x.append(x[-1] + lengths[i - 1])
            xp.append(xp[-1] + lengths[inv(i) - 1])
        self.x = tuple(x)
        self.xp = tuple(xp)
        self.total = x[-1]
        self.tolerance = 0 if self.exact else FLOAT_RTOL * self.total
        self._inv = inv
        self._arrays = None

    @property
    def d(self):
        return self.perm.d

    def __repr__(self):
        return f"Iet(sigma={self.perm.sigma}, lengths={self.lengths})"

    def _check(self, v):
        if not (0 <= v < self.total):
            raise OutOfDomain(f"{v} is outside [0, {self.total})")

    def interval_of(self, v):
        """1-based index ``i`` with ``v`` in ``[x_{i-1}, x_i)``."""
        self._check(v)
        return bisect_right(self.x, v)

    def _fwd(self, v):
        i = bisect_right(self.x, v)
        if i > self.d:
            i = self.d
        return v - self.x[i - 1] + self.xp[self.perm.sigma[i - 1] - 1]

    def _bwd(self, v):
        j = bisect_right(self.xp, v)
        if j > self.d:
            j = self.d
        return v - self.xp[j - 1] + self.x[self._inv.sigma[j - 1] - 1]

    def evaluate(self, v):
        self._check(v)
        return self._fwd(v)

    __call__ = evaluate

    def evaluate_inverse(self, v):
        self._check(v)
        return self._bwd(v)

    def orbit(self, v, n, direction="forward"):
        """``(v, T v, ..., T^n v)``, or inverse iterates for ``direction='backward'``."""
        self._check(v)
        if n < 0:
            raise ValueError("n must be nonnegative")
        backward = _is_backward(direction)
        if not self.exact:
            x, xp, s0, i0 = self.arrays()
            return tuple(_kernels.orbit(x, xp, s0, i0, float(v), int(n), backward).tolist())
        step = self._bwd if backward else self._fwd
        v = self.lift(v)
        out = [v]
        for _ in range(n):
            v = step(v)
            out.append(v)
        return tuple(out)

    def lift(self, v):
        """``v`` as a scalar of this backend."""
        if self.kind == "golden":
            return v if isinstance(v, Golden) else Golden(v, 0)
        if self.kind == "rational":
            return Fraction(v)
        return float(v)

    def arrays(self):
        """Float arrays used by the compiled kernels."""
        if self._arrays is None:
            x = np.array([float(v) for v in self.x])
            xp = np.array([float(v) for v in self.xp])
            s0 = np.array([s - 1 for s in self.perm.sigma], dtype=np.int64)
            i0 = np.array([s - 1 for s in self._inv.sigma], dtype=np.int64)
            self._arrays = (x, xp, s0, i0)
        return self._arrays

    def as_float(self):
        return self if not self.exact else Iet(self.perm, [float(v) for v in self.lengths])

    def scaled(self, c):
        return Iet(self.perm, [c * v for v in self.lengths])

    # recurrence statistic -----------------------------------------------
    def _forward_points(self, n):
        # time-major: the segment up to time k is the prefix of length (d-1)(k+1)
        cur = list(self.x[1 : self.d])
        pts = list(cur)
        for _ in range(n):
            cur = [self._fwd(v) for v in cur]
            pts.extend(cur)
        return pts

    def _min_gap(self, pts, keys):
        if len(pts) < 2:
            return math.inf
        # float pre-sort, then an exact pass over nearly sorted data; only
        # gaps near the float minimum are recomputed exactly
        order = sorted(range(len(pts)), key=keys.__getitem__)
        order.sort(key=pts.__getitem__)
        approx = [keys[w] - keys[u] for u, w in zip(order, order[1:])]
        cut = min(approx) + 1e-9 * float(self.total)
        return min(pts[order[r + 1]] - pts[order[r]] for r, g in enumerate(approx) if g <= cut)

    def epsilon_n(self, n):
        """Minimal distance ``|T^k x_i - T^l x_j|`` over ``0 <= k, l <= n``,
        ``1 <= i, j <= d-1`` and ``(i, k) != (j, l)``.

        Sorts the forward orbit segments of ``x_1..x_{d-1}`` and scans
        neighbours.  Returns ``math.inf`` when there is a single point
        (``d = 2`` and ``n = 0``).
        """
        if n < 0:
            raise ValueError("n must be nonnegative")
        return self.epsilon_trace([n])[0]

    def epsilon_trace(self, ns):
        """``epsilon_n`` for every ``n`` in ``ns``, sharing one orbit computation."""
        ns = [int(n) for n in ns]
        if not ns:
            return []
        if min(ns) < 0:
            raise ValueError("n must be nonnegative")
        order = sorted(set(ns))
        if self.exact:
            pts = self._forward_points(order[-1])
            keys = [float(v) for v in pts]
            m = self.d - 1
            vals = {n: self._min_gap(pts[: m * (n + 1)], keys) for n in order}
        else:
            x, xp, s0, _ = self.arrays()
            pts = _kernels.forward_orbits(x, xp, s0, order[-1])
            m = self.d - 1
            vals = {}
            for n in order:
                seg = np.sort(pts[: m * (n + 1)])
                vals[n] = float(np.diff(seg).min()) if seg.size > 1 else math.inf
        return [vals[n] for n in ns]

    def epsilon_n_alt(self, n):
        """Two-sided variant ``min |x_i - T^r x_j|`` over ``|r| <= n``, ``(j, r) != (i, 0)``.

        Never exceeds :meth:`epsilon_n`; the two agree except when a nearest
        pair straddles a discontinuity of ``T^r`` at its right end.
        """
        if n < 0:
            raise ValueError("n must be nonnegative")
        pts = []
        for j in range(1, self.d):
            start = self.x[j]
            pts.append((start, True))
            for step in (self._fwd, self._bwd):
                v = start
                for _ in range(n):
                    v = step(v)
                    pts.append((v, False))
        pts.sort(key=lambda p: float(p[0]))
        pts.sort(key=lambda p: p[0])
        best = math.inf
        for (u, cu), (w, cw) in zip(pts, pts[1:]):
            if cu or cw:
                gap = w - u
                if gap < best:
                    best = gap
        return best

    # connections ----------------------------------------------------------
    def detect_connections(self, m_max, include_origin=False):
        """All ``(i, j, m)`` with ``m <= m_max`` and ``T^m x_i = x_j``.

        Starts range over ``0 <= i <= d-1`` and targets over ``1 <= j <= d-1``.
        Landing on ``x_0`` is excluded by default: ``T^m x_i = x_0`` holds
        exactly when ``T^{m-1} x_i = x_k`` with ``sigma(k+1) = 1``, so such a
        triple is either that shorter connection extended by one step or the
        zero-length ``(k, 0, 1)`` present in every exchange.  Pass
        ``include_origin=True`` for the full set ``0 <= j <= d-1``.
        """
        if m_max < 1:
            raise ValueError("m_max must be >= 1")
        found = []
        first = 0 if include_origin else 1
        targets = self.x[: self.d]
        if self.exact:
            index = {v: j for j, v in enumerate(targets) if j >= first}
        for i in range(self.d):
            v = self.x[i]
            for m in range(1, m_max + 1):
                v = self._fwd(v)
                if self.exact:
                    j = index.get(v)
                    if j is not None:
                        found.append(Connection(m, i, j))
                else:
                    k = bisect_right(targets, v)
                    for j in (k - 1, k):
                        if first <= j < self.d and abs(targets[j] - v) <= self.tolerance:
                            found.append(Connection(m, i, j, approximate=True))
        found.sort()
        return found


def _is_backward(direction):
    if direction in ("forward", "fwd", 1):
        return False
    if direction in ("backward", "bwd", -1):
        return True
    raise ValueError(f"unknown direction {direction!r}")


def evaluate(T, v):
    return T.evaluate(v)


def evaluate_inverse(T, v):
    return T.evaluate_inverse(v)


def orbit(T, v, n, direction="forward"):
    return T.orbit(v, n, direction)


def epsilon_n(T, n):
    return T.epsilon_n(n)


def epsilon_n_alt(T, n):
    return T.epsilon_n_alt(n)


def detect_connections(T, m_max, include_origin=False):
    return T.detect_connections(m_max, include_origin)
