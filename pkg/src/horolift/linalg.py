"""Small exact linear algebra over Q (row reduction with ``Fraction``)."""

from __future__ import annotations

import math
from fractions import Fraction


def rref(rows):
    """Reduced row echelon form; returns ``(matrix, pivot_columns)``."""
    m = [[Fraction(v) for v in row] for row in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(m)) if m[k][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        lead = m[r][c]
        m[r] = [v / lead for v in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c] != 0:
                f = m[k][c]
                m[k] = [vk - f * vr for vk, vr in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows):
    return len(rref(rows)[1])


def primitive(vec):
    """Scale a rational vector to a primitive integer vector (first nonzero entry positive)."""
    vec = [Fraction(v) for v in vec]
    den = 1
    for v in vec:
        den = den * v.denominator // math.gcd(den, v.denominator)
    ints = [int(v * den) for v in vec]
    g = 0
    for v in ints:
        g = math.gcd(g, abs(v))
    if g == 0:
        return tuple(ints)
    ints = [v // g for v in ints]
    lead = next(v for v in ints if v != 0)
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(ints)


def null_space(rows, ncols=None):
    """Basis of the kernel as primitive integer vectors."""
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [tuple(1 if i == j else 0 for i in range(ncols)) for j in range(ncols)]
    m, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][f]
        basis.append(primitive(v))
    return basis


def matvec(rows, v):
    return [sum(a * b for a, b in zip(row, v)) for row in rows]
