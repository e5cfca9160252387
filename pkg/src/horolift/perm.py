"""Permutation combinatorics and the stratum of the suspended surface."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NotIrreducible, ParseError


@dataclass(frozen=True)
class Permutation:
    """A permutation ``sigma`` of ``{1, ..., d}``, stored as its image list.

    Indices are 1-based throughout: ``p(i)`` is ``sigma(i)``.
    """

    sigma: tuple

    def __post_init__(self):
        sigma = tuple(int(s) for s in self.sigma)
        object.__setattr__(self, "sigma", sigma)
        d = len(sigma)
        if d < 2:
            raise ValueError("a permutation needs d >= 2 symbols")
        if sorted(sigma) != list(range(1, d + 1)):
            raise ValueError(f"{sigma} is not a bijection of 1..{d}")

    @classmethod
    def parse(cls, text):
        try:
            return cls(tuple(int(t) for t in str(text).split(",")))
        except ValueError as exc:
            raise ParseError(f"malformed permutation {text!r}: {exc}") from None

    @classmethod
    def reverse(cls, d):
        """The permutation ``i -> d + 1 - i``."""
        return cls(tuple(range(d, 0, -1)))

    @property
    def d(self):
        return len(self.sigma)

    def __call__(self, i):
        return self.sigma[i - 1]

    def inverse(self):
        inv = [0] * self.d
        for i, s in enumerate(self.sigma, start=1):
            inv[s - 1] = i
        return Permutation(tuple(inv))

    def __str__(self):
        return ",".join(map(str, self.sigma))


@dataclass(frozen=True)
class StratumData:
    """Singularities of the suspension.

    ``vertex_cycles[j]`` lists the polygon vertex slots identified to
    singularity ``j``; slots are ``("P", i)`` on the upper chain and
    ``("P'", i)`` on the lower chain, ``0 <= i <= d``.
    """

    k: int
    orders: tuple
    genus: int
    vertex_cycles: tuple

    def label_of(self, slot):
        for j, cycle in enumerate(self.vertex_cycles):
            if slot in cycle:
                return j
        raise KeyError(slot)


def is_irreducible(p):
    """True iff no proper prefix ``{1..k}`` is invariant under ``sigma``."""
    m = 0
    for k in range(1, p.d):
        m = max(m, p(k))
        if m == k:
            return False
    return True


def _require_irreducible(p):
    if not is_irreducible(p):
        raise NotIrreducible(f"permutation {p} is reducible")


def universal_heights(p):
    """Heights ``b_i = sigma(i) - i``; valid suspension data when irreducible."""
    return tuple(p(i) - i for i in range(1, p.d + 1))


def polygon_slots(d):
    """Counterclockwise slot list of the 2d-gon: lower chain, then upper."""
    return [("P'", k) for k in range(d + 1)] + [("P", i) for i in range(d - 1, 0, -1)]


def _chains(p, a, b):
    d = p.d
    inv = p.inverse()
    up = [(0, 0)]
    lo = [(0, 0)]
    for i in range(1, d + 1):
        up.append((up[-1][0] + a[i - 1], up[-1][1] + b[i - 1]))
        j = inv(i)
        lo.append((lo[-1][0] + a[j - 1], lo[-1][1] + b[j - 1]))
    return up, lo


def _vertex_classes(p):
    """Union-find over slots using the gluing of top edge i to bottom edge sigma(i)."""
    d = p.d
    parent = {}

    def find(s):
        parent.setdefault(s, s)
        while parent[s] != s:
            parent[s] = parent[parent[s]]
            s = parent[s]
        return s

    def union(s, t):
        rs, rt = find(s), find(t)
        if rs != rt:
            parent[rt] = rs

    for i in range(d + 1):
        find(("P", i))
        find(("P'", i))
    union(("P", 0), ("P'", 0))
    union(("P", d), ("P'", d))
    for i in range(1, d + 1):
        union(("P", i - 1), ("P'", p(i) - 1))
        union(("P", i), ("P'", p(i)))

    groups = {}
    for s in polygon_slots(d) + [("P", 0), ("P", d)]:
        groups.setdefault(find(s), set()).add(s)
    # order classes by their first slot in counterclockwise order
    order = {s: n for n, s in enumerate(polygon_slots(d))}
    order[("P", 0)] = order[("P'", 0)]
    order[("P", d)] = order[("P'", d)]
    cycles = sorted(groups.values(), key=lambda g: min(order[s] for s in g))
    return tuple(frozenset(c) for c in cycles)


def singularity_data(p, lengths=None, heights=None):
    """Singularities, cone angles and genus of the Masur suspension of ``p``.

    The vertex classes come from the edge identifications; cone angles are
    measured on a concrete polygon (unit lengths and ``sigma(i) - i``
    heights unless others are given) and must be whole multiples of 2 pi.
    """
    _require_irreducible(p)
    d = p.d
    a = [1.0] * d if lengths is None else [float(x) for x in lengths]
    b = [float(x) for x in (universal_heights(p) if heights is None else heights)]
    up, lo = _chains(p, a, b)
    for i in range(1, d):
        if not (up[i][1] > 0 > lo[i][1]):
            raise ValueError("heights do not give a valid suspension polygon")

    slots = polygon_slots(d)
    pts = [lo[i] if tag == "P'" else up[i] for tag, i in slots]
    n = len(pts)
    angle = {}
    for k, s in enumerate(slots):
        px, py = pts[k]
        nx, ny = pts[(k + 1) % n]
        qx, qy = pts[k - 1]
        # interior angle of a counterclockwise polygon
        ang = math.atan2(qy - py, qx - px) - math.atan2(ny - py, nx - px)
        angle[s] = ang % (2 * math.pi)

    cycles = _vertex_classes(p)
    orders = []
    for cycle in cycles:
        total = sum(angle[s] for s in cycle if s in angle)
        turns = total / (2 * math.pi)
        m = round(turns)
        if abs(turns - m) > 1e-6 or m < 1:
            raise AssertionError(f"cone angle {total} is not a multiple of 2pi")
        orders.append(m - 1)
    k = len(cycles)
    twice_g = sum(orders) + 2
    assert twice_g % 2 == 0, "sum of orders must be even"
    genus = twice_g // 2
    assert sum(orders) == 2 * genus - 2
    assert d == 2 * genus + k - 1
    return StratumData(k=k, orders=tuple(orders), genus=genus, vertex_cycles=cycles)


def is_admissible(p):
    """Veech admissibility: no singularity of the suspension is a removable point."""
    return all(r >= 1 for r in singularity_data(p).orders)


def irreducible_permutations(d):
    """All irreducible permutations on ``d`` symbols (lexicographic order)."""
    from itertools import permutations

    for s in permutations(range(1, d + 1)):
        p = Permutation(s)
        if is_irreducible(p):
            yield p
