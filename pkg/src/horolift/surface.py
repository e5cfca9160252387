"""Masur's one-polygon suspension of an interval exchange and its geometry.

A :class:`TranslationSurface` is determined by a permutation and the edge
holonomies ``(a_i, b_i)``.  The polygon has upper vertices
``P_i = (x_i, y_i)`` and lower vertices ``P'_i = (x'_i, y'_i)``; the upper
edge ``i`` is glued by translation to the lower edge ``sigma(i)``.  The
transversal is the diameter from ``P_0`` to ``P_d``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from . import linalg
from ._unfold import Unfolder
from .errors import (
    CollisionObstruction,
    DegenerateTransversal,
    InvalidLengths,
    LengthCollapse,
    NotInNullSpace,
    NotUnimodular,
    SuspensionInvalid,
)
from .iet import Iet
from .numbers import coerce_vector, format_scalar, is_exact
from .pairing import q_eval, q_matrix, q_row
from .perm import Permutation, _require_irreducible, polygon_slots, singularity_data

DET_TOL = 1e-12


@dataclass(frozen=True)
class SaddleConnection:
    holonomy: tuple
    endpoints: tuple
    classes: tuple = ()

    @property
    def length(self):
        return max(abs(self.holonomy[0]), abs(self.holonomy[1]))

    def is_horizontal(self, tol=0):
        y = self.holonomy[1]
        return y == 0 if tol == 0 else abs(y) <= tol

    @property
    def joins_distinct(self):
        return self.endpoints[0] != self.endpoints[1]

    def to_dict(self):
        return {
            "holonomy": [format_scalar(v) for v in self.holonomy],
            "endpoints": list(self.endpoints),
            "classes": list(self.classes),
        }


@dataclass(frozen=True)
class TranslationSurface:
    perm: Permutation
    hol: tuple

    @property
    def d(self):
        return self.perm.d

    @property
    def a(self):
        return tuple(h[0] for h in self.hol)

    @property
    def b(self):
        return tuple(h[1] for h in self.hol)

    @property
    def exact(self):
        return is_exact(self.hol[0][0])

    @cached_property
    def stratum(self):
        return singularity_data(self.perm)

    @cached_property
    def upper(self):
        pts = [(self.hol[0][0] * 0, self.hol[0][0] * 0)]
        for x, y in self.hol:
            pts.append((pts[-1][0] + x, pts[-1][1] + y))
        return tuple(pts)

    @cached_property
    def lower(self):
        inv = self.perm.inverse()
        pts = [self.upper[0]]
        for k in range(1, self.d + 1):
            x, y = self.hol[inv(k) - 1]
            pts.append((pts[-1][0] + x, pts[-1][1] + y))
        return tuple(pts)

    @cached_property
    def slots(self):
        return polygon_slots(self.d)

    @cached_property
    def vertices(self):
        """Polygon vertices in counterclockwise order: ``P'_0..P'_d, P_{d-1}..P_1``."""
        return tuple(self.lower[i] if tag == "P'" else self.upper[i] for tag, i in self.slots)

    @cached_property
    def labels(self):
        return tuple(self.stratum.label_of(s) for s in self.slots)

    @cached_property
    def _gluing(self):
        """Partner edge and translation (vector and class vector) per polygon edge."""
        d = self.d
        p = self.perm
        inv = p.inverse()
        n = 2 * d
        coeff = [_slot_coeff(p, s) for s in self.slots]
        partner = [0] * n
        trans = [None] * n
        tcoeff = [None] * n
        for k in range(1, d + 1):
            # lower edge k is polygon edge k-1 (P'_{k-1} -> P'_k)
            i = inv(k)
            top = 2 * d - i  # polygon edge P_i -> P_{i-1}
            partner[k - 1] = top
            partner[top] = k - 1
            Pi, Pk = self.upper[i], self.lower[k]
            trans[k - 1] = (Pi[0] - Pk[0], Pi[1] - Pk[1])
            trans[top] = (Pk[0] - Pi[0], Pk[1] - Pi[1])
            ci, ck = _slot_coeff(p, ("P", i)), _slot_coeff(p, ("P'", k))
            tcoeff[k - 1] = tuple(u - v for u, v in zip(ci, ck))
            tcoeff[top] = tuple(v - u for u, v in zip(ci, ck))
        return partner, trans, coeff, tcoeff

    @cached_property
    def unfolder(self):
        partner, trans, coeff, tcoeff = self._gluing
        return Unfolder(self.vertices, partner, trans, coeff, tcoeff, self.labels)

    def to_dict(self):
        d = self.d
        pairing = [[2 * d - i, self.perm(i) - 1] for i in range(1, d + 1)]
        return {
            "sigma": list(self.perm.sigma),
            "a": [format_scalar(v) for v in self.a],
            "b": [format_scalar(v) for v in self.b],
            "vertices": [[format_scalar(c) for c in v] for v in self.vertices],
            "slots": [f"{t}{i}" for t, i in self.slots],
            "labels": list(self.labels),
            "edge_pairing": pairing,
            "area": format_scalar(area(self)),
        }

    def to_svg(self, size=400):
        xs = [float(v[0]) for v in self.vertices]
        ys = [float(v[1]) for v in self.vertices]
        w = max(xs) - min(xs) or 1.0
        h = max(ys) - min(ys) or 1.0
        scale = size / max(w, h)
        pts = " ".join(
            f"{(x - min(xs)) * scale + 10:.3f},{(max(ys) - y) * scale + 10:.3f}" for x, y in zip(xs, ys)
        )
        x0 = (0 - min(xs)) * scale + 10
        y0 = max(ys) * scale + 10
        x1 = (float(self.upper[-1][0]) - min(xs)) * scale + 10
        y1 = (max(ys) - float(self.upper[-1][1])) * scale + 10
        return (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{w * scale + 20:.0f}" '
            f'height="{h * scale + 20:.0f}">\n'
            f'  <polygon points="{pts}" fill="#dde8f4" stroke="#1f3b5a" stroke-width="1.5"/>\n'
            f'  <line x1="{x0:.3f}" y1="{y0:.3f}" x2="{x1:.3f}" y2="{y1:.3f}" '
            f'stroke="#b03030" stroke-dasharray="4 3"/>\n'
            "</svg>\n"
        )


def _slot_coeff(p, slot):
    tag, i = slot
    d = p.d
    if tag == "P":
        return tuple(1 if j < i else 0 for j in range(d))
    return tuple(1 if p(j + 1) <= i else 0 for j in range(d))


def suspend(p, a, b):
    """Masur's polygon for lengths ``a`` and heights ``b``."""
    _require_irreducible(p)
    if len(a) != p.d or len(b) != p.d:
        raise InvalidLengths(f"expected {p.d} lengths and heights")
    joint = coerce_vector(tuple(a) + tuple(b))
    a, b = joint[: p.d], joint[p.d :]
    if any(not (v > 0) for v in a):
        raise InvalidLengths(f"lengths must be positive: {a}")
    q = TranslationSurface(p, tuple(zip(a, b)))
    for i in range(1, p.d):
        if not q.upper[i][1] > 0:
            raise SuspensionInvalid(f"y_{i} = {q.upper[i][1]} is not positive")
        if not q.lower[i][1] < 0:
            raise SuspensionInvalid(f"y'_{i} = {q.lower[i][1]} is not negative")
    return q


# --- SL(2, R) action ---------------------------------------------------------


def geodesic(t):
    return ((math.exp(t / 2), 0.0), (0.0, math.exp(-t / 2)))


def horocycle(s):
    return ((1, s), (0, 1))


def rotation(theta):
    c, s = math.cos(theta), math.sin(theta)
    return ((c, -s), (s, c))


def apply_matrix(q, g):
    """Act on every holonomy vector by ``g`` (determinant one)."""
    (g11, g12), (g21, g22) = g
    det = g11 * g22 - g12 * g21
    hol = q.hol
    if all(is_exact(v) for v in (g11, g12, g21, g22)):
        if det != 1:
            raise NotUnimodular(f"det = {det}")
    else:
        if abs(float(det) - 1.0) > DET_TOL:
            raise NotUnimodular(f"det = {det}")
        hol = tuple((float(x), float(y)) for x, y in hol)
    flat = []
    for x, y in hol:
        flat += [g11 * x + g12 * y, g21 * x + g22 * y]
    flat = coerce_vector(flat)
    return TranslationSurface(q.perm, tuple(zip(flat[0::2], flat[1::2])))


def area(q):
    """Shoelace area of the polygon."""
    v = q.vertices
    s = 0
    for (x0, y0), (x1, y1) in zip(v, v[1:] + v[:1]):
        s = s + x0 * y1 - x1 * y0
    return s / 2


def form_area(q):
    """``Q(a, b)``: the area computed from the alternating form."""
    return q_eval(q_matrix(q.perm), q.a, q.b)


def normalize_area(q):
    c = 1.0 / math.sqrt(float(area(q)))
    return TranslationSurface(q.perm, tuple((c * float(x), c * float(y)) for x, y in q.hol))


# --- vertical flow -------------------------------------------------------------


def _edge_height(p0, p1, x):
    return p0[1] + (x - p0[0]) * (p1[1] - p0[1]) / (p1[0] - p0[0])


def vertical_return_map(q, max_steps=100000):
    """First return of the upward vertical flow to the diameter ``P_0 P_d``.

    Pieces of the diameter are pushed upward through the polygon; each piece
    is split at vertex abscissae so it hits a single edge, re-enters through
    the glued edge and continues until it lands on the diameter again.
    """
    verts = q.vertices
    n = len(verts)
    d = q.d
    partner, trans, _, _ = q._gluing
    P0, Pd = verts[0], verts[d]
    width = Pd[0] - P0[0]
    if not width > 0:
        raise DegenerateTransversal("the diameter must run left to right")
    exact = q.exact
    tol = 0 if exact else 1e-12 * float(width)
    chord = (P0, Pd)
    segments = [(verts[k], verts[(k + 1) % n]) for k in range(n)]
    xs = sorted({v[0] for v in verts})

    def cast(x, y, entry):
        best, hit = None, None
        for k, (p0, p1) in enumerate(segments):
            if k == entry:
                continue
            lo, hi = (p0[0], p1[0]) if p0[0] < p1[0] else (p1[0], p0[0])
            if lo < x < hi:
                yy = _edge_height(p0, p1, x)
                if yy > y and (best is None or yy < best):
                    best, hit = yy, k
        if entry is not None:
            yy = _edge_height(P0, Pd, x)
            if yy > y and (best is None or yy < best):
                best, hit = yy, None
        if best is None:
            raise DegenerateTransversal(f"vertical ray at x={x} leaves the polygon")
        return hit

    def seg_of(entry):
        return chord if entry is None else segments[entry]

    def hits_vertex(x, y, entry):
        # does the upward ray from (x, y) first meet the boundary at a vertex?
        above = [
            _edge_height(p0, p1, x)
            for k, (p0, p1) in enumerate(segments)
            if k != entry and p0[0] != p1[0] and min(p0[0], p1[0]) <= x <= max(p0[0], p1[0])
        ]
        if entry is not None:
            above.append(_edge_height(P0, Pd, x))
        above = [h for h in above if h > y]
        if not above:
            return False
        top = min(above)
        return any(abs(vx - x) <= tol and abs(vy - top) <= tol for vx, vy in verts)

    pending = [(P0[0], Pd[0], 0 * width, None)]
    done = []
    singular = []
    steps = 0
    while pending:
        steps += 1
        if steps > max_steps:
            raise DegenerateTransversal("vertical flow did not return")
        u, v, off, entry = pending.pop()
        lo, hi = u + off, v + off
        cuts = [c for c in xs if lo + tol < c < hi - tol]
        bounds = [lo] + cuts + [hi]
        s0, s1 = seg_of(entry)
        for c in cuts:
            if hits_vertex(c, _edge_height(s0, s1, c), entry):
                singular.append(c - off)
        for l, h in zip(bounds, bounds[1:]):
            mid = (l + h) / 2
            y = _edge_height(s0, s1, mid)
            k = cast(mid, y, entry)
            du, dv = l - off, h - off
            if k is None:
                done.append((du, dv, off))
            else:
                pending.append((du, dv, off + trans[k][0], partner[k]))
    done.sort(key=lambda t: t[0])
    merged = []
    for du, dv, off in done:
        if (
            merged
            and abs(merged[-1][2] - off) <= tol
            and abs(merged[-1][1] - du) <= tol
            and not any(abs(c - du) <= tol for c in singular)
        ):
            merged[-1] = (merged[-1][0], dv, merged[-1][2])
        else:
            merged.append((du, dv, off))
    lengths = [dv - du for du, dv, _ in merged]
    images = [du + off for du, _, off in merged]
    order = sorted(range(len(merged)), key=lambda i: images[i])
    sigma = [0] * len(merged)
    for rank, i in enumerate(order, start=1):
        sigma[i] = rank
    return Iet(Permutation(tuple(sigma)), lengths)


def shear_window(q):
    """Open interval of ``s`` with ``a + s b`` positive (the lengths of ``h_s q``)."""
    lo, hi = -math.inf, math.inf
    for x, y in q.hol:
        if y > 0:
            lo = max(lo, -float(x) / float(y))
        elif y < 0:
            hi = min(hi, -float(x) / float(y))
    return lo, hi


# --- saddle connections ----------------------------------------------------------


def _key_fn(q, rho):
    if q.exact:
        return None
    quantum = 1e-10 * max(float(rho), 1.0)
    return lambda x, y, s, e: (round(x / quantum), round(y / quantum), s, e)


def saddle_connections_up_to(q, rho):
    """All oriented saddle connections with ``max(|x|, |y|) <= rho``, sorted by holonomy."""
    if not rho > 0:
        raise ValueError("rho must be positive")
    found = q.unfolder.search(rho, key=_key_fn(q, rho))
    out = [SaddleConnection((x, y), (s, e), tuple(c)) for x, y, s, e, c in found.values()]
    out.sort(key=lambda sc: (sc.holonomy[0], sc.holonomy[1], sc.endpoints))
    return out


def shortest_sc(q):
    """``(phi(q), witness)`` for the shortest saddle connection in the sup norm."""
    # edges are saddle connections, so the shortest one is at most cap
    cap = min(max(abs(x), abs(y)) for x, y in q.hol)
    if not q.exact:
        cap = cap * (1 + 1e-9)
    rho = min(cap, math.sqrt(float(abs(area(q)))) / 4)
    if q.exact and not is_exact(rho):
        rho = Fraction(rho).limit_denominator(1 << 20)
    while True:
        scs = saddle_connections_up_to(q, rho)
        if scs or rho >= cap:
            best = min(scs, key=lambda sc: (sc.length, abs(sc.holonomy[0]), sc.holonomy[1]))
            return best.length, best
        rho = min(rho * 2, cap)


def phi(q):
    return shortest_sc(q)[0]


def in_K_eps(q, eps):
    return phi(normalize_area(q)) >= eps


def horizontal_tolerance(q):
    return 0 if q.exact else 1e-10 * sum(abs(float(v)) for v in q.b)


def horizontal_saddle_connections(q):
    """Horizontal saddle connections up to ``2 * sum a_i``."""
    rho = 2 * sum(abs(v) for v in q.a)
    tol = horizontal_tolerance(q)
    found = q.unfolder.search(rho, key=_key_fn(q, rho), ybound=tol)
    out = [SaddleConnection((x, y), (s, e), tuple(c)) for x, y, s, e, c in found.values()]
    out.sort(key=lambda sc: (sc.holonomy[0], sc.holonomy[1], sc.endpoints))
    return out


# --- homology and REL ------------------------------------------------------------


def boundary_matrix(q):
    """Integer k x d matrix: column i is ``[end] - [start]`` of upper edge i."""
    k = q.stratum.k
    m = [[0] * q.d for _ in range(k)]
    lab = q.stratum.label_of
    for i in range(1, q.d + 1):
        m[lab(("P", i))][i - 1] += 1
        m[lab(("P", i - 1))][i - 1] -= 1
    return tuple(tuple(r) for r in m)


def absolute_cycles(q):
    """Basis of ``ker`` of the boundary matrix (absolute homology in edge classes)."""
    return linalg.null_space(boundary_matrix(q), q.d)


def rel_deform(q, r, t):
    """Move along the real REL direction ``r``: lengths ``a + t r``, heights fixed."""
    p = q.perm
    r = tuple(r)
    if len(r) != q.d:
        raise NotInNullSpace("direction has the wrong dimension")
    row = q_row(q_matrix(p), r)
    if all(is_exact(v) for v in r):
        if any(v != 0 for v in row):
            raise NotInNullSpace(f"Q(., r) = {row}")
    elif max(abs(float(v)) for v in row) > 1e-12 * max(1.0, max(abs(float(v)) for v in r)):
        raise NotInNullSpace(f"Q(., r) = {row}")
    new_a = [x + t * ri for x, ri in zip(q.a, r)]
    # a collision is the more specific failure, so it is checked first
    if t != 0:
        for sc in horizontal_saddle_connections(q):
            if not sc.joins_distinct:
                continue
            rate = sum(c * ri for c, ri in zip(sc.classes, r))
            x0 = sc.holonomy[0]
            x1 = x0 + t * rate
            if x1 == 0 or (x0 > 0) != (x1 > 0):
                raise CollisionObstruction(
                    f"horizontal saddle connection {sc.holonomy} collapses along REL"
                )
    if any(not (v > 0) for v in new_a):
        raise LengthCollapse(f"lengths {new_a} are not all positive")
    return suspend(p, new_a, q.b)
