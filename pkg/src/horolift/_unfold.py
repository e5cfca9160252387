"""Triangulation of a simple polygon and saddle-connection search by unfolding.

The search starts a visibility wedge at every triangle corner and pushes it
across edges (diagonals or glued boundary edges), developing triangles into
the plane.  A vertex that falls strictly inside the current wedge is seen
along a straight segment: a saddle connection.  Windows whose visible part
miss the search box are pruned; anything beyond them
is farther away along the same rays.
"""

from __future__ import annotations


def cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _sub(u, v):
    return (u[0] - v[0], u[1] - v[1])


def _add(u, v):
    return (u[0] + v[0], u[1] + v[1])


def _in_closed_triangle(p, a, b, c):
    return cross(_sub(b, a), _sub(p, a)) >= 0 and cross(_sub(c, b), _sub(p, b)) >= 0 and cross(
        _sub(a, c), _sub(p, c)
    ) >= 0


def ear_clip(pts):
    """Triangles (index triples, counterclockwise) of a simple ccw polygon."""
    idx = list(range(len(pts)))
    tris = []
    while len(idx) > 3:
        m = len(idx)
        for k in range(m):
            i0, i1, i2 = idx[k - 1], idx[k], idx[(k + 1) % m]
            a, b, c = pts[i0], pts[i1], pts[i2]
            if cross(_sub(b, a), _sub(c, b)) <= 0:
                continue
            if any(_in_closed_triangle(pts[j], a, b, c) for j in idx if j not in (i0, i1, i2)):
                continue
            tris.append((i0, i1, i2))
            idx.pop(k)
            break
        else:
            raise ValueError("polygon is not simple or not counterclockwise")
    tris.append(tuple(idx))
    return tris


class Unfolder:
    """Saddle connections of a polygon with edge gluings by translations.

    ``pts``      polygon vertices, counterclockwise
    ``partner``  ``partner[k]`` is the boundary edge glued to edge ``k``
                 (edge ``k`` runs from ``pts[k]`` to ``pts[k+1]``)
    ``trans``    translation carrying edge ``k`` onto its partner
    ``coeff``    integer class vector of each vertex position
    ``tcoeff``   integer class vector of each translation
    ``labels``   singularity label of each vertex
    """

    def __init__(self, pts, partner, trans, coeff, tcoeff, labels):
        self.pts = pts
        self.coeff = coeff
        self.labels = labels
        n = len(pts)
        self.tris = ear_clip(pts)
        where = {}
        for t, tri in enumerate(self.tris):
            for e in range(3):
                where[(tri[e], tri[(e + 1) % 3])] = (t, e)
        zero = pts[0][0] * 0
        dzero = tuple(0 for _ in coeff[0])
        adj = []
        for t, tri in enumerate(self.tris):
            row = []
            for e in range(3):
                u, w = tri[e], tri[(e + 1) % 3]
                if (w, u) in where:
                    t2, e2 = where[(w, u)]
                    row.append((t2, e2, (zero, zero), dzero))
                    continue
                if (u + 1) % n != w:
                    raise ValueError("triangulation edge is neither a diagonal nor a boundary edge")
                k2 = partner[u]
                t2, e2 = where[(k2, (k2 + 1) % n)]
                tv = trans[u]
                tc = tcoeff[u]
                row.append((t2, e2, (-tv[0], -tv[1]), tuple(-c for c in tc)))
            adj.append(row)
        self.adj = adj

    def search(self, rho, key=None, ybound=None):
        """Oriented saddle connections with ``|x| <= rho`` and ``|y| <= ybound``.

        ``ybound`` defaults to ``rho``.  Returns a dict keyed by
        ``key(x, y, start, end)`` with values ``(x, y, start, end, classes)``.
        """
        box = (rho, rho if ybound is None else ybound)
        if key is None:
            key = lambda x, y, s, e: (x, y, s, e)
        found = {}
        pts, coeff, labels, tris, adj = self.pts, self.coeff, self.labels, self.tris, self.adj

        def record(vec, cls, s, e):
            if abs(vec[0]) <= box[0] and abs(vec[1]) <= box[1]:
                k = key(vec[0], vec[1], s, e)
                if k not in found:
                    found[k] = (vec[0], vec[1], s, e, cls)

        for t, tri in enumerate(tris):
            for c in range(3):
                apex = tri[c]
                A = pts[apex]
                s = labels[apex]
                ac = coeff[apex]
                O = (-A[0], -A[1])
                Oc = tuple(-v for v in ac)
                pi, qi = tri[(c + 1) % 3], tri[(c + 2) % 3]
                P = _add(pts[pi], O)
                Qv = _add(pts[qi], O)
                record(P, _vadd(coeff[pi], Oc), s, labels[pi])
                record(Qv, _vadd(coeff[qi], Oc), s, labels[qi])
                stack = []
                if _visible(P, Qv, P, Qv, box):
                    stack.append((t, (c + 1) % 3, O, Oc, P, Qv))
                while stack:
                    t0, e0, O0, Oc0, R, L = stack.pop()
                    t2, e2, delta, dc = adj[t0][e0]
                    O2 = _add(O0, delta)
                    Oc2 = _vadd(Oc0, dc)
                    tri2 = tris[t2]
                    ci = tri2[(e2 + 2) % 3]
                    C = _add(pts[ci], O2)
                    U = _add(pts[tri2[(e2 + 1) % 3]], O2)
                    W = _add(pts[tri2[e2]], O2)
                    crR = cross(R, C)
                    crL = cross(C, L)
                    if crR > 0 and crL > 0:
                        record(C, _vadd(coeff[ci], Oc2), s, labels[ci])
                        if _visible(U, C, R, C, box):
                            stack.append((t2, (e2 + 1) % 3, O2, Oc2, R, C))
                        if _visible(C, W, C, L, box):
                            stack.append((t2, (e2 + 2) % 3, O2, Oc2, C, L))
                    elif crR <= 0:
                        if _visible(C, W, R, L, box):
                            stack.append((t2, (e2 + 2) % 3, O2, Oc2, R, L))
                    else:
                        if _visible(U, C, R, L, box):
                            stack.append((t2, (e2 + 1) % 3, O2, Oc2, R, L))
        return found


def _vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _visible(X, Y, R, L, box):
    """Does the part of segment XY inside the wedge (R, L) meet ``[-bx, bx] x [-by, by]``?"""
    D = _sub(Y, X)
    lo, hi = 0, 1
    # cross(R, X + l D) >= 0 and cross(X + l D, L) >= 0
    for c0, c1 in ((cross(R, X), cross(R, D)), (cross(X, L), cross(D, L))):
        if c1 == 0:
            if c0 < 0:
                return False
        elif c1 > 0:
            lo = max(lo, -c0 / c1)
        else:
            hi = min(hi, -c0 / c1)
        if lo > hi:
            return False
    # Liang-Barsky against the box
    for p0, dp, r in ((X[0], D[0], box[0]), (X[1], D[1], box[1])):
        if dp == 0:
            if abs(p0) > r:
                return False
            continue
        t1 = (-r - p0) / dp
        t2 = (r - p0) / dp
        if t1 > t2:
            t1, t2 = t2, t1
        lo = max(lo, t1)
        hi = min(hi, t2)
        if lo > hi:
            return False
    return True
