"""Veech's alternating form Q, the step function L and positive pairs.

``Q(e_i, e_j)`` is ``+1`` when ``i > j`` and ``sigma(i) < sigma(j)``, ``-1``
when ``i < j`` and ``sigma(i) > sigma(j)``, and ``0`` otherwise.  For heights
``b`` the return-time step function satisfies ``L|_{I_i} = Q(e_i, b)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels, linalg
from .errors import DimensionMismatch, InvalidLengths
from .iet import Connection, Iet
from .numbers import coerce_vector, format_scalar, vector_kind
from .perm import Permutation, _require_irreducible, universal_heights


@dataclass(frozen=True)
class QForm:
    perm: Permutation
    matrix: tuple

    @property
    def d(self):
        return self.perm.d

    def array(self):
        return np.array(self.matrix, dtype=np.int64)

    def rank(self):
        return linalg.rank(self.matrix)

    def nullity(self):
        return self.d - self.rank()

    def __call__(self, u, v):
        return q_eval(self, u, v)


def q_matrix(p):
    d = p.d
    rows = []
    for i in range(1, d + 1):
        row = []
        for j in range(1, d + 1):
            if i > j and p(i) < p(j):
                row.append(1)
            elif i < j and p(i) > p(j):
                row.append(-1)
            else:
                row.append(0)
        rows.append(tuple(row))
    m = tuple(rows)
    assert all(m[i][j] == -m[j][i] for i in range(d) for j in range(d))
    return QForm(p, m)


def q_eval(Q, u, v):
    """``u^T M v``, exact for exact inputs."""
    if len(u) != Q.d or len(v) != Q.d:
        raise DimensionMismatch(f"vectors must have length {Q.d}")
    total = 0
    for i, ui in enumerate(u):
        row = Q.matrix[i]
        s = 0
        for j, vj in enumerate(v):
            if row[j]:
                s = s + row[j] * vj
        total = total + ui * s
    return total


def q_row(Q, b):
    """``(Q(e_1, b), ..., Q(e_d, b))``."""
    if len(b) != Q.d:
        raise DimensionMismatch(f"vector must have length {Q.d}")
    out = []
    for row in Q.matrix:
        s = 0
        for mij, bj in zip(row, b):
            if mij:
                s = s + mij * bj
        out.append(s)
    return tuple(out)


@dataclass(frozen=True)
class HeightData:
    """Partial sums ``y_0..y_d``, ``y'_0..y'_d`` of heights and the values of L."""

    b: tuple
    y: tuple
    yp: tuple
    L: tuple


def heights(p, b):
    b = tuple(b)
    if len(b) != p.d:
        raise DimensionMismatch(f"expected {p.d} heights")
    inv = p.inverse()
    zero = b[0] * 0
    y = [zero]
    yp = [zero]
    for i in range(1, p.d + 1):
        y.append(y[-1] + b[i - 1])
        yp.append(yp[-1] + b[inv(i) - 1])
    L = tuple(y[i] - yp[p(i)] for i in range(1, p.d + 1))
    Q = q_matrix(p)
    if vector_kind(b) == "float":
        scale = 1e-12 * (1.0 + sum(abs(v) for v in b))
        assert all(abs(li - qi) <= scale for li, qi in zip(L, q_row(Q, b))), "L must equal Q(e_i, b)"
    else:
        assert all(li == qi for li, qi in zip(L, q_row(Q, b))), "L must equal Q(e_i, b)"
    return HeightData(b=b, y=tuple(y), yp=tuple(yp), L=L)


def universal_direction(p):
    """``b0_i = sigma(i) - i``, which always lies in the cone of good directions."""
    _require_irreducible(p)
    return universal_heights(p)


def cone_contains(p, b):
    """True iff ``Q(e_i, b) > 0`` for every ``i``."""
    return all(v > 0 for v in q_row(q_matrix(p), tuple(b)))


def null_space(p):
    """Primitive integer basis of ``ker Q`` (the real REL directions)."""
    _require_irreducible(p)
    Q = q_matrix(p)
    return linalg.null_space(Q.matrix, p.d)


# --- invariant measures and positivity -------------------------------------


def _seed_rng(rng_seed, k):
    ss = np.random.SeedSequence(rng_seed, spawn_key=(k,))
    return np.random.Generator(np.random.Philox(ss))


def empirical_invariant_measures(T, seeds=32, orbit_len=10**6, rng_seed=0, points=None, dedup=1e-3):
    """Visit-frequency vectors of Birkhoff orbits.

    One orbit of length ``orbit_len`` per seed point; seed ``k`` is drawn from
    its own counter-based stream so results do not depend on evaluation
    order.  Vectors within ``dedup`` of an earlier one in l1 are dropped.
    """
    if orbit_len < 1:
        raise ValueError("orbit_len must be >= 1")
    Tf = T.as_float()
    x, xp, s0, _ = Tf.arrays()
    total = float(Tf.total)
    if points is None:
        if seeds < 1:
            raise ValueError("seeds must be >= 1")
        points = [float(_seed_rng(rng_seed, k).uniform(0.0, total)) for k in range(seeds)]
    freqs = []
    for v in points:
        counts = _kernels.visit_counts(x, xp, s0, float(v), int(orbit_len))
        f = counts / float(orbit_len)
        if all(np.abs(f - g).sum() > dedup for g in freqs):
            freqs.append(f)
    return [tuple(float(v) for v in f) for f in freqs]


@dataclass
class PositivityConfig:
    seeds: int = 32
    orbit_len: int = 10**6
    m_max: int = 10**4
    margin: float | None = None
    rng_seed: int = 0


@dataclass(frozen=True)
class MeasureWitness:
    frequencies: tuple
    integral: object  # Q(a', b)
    source: str = "sampled"

    def to_dict(self):
        return {
            "kind": "measure",
            "source": self.source,
            "frequencies": [format_scalar(v) for v in self.frequencies],
            "integral": format_scalar(self.integral),
        }


@dataclass(frozen=True)
class ConnectionWitness:
    connection: Connection
    orbit_sum: object
    bound: object

    def to_dict(self):
        c = self.connection
        return {
            "kind": "connection",
            "connection": [c.i, c.j, c.m],
            "orbit_sum": format_scalar(self.orbit_sum),
            "bound": format_scalar(self.bound),
        }


@dataclass
class PositivityVerdict:
    status: str  # "Positive" | "NotPositive" | "Undetermined"
    witness: object = None
    route: str = ""
    parameters: dict = field(default_factory=dict)

    def __post_init__(self):
        assert (self.witness is not None) == (self.status == "NotPositive")

    @property
    def positive(self):
        return self.status == "Positive"

    def to_dict(self):
        return {
            "status": self.status,
            "route": self.route,
            "witness": None if self.witness is None else self.witness.to_dict(),
            "parameters": self.parameters,
        }


def connection_sums(T, hd, connections):
    """``sum_{n<m} L(T^n x_i)`` for each connection, one orbit walk per start point."""
    out = {}
    by_start = {}
    for c in connections:
        by_start.setdefault(c.i, []).append(c)
    for i, conns in by_start.items():
        need = max(c.m for c in conns)
        v = T.x[i]
        acc = [0]
        for _ in range(need):
            k = T.interval_of(v)
            acc.append(acc[-1] + hd.L[k - 1])
            v = T._fwd(v)
        for c in conns:
            out[c] = acc[c.m]
    return out


def is_positive_pair(p, a, b, cfg=None):
    """Semi-decision for the positive-pair property of ``(a, b)``.

    Rigorous routes: Lebesgue measure (``Q(a, b) <= 0`` refutes), connection
    inequalities on the exact backend, and cone membership of ``b``
    (``L > 0`` everywhere, so every invariant measure integrates positively).
    Outside the cone the measure condition is sampled with Birkhoff
    frequencies and the answer may be ``Undetermined``.
    """
    cfg = cfg or PositivityConfig()
    a = tuple(a)
    b = tuple(b)
    if len(a) != p.d or len(b) != p.d:
        raise DimensionMismatch(f"expected vectors of length {p.d}")
    joint = coerce_vector(a + b)
    a, b = joint[: p.d], joint[p.d :]
    if any(not (v > 0) for v in a):
        raise InvalidLengths(f"lengths must be positive: {a}")
    T = Iet(p, a)
    Q = q_matrix(p)
    hd = heights(p, b)
    exact = vector_kind(joint) != "float"
    total = T.total
    bmax = max(abs(v) for v in b)
    margin = cfg.margin if cfg.margin is not None else 1e-6 * float(bmax) * float(total)
    params = {
        "seeds": cfg.seeds,
        "orbit_len": cfg.orbit_len,
        "m_max": cfg.m_max,
        "margin": margin,
        "rng_seed": cfg.rng_seed,
        "exact": exact,
    }

    leb = q_eval(Q, a, b)
    if leb <= 0:
        freqs = tuple(v / total for v in a)
        return PositivityVerdict(
            "NotPositive", MeasureWitness(freqs, leb / total, "lebesgue"), "lebesgue", params
        )

    conns = T.detect_connections(cfg.m_max)
    sums = connection_sums(T, hd, conns)
    params["connections"] = len(conns)
    for c in conns:
        s = sums[c]
        bound = hd.y[c.i] - hd.y[c.j]
        if exact:
            bad = not (s > bound)
        else:
            tol = 1e-12 * (abs(float(s)) + abs(float(bound)) + 1.0)
            bad = s - bound <= tol
        if bad:
            return PositivityVerdict("NotPositive", ConnectionWitness(c, s, bound), "connection", params)

    if cone_contains(p, b):
        c1 = min(hd.L)
        spread = max(hd.y[i] - hd.y[j] for i in range(p.d) for j in range(p.d))
        # connection sums grow at least like m * min L, so long ones always pass
        params["rigorous"] = exact and (spread < (cfg.m_max + 1) * c1)
        return PositivityVerdict("Positive", None, "cone", params)

    measures = empirical_invariant_measures(T, cfg.seeds, cfg.orbit_len, cfg.rng_seed)
    values = [sum(f * float(l) for f, l in zip(freqs, hd.L)) for freqs in measures]
    params["measures"] = len(measures)
    worst = min(range(len(values)), key=values.__getitem__)
    if values[worst] <= -margin:
        return PositivityVerdict(
            "NotPositive", MeasureWitness(measures[worst], values[worst]), "sampled", params
        )
    if values[worst] >= margin:
        params["rigorous"] = False
        return PositivityVerdict("Positive", None, "sampled", params)
    return PositivityVerdict("Undetermined", None, "sampled", params)
