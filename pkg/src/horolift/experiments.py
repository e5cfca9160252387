"""Recurrence diagnostics, line and curve scans, and geodesic traces.

Recurrence type of a length vector ``a`` means ``limsup n eps_n(a) > 0``
and bounded type means ``liminf n eps_n(a) > 0``.  Neither is decidable
from finitely many ``n``, so :func:`classify` applies a threshold ``zeta``
to ``n eps_n`` along a finite schedule and reports a proxy label.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import (
    DimensionMismatch,
    InequalityViolation,
    InvalidLengths,
    NonpositiveParameter,
    NotPositivePair,
    SuspensionInvalid,
)
from .iet import Iet
from .numbers import format_scalar
from .pairing import PositivityConfig, cone_contains, heights, is_positive_pair
from .perm import Permutation
from .surface import apply_matrix, geodesic, phi, suspend

RECURRENT = "RecurrentProxy"
BOUNDED = "BoundedProxy"
NONRECURRENT = "NonRecurrentProxy"
DEGENERATE = "Degenerate"
CLASSES = (RECURRENT, BOUNDED, NONRECURRENT, DEGENERATE)

DEFAULT_SCHEDULE = tuple(2**k for k in range(4, 21))
ZETA_FRACTION = 0.05


def geometric_schedule(cap, start=16):
    """Powers of two from ``start`` up to ``cap`` inclusive."""
    out = []
    n = start
    while n <= cap:
        out.append(n)
        n *= 2
    return tuple(out)


@dataclass
class DiagnosticsRecord:
    s: object
    lengths: tuple
    verdict: str = ""
    connections: int = 0
    eps_trace: list = field(default_factory=list)  # (n, eps_n, n * eps_n)
    phi_trace: list = field(default_factory=list)  # (t, phi(g_t q))
    classification: str = ""
    thresholds: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "s": _fmt(self.s),
            "lengths": [_fmt(v) for v in self.lengths],
            "verdict": self.verdict,
            "connections": self.connections,
            "eps_trace": [[n, _fmt(e), _fmt(ne)] for n, e, ne in self.eps_trace],
            "phi_trace": [[_fmt(t), _fmt(p)] for t, p in self.phi_trace],
            "classification": self.classification,
            "thresholds": {k: _fmt(v) for k, v in self.thresholds.items()},
        }


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    return format_scalar(v)


def classify(values, zeta, eps_values, tol):
    """Proxy label from ``n eps_n`` values along an increasing schedule."""
    if any(e <= tol for e in eps_values):
        return DEGENERATE
    if min(values) >= zeta:
        return BOUNDED
    top = values[len(values) // 2 :]
    if max(top) >= zeta:
        return RECURRENT
    return NONRECURRENT


def _check_schedule(schedule):
    schedule = tuple(int(n) for n in schedule)
    if not schedule or any(n < 1 for n in schedule):
        raise ValueError("schedule must be a nonempty list of positive integers")
    if any(b <= a for a, b in zip(schedule, schedule[1:])):
        raise ValueError("schedule must be strictly increasing")
    return schedule


def recurrence_diagnostic(p, a, schedule=DEFAULT_SCHEDULE, zeta=None):
    """``n eps_n(a)`` along ``schedule`` and the resulting proxy label.

    ``zeta`` defaults to ``0.05 * sum(a)``.  ``Degenerate`` means some
    ``eps_n`` vanishes (exactly, or below the float tolerance), which happens
    precisely when the exchange has a connection within the schedule.
    """
    if not isinstance(p, Permutation):
        p = Permutation(tuple(p))
    schedule = _check_schedule(schedule)
    T = Iet(p, a)
    if zeta is None:
        zeta = ZETA_FRACTION * float(T.total)
    eps = T.epsilon_trace(schedule)
    trace = [(n, e, n * e) for n, e in zip(schedule, eps)]
    label = classify([t[2] for t in trace], zeta, eps, T.tolerance)
    return DiagnosticsRecord(
        s=None,
        lengths=T.lengths,
        eps_trace=trace,
        classification=label,
        thresholds={"zeta": zeta, "tolerance": T.tolerance, "schedule_cap": schedule[-1]},
    )


# --- samplers ----------------------------------------------------------------


def _rng(rng_seed):
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(rng_seed)))


def cantor_point(bits):
    """``sum d_k 3^-k`` for digits ``d_k`` in ``{0, 2}``, as an exact fraction."""
    out = Fraction(0)
    scale = Fraction(1)
    for d in bits:
        if d not in (0, 2):
            raise ValueError("Cantor digits must be 0 or 2")
        scale /= 3
        out += d * scale
    return out


def cantor_sampler(depth, count, rng_seed=0):
    """``count`` samples of the coin-tossing measure on the middle-thirds set."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    digits = 2 * _rng(rng_seed).integers(0, 2, size=(count, depth))
    weights = 3.0 ** -np.arange(1, depth + 1)
    return [float(v) for v in digits @ weights]


@dataclass(frozen=True)
class MeasureSampler:
    """Parameter sampler on a window ``[lo, hi]``.

    ``kind`` is ``lebesgue`` (uniform), ``cantor`` (coin tossing on the
    middle-thirds set, affinely mapped onto the window) or ``grid``
    (evenly spaced, endpoints included).
    """

    kind: str = "lebesgue"
    window: tuple = (0.0, 1.0)
    depth: int = 20
    rng_seed: int = 0

    def __post_init__(self):
        if self.kind not in ("lebesgue", "cantor", "grid"):
            raise ValueError(f"unknown sampler {self.kind!r}")
        lo, hi = self.window
        if not lo < hi:
            raise ValueError("window must satisfy lo < hi")

    def sample(self, count):
        lo, hi = (float(v) for v in self.window)
        if count < 1:
            raise ValueError("count must be >= 1")
        if self.kind == "grid":
            if count == 1:
                return [0.5 * (lo + hi)]
            return [float(v) for v in np.linspace(lo, hi, count)]
        if self.kind == "lebesgue":
            u = _rng(self.rng_seed).random(count)
        else:
            u = np.array(cantor_sampler(self.depth, count, self.rng_seed))
        return [float(lo + (hi - lo) * v) for v in u]

    def to_dict(self):
        return {"kind": self.kind, "window": list(self.window), "depth": self.depth, "rng_seed": self.rng_seed}


# --- scans -------------------------------------------------------------------


@dataclass
class ScanConfig:
    schedule: tuple = DEFAULT_SCHEDULE
    zeta: float | None = None
    threads: int | None = None
    positivity: PositivityConfig = field(default_factory=PositivityConfig)


def _pmap(fn, items, threads):
    threads = threads or os.cpu_count() or 1
    if threads <= 1 or len(items) <= 1:
        return [fn(v) for v in items]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, items))


def summarize(records):
    """Counts per label; the recurrence fraction counts bounded-type proxies too."""
    n = len(records)
    counts = {c: 0 for c in CLASSES}
    for r in records:
        counts[r.classification] += 1
    recurrent = counts[RECURRENT] + counts[BOUNDED]
    return {
        "samples": n,
        "counts": counts,
        "recurrent_fraction": recurrent / n if n else 0.0,
        "exceptional": [_fmt(r.s) for r in records if r.classification not in (RECURRENT, BOUNDED)],
    }


def line_scan(p, a, b, sampler, count, cfg=None):
    """Diagnostics of ``a + s b`` for ``count`` parameters drawn by ``sampler``."""
    cfg = cfg or ScanConfig()
    if not isinstance(p, Permutation):
        p = Permutation(tuple(p))
    schedule = _check_schedule(cfg.schedule)
    if len(a) != p.d or len(b) != p.d:
        raise DimensionMismatch(f"expected vectors of length {p.d}")
    verdict = is_positive_pair(p, a, b, cfg.positivity)
    if verdict.status != "Positive":
        raise NotPositivePair(f"(a, b) is {verdict.status} (route {verdict.route})")
    lo, hi = sampler.window
    for s in (lo, hi):
        if any(not (float(x) + float(s) * float(y) > 0) for x, y in zip(a, b)):
            raise InvalidLengths(f"a + s b is not positive at s = {s}")
    af = [float(v) for v in a]
    bf = [float(v) for v in b]

    def one(s):
        rec = recurrence_diagnostic(p, [x + s * y for x, y in zip(af, bf)], schedule, cfg.zeta)
        rec.s = s
        rec.verdict = verdict.status
        return rec

    return _pmap(one, sampler.sample(count), cfg.threads)


def mahler_curve(d, s):
    """``beta(s) = (s, ..., s^d) / R`` and its derivative ``gamma(s) / R^2``.

    ``R = s + ... + s^d`` and ``gamma_i(s) = sum_{l=i}^{i+d-1} (2i - l - 1) s^l``.
    Exact for integer or rational ``s``.
    """
    if d < 2:
        raise DimensionMismatch("d must be >= 2")
    if not s > 0:
        raise NonpositiveParameter(f"s = {s} must be positive")
    if isinstance(s, int):
        s = Fraction(s)
    R = sum(s**j for j in range(1, d + 1))
    beta = tuple(s**i / R for i in range(1, d + 1))
    gamma = tuple(sum((2 * i - l - 1) * s**l for l in range(i, i + d)) for i in range(1, d + 1))
    return beta, tuple(g / (R * R) for g in gamma)


def mahler_scan(d, sampler, count, cfg=None):
    """Cone check and recurrence diagnostic at ``beta(s)`` for sampled ``s``."""
    cfg = cfg or ScanConfig()
    schedule = _check_schedule(cfg.schedule)
    if sampler.window[0] <= 0:
        raise NonpositiveParameter("the window must lie in (0, inf)")
    p = Permutation.reverse(d)

    def one(s):
        beta, dbeta = mahler_curve(d, s)
        inside = cone_contains(p, [-v for v in dbeta])
        rec = recurrence_diagnostic(p, beta, schedule, cfg.zeta)
        rec.s = s
        rec.verdict = "InCone" if inside else "NotInCone"
        return rec

    return _pmap(one, sampler.sample(count), cfg.threads)


# --- geodesic compactness trace ----------------------------------------------


@dataclass(frozen=True)
class TraceConstants:
    c1: object
    c2: object
    kappa1: float
    kappa2: object


def trace_constants(p, b):
    """Return-time bounds on the diameter and the constants built from them.

    The return time over ``I_i`` is ``L_i = Q(e_i, b)``; ``c2`` also bounds
    the vertical extent ``|sum b|`` of the diameter.
    """
    hd = heights(p, tuple(b))
    c1 = min(hd.L)
    if not c1 > 0:
        raise SuspensionInvalid(f"minimal return time {c1} is not positive")
    c2 = max(max(hd.L), abs(hd.y[-1]))
    return TraceConstants(c1, c2, math.sqrt(2 * float(c2)), 1 + (1 + 2 * c2) / c1)


def geodesic_compactness_trace(p, a, b, ts, check=True):
    """Compare ``n eps_n`` with ``phi(g_t q)`` along the geodesic.

    For every ``t`` the record holds ``n(t) = floor(kappa2 e^{t/2})``,
    ``eps_{n(t)}`` of the exchange and ``phi(g_t q)`` from saddle-connection
    enumeration.  ``n eps_n <= kappa2 phi`` is asserted when ``check`` is set.
    The companion bound ``phi(g_t' q) <= kappa1 sqrt(zeta)`` with
    ``zeta = n eps_n`` and ``e^{t'/2} = n sqrt(2 c2 / zeta)`` is recorded in
    ``extra['first']`` without assertion.
    """
    if not isinstance(p, Permutation):
        p = Permutation(tuple(p))
    q = suspend(p, a, b)
    k = trace_constants(p, q.b)
    k2 = float(k.kappa2)
    T = Iet(p, q.a)
    ts = [float(t) for t in ts]
    ns = [int(math.floor(k2 * math.exp(t / 2))) for t in ts]
    order = sorted(set(ns))
    eps_map = dict(zip(order, T.epsilon_trace(order)))
    eps_trace, phi_trace, first = [], [], []
    for t, n in zip(ts, ns):
        e = eps_map[n]
        ph = phi(apply_matrix(q, geodesic(t)))
        lhs = n * float(e)
        rhs = k2 * float(ph)
        if check and lhs > rhs * (1 + 1e-9):
            raise InequalityViolation(f"t={t}: n eps_n = {lhs} > kappa2 phi = {rhs}")
        eps_trace.append((n, e, n * e))
        phi_trace.append((t, ph))
        zeta = lhs
        if zeta > 0:
            t1 = 2 * math.log(n * math.sqrt(2 * float(k.c2) / zeta))
            if t1 <= max(ts) + 4:
                ph1 = float(phi(apply_matrix(q, geodesic(t1))))
                bound = k.kappa1 * math.sqrt(zeta)
                first.append({"n": n, "zeta": zeta, "t": t1, "phi": ph1, "bound": bound, "holds": ph1 <= bound})
    zeta_lo = ZETA_FRACTION * float(T.total)
    label = classify([v[2] for v in eps_trace], zeta_lo, [v[1] for v in eps_trace], T.tolerance)
    return DiagnosticsRecord(
        s=None,
        lengths=q.a,
        eps_trace=eps_trace,
        phi_trace=phi_trace,
        classification=label,
        thresholds={"c1": k.c1, "c2": k.c2, "kappa1": k.kappa1, "kappa2": k.kappa2, "zeta": zeta_lo},
        extra={"first": first},
    )


# --- artifacts ---------------------------------------------------------------


def csv_header(d):
    return ["s"] + [f"a_{i}" for i in range(1, d + 1)] + [
        "verdict",
        "n",
        "eps_n",
        "n_eps_n",
        "t",
        "phi",
        "classification",
    ]


def records_to_csv(records, d):
    """Long format: one row per (record, trace point)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(csv_header(d))
    for r in records:
        head = [_fmt(r.s)] + [_fmt(v) for v in r.lengths] + [r.verdict]
        phis = r.phi_trace or [(None, None)] * len(r.eps_trace)
        for (n, e, ne), (t, ph) in zip(r.eps_trace, phis):
            w.writerow(head + [n, _fmt(e), _fmt(ne), _fmt(t), _fmt(ph), r.classification])
    return buf.getvalue()


def write_artifacts(path, records, d, summary):
    """Write the CSV to ``path`` and the summary JSON next to it."""
    with open(path, "w", newline="") as fh:
        fh.write(records_to_csv(records, d))
    root, _ = os.path.splitext(path)
    spath = root + ".summary.json"
    with open(spath, "w") as fh:
        fh.write(json.dumps(summary, sort_keys=True, indent=2) + "\n")
    return spath
