import csv
import io
import json
import math
import random
from fractions import Fraction

import pytest

from horolift.errors import DimensionMismatch, InequalityViolation, NonpositiveParameter, NotPositivePair
from horolift.experiments import (
    BOUNDED,
    DEGENERATE,
    NONRECURRENT,
    RECURRENT,
    MeasureSampler,
    ScanConfig,
    cantor_point,
    cantor_sampler,
    classify,
    csv_header,
    geodesic_compactness_trace,
    geometric_schedule,
    line_scan,
    mahler_curve,
    mahler_scan,
    recurrence_diagnostic,
    records_to_csv,
    summarize,
    trace_constants,
    write_artifacts,
)
from horolift.numbers import Golden
from horolift.pairing import PositivityConfig, universal_direction
from horolift.perm import Permutation

PHI = Golden(0, 1)
REV4 = Permutation((4, 3, 2, 1))
B0 = (3, 1, -1, -3)
SHORT = geometric_schedule(2**12)
FAST = ScanConfig(schedule=SHORT, threads=1, positivity=PositivityConfig(seeds=4, orbit_len=10**4, m_max=500))


def test_geometric_schedule():
    assert geometric_schedule(2**6) == (16, 32, 64)
    assert geometric_schedule(2**20)[-1] == 2**20


def test_classify_rules():
    assert classify([1.0, 1.0], 0.5, [0.1, 0.1], 0) == BOUNDED
    assert classify([0.1, 0.1, 0.1, 0.9], 0.5, [0.1] * 4, 0) == RECURRENT
    assert classify([0.9, 0.1, 0.1, 0.1], 0.5, [0.1] * 4, 0) == NONRECURRENT
    assert classify([1.0, 0.0], 0.5, [0.1, 0.0], 0) == DEGENERATE


def test_golden_rotation_bounded_type():
    sched = geometric_schedule(10**5)
    rec = recurrence_diagnostic(Permutation((2, 1)), (1, PHI), sched)
    assert rec.classification == BOUNDED
    assert min(float(ne) for _, _, ne in rec.eps_trace) >= 0.5


def test_periodic_rotation_degenerate():
    rec = recurrence_diagnostic(Permutation((2, 1)), (1, 1), SHORT)
    assert rec.classification == DEGENERATE


@pytest.mark.slow
def test_generic_reversal_is_recurrent():
    rng = random.Random(21)
    labels = [
        recurrence_diagnostic(REV4, [rng.uniform(0.5, 1.5) for _ in range(4)]).classification
        for _ in range(100)
    ]
    good = sum(v in (RECURRENT, BOUNDED) for v in labels)
    assert good >= 95


def test_mahler_curve_examples():
    beta, dbeta = mahler_curve(2, 1)
    assert beta == (Fraction(1, 2), Fraction(1, 2))
    assert dbeta == (Fraction(-1, 4), Fraction(1, 4))
    beta, dbeta = mahler_curve(3, 1)
    assert beta == (Fraction(1, 3),) * 3
    assert dbeta == (Fraction(-1, 3), 0, Fraction(1, 3))
    with pytest.raises(NonpositiveParameter):
        mahler_curve(3, 0)
    with pytest.raises(DimensionMismatch):
        mahler_curve(1, 1)


@pytest.mark.parametrize("d", range(2, 7))
def test_mahler_normalisation_and_gamma_sum(d):
    for s in (Fraction(1, 5), Fraction(7, 10), Fraction(1), Fraction(13, 7), Fraction(2)):
        beta, dbeta = mahler_curve(d, s)
        assert sum(beta) == 1
        assert sum(dbeta) == 0


@pytest.mark.parametrize("d", range(2, 7))
def test_mahler_derivative_matches_finite_differences(d):
    h = 1e-6
    for k in range(46):
        s = 0.2 + 0.04 * k
        up, _ = mahler_curve(d, s + h)
        dn, _ = mahler_curve(d, s - h)
        _, db = mahler_curve(d, s)
        assert max(abs((u - v) / (2 * h) - w) for u, v, w in zip(up, dn, db)) <= 1e-8


def test_mahler_d2_rational_point_degenerate():
    recs = mahler_scan(2, MeasureSampler("grid", (0.5, 1.5)), 3, FAST)
    assert recs[1].s == 1.0
    assert recs[1].classification == DEGENERATE


def test_mahler_cone_check():
    recs = mahler_scan(3, MeasureSampler("lebesgue", (0.2, 2.0), rng_seed=4), 20, FAST)
    assert all(r.verdict == "InCone" for r in recs)


def test_cantor_examples():
    assert cantor_point([0] * 10) == 0
    assert cantor_point([2, 2, 2]) == Fraction(26, 27)
    with pytest.raises(ValueError):
        cantor_point([1])
    pts = cantor_sampler(20, 10**5, rng_seed=3)
    assert abs(sum(pts) / len(pts) - 0.5) <= 0.01
    assert cantor_sampler(20, 50, rng_seed=3) == pts[:50]
    # no point falls in the removed middle third
    assert not any(1 / 3 < p < 2 / 3 for p in pts)


def test_samplers_deterministic():
    for kind in ("lebesgue", "cantor", "grid"):
        s = MeasureSampler(kind, (-0.2, 0.2), rng_seed=5)
        assert s.sample(30) == s.sample(30)
        assert all(-0.2 <= v <= 0.2 for v in s.sample(30))
    assert MeasureSampler("grid", (-1, 1)).sample(3) == [-1.0, 0.0, 1.0]


def test_line_scan_grid_includes_zero():
    recs = line_scan(REV4, (1, 1, 1, 1), B0, MeasureSampler("grid", (-0.2, 0.2)), 5, FAST)
    mid = recs[2]
    assert mid.s == 0.0
    assert mid.lengths == (1.0, 1.0, 1.0, 1.0)
    assert mid.classification == DEGENERATE
    assert all(r.verdict == "Positive" for r in recs)


def test_line_scan_requires_positive_pair():
    with pytest.raises(NotPositivePair):
        line_scan(REV4, (1, 1, 1, 1), (0, 0, 0, 0), MeasureSampler("grid", (-0.1, 0.1)), 3, FAST)


def test_line_scan_reparametrisation_invariant():
    a = (1, 1, 1, 1)
    base = line_scan(REV4, a, B0, MeasureSampler("grid", (-0.2, 0.2)), 17, FAST)
    c = 4
    scaled = line_scan(REV4, a, [c * v for v in B0], MeasureSampler("grid", (-0.05, 0.05)), 17, FAST)
    assert [r.classification for r in base] == [r.classification for r in scaled]


def test_scans_thread_independent():
    sampler = MeasureSampler("lebesgue", (-0.2, 0.2), rng_seed=2)
    runs = []
    for threads in (1, 4):
        cfg = ScanConfig(schedule=SHORT, threads=threads, positivity=FAST.positivity)
        runs.append(records_to_csv(line_scan(REV4, (1, 1, 1, 1), B0, sampler, 12, cfg), 4))
    assert runs[0] == runs[1]


def test_summary_counts():
    recs = line_scan(REV4, (1, 1, 1, 1), B0, MeasureSampler("grid", (-0.2, 0.2)), 5, FAST)
    sm = summarize(recs)
    assert sm["samples"] == 5
    assert sum(sm["counts"].values()) == 5
    assert "0.0" in sm["exceptional"]


def test_trace_constants():
    k = trace_constants(REV4, B0)
    assert (k.c1, k.c2, k.kappa2) == (3, 7, 6)
    assert k.kappa1 == pytest.approx(math.sqrt(14))


def test_trace_inequality_reversal():
    ts = [v / 2 for v in range(17)]
    rec = geodesic_compactness_trace(REV4, (1, 1, 1, 1), B0, ts)
    assert [n for n, _, _ in rec.eps_trace][0] == 6
    assert len(rec.phi_trace) == 17


def test_trace_inequality_golden():
    ts = [v / 2 for v in range(17)]
    rec = geodesic_compactness_trace(Permutation((2, 1)), (1, PHI), (1, -1), ts)
    k2 = float(rec.thresholds["kappa2"])
    for (n, e, ne), (t, ph) in zip(rec.eps_trace, rec.phi_trace):
        assert float(ne) <= k2 * float(ph) * (1 + 1e-9)


def test_trace_at_zero_is_phi_of_surface():
    from horolift.surface import phi, suspend

    rec = geodesic_compactness_trace(REV4, (1, 2, 3, 4), B0, [0.0])
    assert float(rec.phi_trace[0][1]) == pytest.approx(float(phi(suspend(REV4, (1, 2, 3, 4), B0))))


def test_trace_violation_raises(monkeypatch):
    import horolift.experiments as ex

    monkeypatch.setattr(ex, "phi", lambda q: 1e-9)
    with pytest.raises(InequalityViolation):
        ex.geodesic_compactness_trace(Permutation((2, 1)), (1, PHI), (1, -1), [0.0])


def test_csv_schema_and_artifacts(tmp_path):
    assert ",".join(csv_header(3)) == "s,a_1,a_2,a_3,verdict,n,eps_n,n_eps_n,t,phi,classification"
    recs = line_scan(REV4, (1, 1, 1, 1), B0, MeasureSampler("grid", (-0.1, 0.1)), 3, FAST)
    path = tmp_path / "scan.csv"
    spath = write_artifacts(str(path), recs, 4, summarize(recs))
    rows = list(csv.reader(io.StringIO(path.read_text())))
    assert rows[0] == csv_header(4)
    assert len(rows) == 1 + 3 * len(SHORT)
    assert json.loads(open(spath).read())["samples"] == 3


def test_universal_direction_line_positive_for_reversals():
    for d in (3, 4, 5):
        p = Permutation.reverse(d)
        recs = line_scan(p, [1] * d, universal_direction(p), MeasureSampler("grid", (-0.05, 0.05)), 3, FAST)
        assert len(recs) == 3
