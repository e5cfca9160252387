"""
Along the Mahler curve
======================

The curve s -> beta(s) is a normalized family of length vectors. Its tangent
gamma(s) sums to zero and lies in the positive cone of the reversal, so each
point of the curve comes paired with a direction that makes it positive.
"""

from fractions import Fraction

from horolift.experiments import MeasureSampler, ScanConfig, geometric_schedule, mahler_curve, mahler_scan, summarize

beta, gamma = mahler_curve(4, Fraction(3, 2))
print("beta  =", [str(v) for v in beta])
print("gamma =", [str(v) for v in gamma])

cfg = ScanConfig(schedule=geometric_schedule(2**14), threads=4)
for d in (3, 4):
    recs = mahler_scan(d, MeasureSampler("lebesgue", (0.2, 2.0), rng_seed=0), 40, cfg)
    sm = summarize(recs)
    cone = sum(r.verdict == "InCone" for r in recs) / len(recs)
    print(f"d={d}  cone={cone:.2f}  counts={sm['counts']}")
