"""
Scanning a horocycle line
=========================

Shearing a suspension by the horocycle flow moves the lengths along the line
a + s b. For almost every s the resulting exchange should be recurrent, even
when s is drawn from a Cantor set instead of an interval. This script runs a
short scan of each kind and prints the summaries.
"""

import json

from horolift import Permutation, universal_direction
from horolift.experiments import MeasureSampler, ScanConfig, geometric_schedule, line_scan, summarize

p = Permutation((4, 3, 2, 1))
a = (1, 1, 1, 1)
b = universal_direction(p)
cfg = ScanConfig(schedule=geometric_schedule(2**14), threads=4)

for kind in ("lebesgue", "cantor"):
    recs = line_scan(p, a, b, MeasureSampler(kind, (-0.2, 0.2), rng_seed=1), 40, cfg)
    sm = summarize(recs)
    print(kind, json.dumps(sm["counts"]), "exceptional:", sm["exceptional"][:3])

# grid points give rational lengths, so every one of them is periodic
grid = line_scan(p, a, b, MeasureSampler("grid", (-0.2, 0.2)), 5, cfg)
for r in grid:
    print(f"s={r.s:+.2f}  {r.classification}")
