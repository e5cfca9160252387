"""
Orbit gaps against short saddle connections
===========================================

Pushing a suspension along the geodesic flow shrinks horizontal directions and
stretches vertical ones. The shortest saddle connection phi(g_t q) controls the
orbit gaps at time n(t): n eps_n is at most kappa2 * phi. This prints both sides.
"""

from horolift import Permutation, universal_direction
from horolift.experiments import geodesic_compactness_trace, trace_constants

p = Permutation((4, 3, 2, 1))
b = universal_direction(p)
k = trace_constants(p, b)
print(f"c1={k.c1} c2={k.c2} kappa1={k.kappa1:.4f} kappa2={k.kappa2}")

ts = [v / 2 for v in range(13)]
# irrational lengths, integer ones would be periodic
a = (1.0, 2**0.5, 3**0.5, 5**0.5)
rec = geodesic_compactness_trace(p, a, b, ts)
for (n, e, ne), (t, ph) in zip(rec.eps_trace, rec.phi_trace):
    print(f"t={t:4.1f}  n={n:5d}  n*eps_n={float(ne):.4f}  kappa2*phi={float(k.kappa2) * float(ph):.4f}")
