"""
Moving one singularity relative to another
==========================================

For a permutation with two singularities the form Q has a null direction.
Adding a multiple of it to the lengths keeps every absolute period fixed while
the relative position of the singularities changes. The deformation stops when
a horizontal saddle connection between distinct singularities shrinks to zero.
"""

from fractions import Fraction

from horolift import Permutation, null_space, rel_deform, suspend
from horolift.errors import CollisionObstruction
from horolift.surface import absolute_cycles, area, horizontal_saddle_connections

p = Permutation((3, 1, 2))
r = null_space(p)[0]
q = suspend(p, (1, 2, 3), (2, -1, -1))
print("null direction:", r)

for t in (Fraction(-1), Fraction(1, 2), Fraction(2)):
    m = rel_deform(q, r, t)
    periods = [sum(c * x for c, x in zip(cyc, m.a)) for cyc in absolute_cycles(m)]
    print(f"t={t}  a={[str(v) for v in m.a]}  periods={periods}  area={area(m)}")

# here edge 3 is a horizontal connection between the two singularities
q = suspend(p, (1, 2, 3), (3, -2, 0))
print([sc.holonomy for sc in horizontal_saddle_connections(q) if sc.joins_distinct])
try:
    rel_deform(q, (0, 1, -1), 3)
except CollisionObstruction as exc:
    print("stopped:", exc)
