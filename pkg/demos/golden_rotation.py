"""
The golden rotation
===================

A two-interval exchange with lengths (1, phi) is a rotation by an angle whose
continued fraction is all ones. Its orbits spread out as evenly as any orbit can,
so n * eps_n stays bounded away from zero. Everything below runs in exact
arithmetic over Q(sqrt 5).
"""

from horolift import Golden, Iet, Permutation, is_positive_pair
from horolift.experiments import geometric_schedule, recurrence_diagnostic

PHI = Golden(0, 1)
T = Iet((2, 1), (1, PHI))

# the first few points of the orbit of 0, all exact
x = Golden(0)
for k in range(6):
    print(k, x)
    x = T(x)

# the minimal gap of the forward orbit shrinks like 1/n, no faster
for n in (1, 2, 5, 13, 34, 89, 233):
    e = T.epsilon_n(n)
    print(f"n={n:4d}  eps_n={float(e):.6f}  n*eps_n={n * float(e):.4f}")

rec = recurrence_diagnostic(Permutation((2, 1)), (1, PHI), geometric_schedule(10**5))
print("classification:", rec.classification)

# (1, -1) lies in the positive cone, so the pair is positive without any search
print(is_positive_pair(Permutation((2, 1)), (1, PHI), (1, -1)).status)
