"""
When a pair fails to be positive
================================

Equal lengths make the rotation periodic. Every point comes back after two
steps, eps_n collapses to zero, and the interior discontinuity runs into the
origin after one step.
"""

from horolift import Iet, Permutation, is_positive_pair
from horolift.pairing import PositivityConfig, connection_sums, heights

p = Permutation((2, 1))
T = Iet(p, (1, 1))
print("eps_2 =", T.epsilon_n(2))

conns = T.detect_connections(3, include_origin=True)
print("connections:", conns)

# the sum of L along the connection equals the height gained along it
hd = heights(p, (1, -1))
print("sums:", connection_sums(T, hd, conns))

cfg = PositivityConfig(seeds=4, orbit_len=10**4, m_max=50)
for b in ((1, -1), (0, 0), (-1, 1)):
    v = is_positive_pair(p, (1, 1), b, cfg)
    print(b, v.status, v.route)
