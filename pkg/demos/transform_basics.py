"""
The periodic transform on a pair of vectors
===========================================

Compute T and D for a period-3 pair, check the conserved quantities,
then watch the pair map undo itself.
"""

import numpy as np

from periodic_pitman import PeriodicVector, VectorPair, pitman_D, pitman_P, pitman_T, zt_D, zt_T

X1 = PeriodicVector([0.5, -1.25, 2.0])
X2 = PeriodicVector([1.5, 0.25, -0.75])

T, D = pitman_T(X1, X2), pitman_D(X1, X2)
print("T =", T.entries)
print("D =", D.entries)

# period totals move with the pair: sum T = sum X1, sum D = sum X2
print("sum T - sum X1:", T.entries.sum() - X1.entries.sum())
print("T + D - (X1 + X2):", np.max(np.abs(T.entries + D.entries - X1.entries - X2.entries)))

# the pair map is its own inverse
pair = VectorPair(X1, X2)
back = pitman_P(pitman_P(pair))
print("P(P(x)) - x:", max(np.max(np.abs(back.first.entries - X1.entries)),
                          np.max(np.abs(back.second.entries - X2.entries))))

# max-plus version of the same map
print("zero temperature T =", zt_T(X1, X2).entries)
print("zero temperature D =", zt_D(X1, X2).entries)
