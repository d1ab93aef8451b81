"""
Triangular matrices that carry a periodic vector
================================================

Build E and H on a finite window, check that they are inverse on the
interior, and read a polymer partition function off a product of H's.
"""

import math

import numpy as np

from periodic_pitman import (IndexWindow, PeriodicField, PeriodicVector, build_E, build_H, check_EH_inverse,
                             check_H_factorization, partition_dp, tri_product)

rng = np.random.default_rng(3)
win = IndexWindow(1, 8)
x = PeriodicVector(rng.uniform(-1, 1, 3))

E, H = build_E(x, win), build_H(x, win)
print("E/H inverse deviations:", check_EH_inverse(x, win))

w1, w2 = PeriodicVector(rng.uniform(-1, 1, 3)), PeriodicVector(rng.uniform(-1, 1, 3))
print("H factorization:", check_H_factorization(w1, w2, win))

# product of H over four columns = partition function between rows b and d
fld = PeriodicField.from_array(1, rng.uniform(-1, 1, (4, 3)))
prod = tri_product(*(build_H(fld.columns[c], win) for c in range(1, 5)))
for b, d in [(1, 1), (2, 5), (1, 8)]:
    print(f"rows {b}->{d}: log H-product {math.log(prod[b, d]):.12f}  DP {partition_dp(fld, (1, b), (4, d)):.12f}")
