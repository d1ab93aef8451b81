"""
From log-sum-exp to max-plus
============================

Scale the inputs by beta, divide the output by beta, and the transform
approaches its max-plus version within log(N)/beta.
"""

import math

import numpy as np

from periodic_pitman import PeriodicField, lpp_dp, partition_dp
from periodic_pitman.suites import BETAS, beta_gap

rng = np.random.default_rng(5)
n = 4
w = rng.uniform(-10, 10, (200, 2, n))
for beta in BETAS:
    gap = float(np.max(beta_gap(w[:, 0], w[:, 1], beta)))
    print(f"beta={beta:>9.0f}  gap {gap:.3e}  log(N)/beta {math.log(n) / beta:.3e}")

# same squeeze for polymers: G <= (1/beta) log Z_beta <= G + log(#paths)/beta
fld = PeriodicField.from_array(1, rng.uniform(-3, 3, (4, n)))
G = lpp_dp(fld, (1, 1), (4, 5))
for beta in (1.0, 10.0, 100.0):
    print(f"beta={beta:>5.0f}  (1/beta) log Z - G = {partition_dp(fld, (1, 1), (4, 5), beta) / beta - G:.3e}")
