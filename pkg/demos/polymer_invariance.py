"""
Partition functions survive the column operators
================================================

Random field, a chain of adjacent column operators, and endpoints that stay
clear of the columns being touched. Single and multi-path values are the
same before and after, at positive and zero temperature.
"""

import numpy as np

from periodic_pitman import MultiPathSpec, PeriodicField, invariance_harness, multipath_partition

rng = np.random.default_rng(11)
fld = PeriodicField.from_array(0, rng.uniform(-1, 1, (6, 3)))
ops = [1, 3, 2]

specs = [
    MultiPathSpec.single((0, 1), (5, 6)),
    MultiPathSpec(((0, 2), (0, 1)), ((5, 4), (5, 3))),
]
for mode in ("positive", "zero"):
    res = invariance_harness(fld, specs, ops, mode=mode)
    print(f"{mode:>8}: before {np.round(res['before'], 10)} after {np.round(res['after'], 10)} "
          f"dev {res['max_relative']:.1e}")

# two independent routes to the two-path value
print("enumerate:", multipath_partition(fld, specs[1], "enumerate"))
print("lgv      :", multipath_partition(fld, specs[1], "lgv"))

# an initial point sitting at column k+1 is not protected
bad = MultiPathSpec.single((2, 1), (5, 6))
before = multipath_partition(fld, bad)
after = multipath_partition(fld.apply([1]), bad)
print("unprotected endpoint changes by", after - before)
