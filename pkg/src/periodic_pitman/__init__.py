"""Discrete periodic Pitman transform: transforms, polymer partition functions and their checks."""

__version__ = "0.1.0"

from .errors import (InvalidInputError, NumericFailureError, OutOfWindowError, ParseError,  # noqa: E402
                     PitmanError, PreconditionError, ResourceLimitError)
from .periodic import (ColumnSequence, PeriodicVector, VectorPair, apply_Pk, apply_pk_array,  # noqa: E402
                       beta_scaled_P, braid_components, cyclic_sum_closed, cyclic_sum_half_open, frak_D,
                       frak_T, jacobian_abs_det, pitman_D, pitman_P, pitman_T, shift_tau, symbol_sum,
                       transform_pair, zt_D, zt_P, zt_T)
from .matrices import (IndexWindow, TriangularMatrix, build_delta, build_E, build_H,  # noqa: E402
                       cancellation_probe, check_EH_inverse, check_H_factorization, tri_multiply, tri_product)
from .perms import from_cycles, inversion_count, min_adjacent_decomposition  # noqa: E402
from .lattice import (LatticePoint, MultiPathSpec, PeriodicField, UpRightPath, enumerate_paths,  # noqa: E402
                      invariance_harness, lpp_dp, lpp_multipath, multipath_partition, partition_dp,
                      partition_enumerate, partition_via_H, psi_check, usigma_check)
from .stochastic import (DistSpec, ExperimentReport, MCConfig, ParamField, burke_mc_test,  # noqa: E402
                         permutation_invariance_mc, sample)
from .serialize import parse_instance, serialize_instance  # noqa: E402
from .suites import RunConfig, SuiteReport, run_suite  # noqa: E402
