"""Weight samplers and Monte Carlo checks of the Burke and permutation-invariance properties.

Randomness comes from Philox generators derived from a ``SeedSequence``:
each purpose (input draws, reference draws, ...) gets its own spawn key and
is split into ``streams`` independent child streams, one chunk of the
sample each. Results are concatenated in stream order, so a report is a
function of ``(inputs, seed, streams)`` only.

Distribution comparisons are two-sample tests between *independent*
batches: per-coordinate Kolmogorov-Smirnov tests plus z-tests on first
moments and on all second cross moments, Bonferroni-corrected together.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

import numpy as np
from scipy import stats

from .errors import InvalidInputError, PreconditionError
from .lattice import (MultiPathSpec, _iter_point_paths, _PointIndex,
                      box_weights, lgv_logdet, log_partition_box, lpp_box, psi_check, usigma_check)
from .periodic import apply_pk_array, transform_pair
from .perms import as_permutation, apply_perm, inverse, min_adjacent_decomposition

__all__ = [
    "FAMILIES", "DistSpec", "ParamField", "MCConfig", "StatRecord", "ExperimentReport",
    "sample", "sample_weights", "burke_mc_test", "min_adjacent_decomposition",
    "permutation_invariance_mc", "ks_records", "moment_records",
]

FAMILIES = ("log-inverse-gamma", "geometric", "exponential")

# spawn keys, one per independent purpose
_INPUT, _REFERENCE, _PERMUTED = 0, 1, 2


@dataclass(frozen=True)
class DistSpec:
    """One weight law: ``log-inverse-gamma(shape, scale)``, ``geometric(q)`` or ``exponential(rate)``."""

    kind: str
    shape: float | None = None
    scale: float | None = None
    q: float | None = None
    rate: float | None = None

    def __post_init__(self):
        if self.kind == "log-inverse-gamma":
            if not (_positive(self.shape) and _positive(self.scale)):
                raise InvalidInputError("log-inverse-gamma needs shape > 0 and scale > 0")
        elif self.kind == "geometric":
            if self.q is None or not 0 < self.q < 1:
                raise InvalidInputError("geometric needs 0 < q < 1")
        elif self.kind == "exponential":
            if not _positive(self.rate):
                raise InvalidInputError("exponential needs rate > 0")
        else:
            raise InvalidInputError(f"unknown distribution {self.kind!r}")

    @classmethod
    def log_inverse_gamma(cls, shape, scale=1.0):
        return cls("log-inverse-gamma", shape=shape, scale=scale)

    @classmethod
    def geometric(cls, q):
        return cls("geometric", q=q)

    @classmethod
    def exponential(cls, rate):
        return cls("exponential", rate=rate)


def _positive(x) -> bool:
    return x is not None and np.isfinite(x) and x > 0


def _draw_family(kind, param, rng: np.random.Generator, size=None, scale: float = 1.0):
    """Variates with per-entry parameter ``param`` (shape, q or rate)."""
    if kind == "log-inverse-gamma":
        # -log of a Gamma(shape, rate=scale) variate has the log-inverse-gamma density
        return -np.log(rng.gamma(param, 1.0 / scale, size))
    if kind == "geometric":
        # numpy counts trials up to the first success; shift to support {0, 1, ...}
        return (rng.geometric(1.0 - np.asarray(param), size) - 1).astype(float)
    if kind == "exponential":
        return rng.exponential(1.0 / np.asarray(param), size)
    raise InvalidInputError(f"unknown distribution {kind!r}")


def sample(dist: DistSpec, rng: np.random.Generator, size=None):
    """One variate (or an array of ``size`` variates) from ``dist``."""
    if dist.kind == "log-inverse-gamma":
        out = _draw_family(dist.kind, dist.shape, rng, size, dist.scale)
    elif dist.kind == "geometric":
        out = _draw_family(dist.kind, dist.q, rng, size)
    else:
        out = _draw_family(dist.kind, dist.rate, rng, size)
    return float(out) if size is None else out


@dataclass(frozen=True)
class ParamField:
    """Column parameters ``a`` (columns ``lo, lo+1, ...``), row parameters ``b`` over Z_N.

    For log-inverse-gamma and exponential weights the entry law uses
    ``a_i + b_j``; for geometric weights it uses ``a_i * b_j``.
    """

    a: tuple[float, ...]
    b: tuple[float, ...]
    lam: float = 1.0
    lo: int = 0

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(float(x) for x in self.a))
        object.__setattr__(self, "b", tuple(float(x) for x in self.b))
        if not self.a or not self.b:
            raise InvalidInputError("parameter field needs non-empty a and b")
        if not _positive(self.lam):
            raise InvalidInputError("lambda must be positive")

    @property
    def columns(self) -> range:
        return range(self.lo, self.lo + len(self.a))

    def matrix(self, kind: str) -> np.ndarray:
        """Per-entry parameter, shape ``(len(a), len(b))``; validates the family constraint."""
        a = np.array(self.a)[:, None]
        b = np.array(self.b)[None, :]
        if kind == "geometric":
            m = a * b
            if not np.all((m > 0) & (m < 1)):
                raise InvalidInputError("geometric weights need 0 < a_i * b_j < 1")
            return m
        if kind not in FAMILIES:
            raise InvalidInputError(f"unknown distribution {kind!r}")
        m = a + b
        if not np.all(m > 0):
            raise InvalidInputError("weights need a_i + b_j > 0")
        return m

    def permuted(self, sigma: Mapping[int, int] | None = None, tau: Mapping[int, int] | None = None) -> "ParamField":
        """``(sigma a)_i = a_{sigma(i)}`` and ``(tau b)_j = b_{tau(j)}`` (rows labelled 1..N)."""
        a, b = list(self.a), list(self.b)
        if sigma:
            for i in sigma:
                if i not in self.columns or apply_perm(sigma, i) not in self.columns:
                    raise InvalidInputError(f"sigma moves column {i} outside the parameter window")
            a = [self.a[apply_perm(sigma, i) - self.lo] for i in self.columns]
        if tau:
            for j in tau:
                if not (1 <= j <= len(self.b) and 1 <= apply_perm(tau, j) <= len(self.b)):
                    raise InvalidInputError(f"tau moves row {j} outside 1..{len(self.b)}")
            b = [self.b[apply_perm(tau, j) - 1] for j in range(1, len(self.b) + 1)]
        return ParamField(tuple(a), tuple(b), self.lam, self.lo)


def sample_weights(kind: str, params: ParamField, rng: np.random.Generator, size: int) -> np.ndarray:
    """Independent weights of shape ``(size, len(a), len(b))``."""
    m = params.matrix(kind)
    return _draw_family(kind, m, rng, (size,) + m.shape, params.lam)


@dataclass(frozen=True)
class MCConfig:
    samples: int = 100_000
    seed: int = 0
    alpha: float = 0.001
    streams: int = 4
    workers: int = 1

    def __post_init__(self):
        if self.samples < 100:
            raise InvalidInputError("need at least 100 samples")
        if not 0 < self.alpha <= 0.1:
            raise InvalidInputError("alpha must lie in (0, 0.1]")
        if self.streams < 1 or self.workers < 1:
            raise InvalidInputError("streams and workers must be positive")
        if not 0 <= self.seed < 2**64:
            raise InvalidInputError("seed must be a 64-bit unsigned integer")


def _draw(config: MCConfig, purpose: int, fn: Callable[[np.random.Generator, int], np.ndarray]) -> np.ndarray:
    seq = np.random.SeedSequence(entropy=config.seed, spawn_key=(purpose,))
    gens = [np.random.Generator(np.random.Philox(s)) for s in seq.spawn(config.streams)]
    sizes = [len(c) for c in np.array_split(np.arange(config.samples), config.streams)]
    if config.workers > 1:
        with ThreadPoolExecutor(config.workers) as pool:
            chunks = list(pool.map(fn, gens, sizes))
    else:
        chunks = [fn(g, n) for g, n in zip(gens, sizes)]
    return np.concatenate(chunks, axis=0)


# reports -------------------------------------------------------------------

@dataclass
class StatRecord:
    name: str
    kind: str  # "ks", "moment" or "exact"
    value: float  # p-value for statistical records, deviation for exact ones
    threshold: float
    passed: bool = False

    def to_dict(self) -> dict:
        return {"name": self.name, "kind": self.kind, "value": self.value,
                "threshold": self.threshold, "passed": self.passed}


@dataclass
class ExperimentReport:
    name: str
    passed: bool
    records: list[StatRecord]
    samples: int
    seed: int
    alpha: float
    wall_time: float = field(default=0.0, compare=False)

    @property
    def statistical(self) -> list[StatRecord]:
        return [r for r in self.records if r.kind != "exact"]

    @property
    def exact(self) -> list[StatRecord]:
        return [r for r in self.records if r.kind == "exact"]

    def min_pvalue(self) -> float:
        return min((r.value for r in self.statistical), default=1.0)

    def to_dict(self, include_time: bool = False) -> dict:
        out = {"name": self.name, "passed": self.passed, "samples": self.samples,
               "seed": self.seed, "alpha": self.alpha,
               "records": [r.to_dict() for r in self.records]}
        if include_time:
            out["wall_time"] = self.wall_time
        return out


def ks_records(ref: np.ndarray, test: np.ndarray, labels: Sequence[str]) -> list[StatRecord]:
    """Two-sample KS test per column of ``(samples, coords)`` arrays."""
    out = []
    for c, label in enumerate(labels):
        p = stats.ks_2samp(ref[:, c], test[:, c], method="asymp").pvalue
        out.append(StatRecord(f"ks[{label}]", "ks", float(p), 0.0))
    return out


def _z_pvalue(x: np.ndarray, y: np.ndarray) -> float:
    diff = x.mean() - y.mean()
    se2 = x.var(ddof=1) / x.size + y.var(ddof=1) / y.size
    if se2 == 0:
        return 1.0 if diff == 0 else 0.0
    return float(2 * stats.norm.sf(abs(diff) / math.sqrt(se2)))


def moment_records(ref: np.ndarray, test: np.ndarray, labels: Sequence[str]) -> list[StatRecord]:
    """Welch z-tests on means and on every product ``x_u x_v`` with ``u <= v``.

    Coordinates are centred and scaled by the reference sample first so the
    products stay well conditioned.
    """
    mu = ref.mean(axis=0)
    sd = ref.std(axis=0)
    sd = np.where(sd > 0, sd, 1.0)
    r = (ref - mu) / sd
    t = (test - mu) / sd
    out = [StatRecord(f"mean[{labels[u]}]", "moment", _z_pvalue(r[:, u], t[:, u]), 0.0)
           for u in range(len(labels))]
    for u in range(len(labels)):
        for v in range(u, len(labels)):
            p = _z_pvalue(r[:, u] * r[:, v], t[:, u] * t[:, v])
            out.append(StatRecord(f"cross[{labels[u]},{labels[v]}]", "moment", p, 0.0))
    return out


def _finish(name: str, records: list[StatRecord], config: MCConfig, start: float) -> ExperimentReport:
    statistical = [r for r in records if r.kind != "exact"]
    level = config.alpha / max(len(statistical), 1)
    for r in statistical:
        r.threshold = level
        r.passed = r.value >= level
    for r in records:
        if r.kind == "exact":
            r.passed = r.value <= r.threshold
    return ExperimentReport(name, all(r.passed for r in records), records, config.samples,
                            config.seed, config.alpha, time.perf_counter() - start)


def _mode_for(kind: str) -> str:
    return "positive" if kind == "log-inverse-gamma" else "zero"


def _rel(a, b) -> np.ndarray:
    return np.abs(a - b) / np.maximum(1.0, np.maximum(np.abs(a), np.abs(b)))


# Burke property -------------------------------------------------------------

def burke_mc_test(kind: str, params: ParamField, config: MCConfig, ordering: str = "direct",
                  negative_control: bool = False) -> ExperimentReport:
    """Check that the two-row transform preserves the product law.

    Rows ``X1, X2`` are drawn with column parameters ``a[0], a[1]``. With
    ``ordering="direct"`` the output ``(T(X1, X2), D(X1, X2))`` must
    have the input law; with ``ordering="operator"`` the output
    ``(T(X2, X1), D(X2, X1))`` must have the law with ``a`` swapped.
    Log-inverse-gamma uses the positive-temperature maps, geometric and
    exponential the zero-temperature ones.

    A negative control compares against the wrong target (rows swapped),
    which should fail whenever ``a[0] != a[1]``.
    """
    if len(params.a) != 2:
        raise InvalidInputError("the two-row test needs exactly two column parameters")
    if ordering not in ("direct", "operator"):
        raise InvalidInputError(f"unknown ordering {ordering!r}")
    start = time.perf_counter()
    mode = _mode_for(kind)
    swapped = ParamField(params.a[::-1], params.b, params.lam, params.lo)
    params.matrix(kind)
    target = params if ordering == "direct" else swapped
    if negative_control:
        target = swapped if target is params else params

    x = _draw(config, _INPUT, lambda g, n: sample_weights(kind, params, g, n))
    ref = _draw(config, _REFERENCE, lambda g, n: sample_weights(kind, target, g, n))
    x1, x2 = x[:, 0, :], x[:, 1, :]
    if ordering == "direct":
        t, d = transform_pair(x1, x2, mode)
    else:
        t, d = transform_pair(x2, x1, mode)
    out = np.stack([t, d], axis=1)

    n = len(params.b)
    labels = [f"{r}.{i}" for r in ("1", "2") for i in range(1, n + 1)]
    records = ks_records(ref.reshape(len(ref), -1), out.reshape(len(out), -1), labels)
    records += moment_records(ref.reshape(len(ref), -1), out.reshape(len(out), -1), labels)

    # per-draw identities; (ii) only exists at positive temperature
    u1, u2 = (x1, x2) if ordering == "direct" else (x2, x1)
    records.append(StatRecord("exact[D+T]", "exact", float(np.max(_rel(t + d, u1 + u2))), 1e-12))
    if mode == "positive":
        lhs = np.exp(-d) + np.exp(-np.roll(t, -1, axis=-1))
        rhs = np.exp(-u1) + np.exp(-np.roll(u2, -1, axis=-1))
        records.append(StatRecord("exact[exp-identity]", "exact", float(np.max(np.abs(lhs - rhs) / rhs)), 1e-12))
    if kind == "geometric":
        bad = np.sum((t != np.round(t)) | (d != np.round(d)) | (t < 0) | (d < 0))
        records.append(StatRecord("exact[integer-nonnegative]", "exact", float(bad), 0.0))
    name = f"burke/{kind}/{ordering}" + ("/negative-control" if negative_control else "")
    return _finish(name, records, config, start)


# permutation invariance ---------------------------------------------------

class _Observable:
    """Batched evaluation of ``log Z(V | U)`` or ``G(V | U)`` on a box of weights."""

    def __init__(self, spec: MultiPathSpec, mode: str, lo: int):
        self.spec, self.mode, self.lo = spec, mode, lo
        if mode == "zero" and spec.k > 1:
            index = _PointIndex()
            self._paths = []
            lists = []
            for u, v in spec.pairs():
                pts_list = list(_iter_point_paths(u, v))
                self._paths.append(pts_list)
                lists.append([(index.mask(p), 0.0) for p in pts_list])
            self._systems = self._index_systems(lists)

    @staticmethod
    def _index_systems(lists):
        k = len(lists)
        out = []

        def rec(i, used, chosen):
            if i == k:
                out.append(tuple(chosen))
                return
            for j, (mask, _) in enumerate(lists[i]):
                if not mask & used:
                    rec(i + 1, used | mask, chosen + [j])

        rec(0, 0, [])
        return out

    def __call__(self, cols: np.ndarray) -> np.ndarray:
        spec = self.spec
        if self.mode == "zero" and spec.k > 1:
            sums = []
            for pts_list in self._paths:
                idx_c = np.array([[p.col - self.lo for p in pts] for pts in pts_list])
                n = cols.shape[-1]
                idx_r = np.array([[(p.row - 1) % n for p in pts] for pts in pts_list])
                sums.append(cols[:, idx_c, idx_r].sum(axis=-1))
            best = np.full(cols.shape[0], -np.inf)
            for system in self._systems:
                total = sum(sums[i][:, j] for i, j in enumerate(system))
                best = np.maximum(best, total)
            return best
        mat = np.empty((cols.shape[0], spec.k, spec.k))
        for i, u in enumerate(spec.U):
            for j, v in enumerate(spec.V):
                if v.col < u.col or v.row < u.row:
                    mat[:, i, j] = -np.inf
                    continue
                box = box_weights(cols, self.lo, u, v)
                mat[:, i, j] = lpp_box(box) if self.mode == "zero" else log_partition_box(box)
        if spec.k == 1:
            return mat[:, 0, 0]
        return lgv_logdet(mat)


def _observe(observables, cols) -> np.ndarray:
    return np.stack([obs(cols) for obs in observables], axis=1)


def permutation_invariance_mc(kind: str, params: ParamField, sigma: Mapping[int, int],
                              specs: Sequence[MultiPathSpec], config: MCConfig,
                              tau: Mapping[int, int] | None = None) -> ExperimentReport:
    """Compare the joint law of path observables under parameters ``(a, b)`` and ``(sigma a, tau b)``.

    Observables are ``log Z(V | U)`` for log-inverse-gamma weights and
    ``G(V | U)`` for geometric or exponential weights. Besides the
    two-ensemble comparison, the operator chain for ``sigma`` (and for
    ``tau`` on rows, through the transposed box) is applied to every draw
    of the ``(a, b)`` ensemble: each observable must be unchanged to 1e-9
    and the transformed weights must follow the permuted product law.
    """
    start = time.perf_counter()
    mode = _mode_for(kind)
    sigma = as_permutation(sigma)
    tau = as_permutation(tau or {})
    params.matrix(kind)
    permuted = params.permuted(sigma, tau)
    lo, n, m = params.lo, len(params.b), len(params.a)
    for spec in specs:
        for p in spec.U + spec.V:
            if p.col not in params.columns or (tau and not 1 <= p.row <= n):
                raise PreconditionError(f"endpoint {tuple(p)} outside the parameter box")
        if not usigma_check(sigma, spec, "column"):
            raise PreconditionError(f"{spec} violates the column condition for sigma")
        if tau and not usigma_check(tau, spec, "row"):
            raise PreconditionError(f"{spec} violates the row condition for tau")
        if spec.k > 1 and not psi_check(spec):
            raise PreconditionError(f"{spec} violates the unique-pairing condition")
    observables = [_Observable(s, mode, lo) for s in specs]

    base = _draw(config, _INPUT, lambda g, k: sample_weights(kind, params, g, k))
    if sigma or tau:
        other = _draw(config, _PERMUTED, lambda g, k: sample_weights(kind, permuted, g, k))
    else:
        other = base
    obs_a = _observe(observables, base)
    obs_b = _observe(observables, other)
    labels = [f"spec{i}" for i in range(len(specs))]
    records = ks_records(obs_a, obs_b, labels) + moment_records(obs_a, obs_b, labels)

    # exact coupling: the chain for sigma^{-1} moves parameter a_{sigma(i)} to column i
    coupled = base
    for k in min_adjacent_decomposition(inverse(sigma)):
        coupled = apply_pk_array(coupled, k, lo, mode)
    if tau:
        rows = np.swapaxes(coupled, -1, -2)
        for k in min_adjacent_decomposition(inverse(tau)):
            rows = apply_pk_array(rows, k, 1, mode)
        coupled = np.swapaxes(rows, -1, -2)
    obs_c = _observe(observables, coupled)
    if mode == "zero":
        dev = float(np.max(_rel(obs_c, obs_a))) if obs_a.size else 0.0
    else:
        dev = float(np.max(np.abs(np.expm1(obs_c - obs_a)))) if obs_a.size else 0.0
    records.append(StatRecord("exact[coupling]", "exact", dev, 1e-9))
    if sigma or tau:
        field_labels = [f"W({c},{r})" for c in params.columns for r in range(1, n + 1)]
        records += ks_records(other.reshape(len(other), -1), coupled.reshape(len(coupled), -1), field_labels)

    name = f"permute/{kind}/sigma={sorted(sigma.items())}" + (f"/tau={sorted(tau.items())}" if tau else "")
    return _finish(name, records, config, start)
