"""N-periodic vectors and the discrete periodic Pitman transform.

A periodic vector ``X`` of period ``N`` is stored as a length-``N`` array
``entries`` where label ``i`` (any integer) resolves to
``entries[(i - 1) % N]``, so labels ``1..N`` are the canonical ones.

Every transform is available at two levels:

* array level (``transform_pair``, ``frak_pair``, ``apply_pk_array``), acting
  on the last axis of numpy arrays with arbitrary leading batch dimensions;
  the Monte Carlo code relies on these;
* value level (``pitman_T``, ``pitman_P``, ``apply_Pk`` ...), acting on the
  immutable :class:`PeriodicVector` / :class:`ColumnSequence` types.

Positive temperature replaces the cyclic sums of exponentials by
``logsumexp`` (max-shifted), zero temperature by ``max``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.special import logsumexp

from .errors import InvalidInputError, NumericFailureError, OutOfWindowError

__all__ = [
    "PeriodicVector", "VectorPair", "ColumnSequence", "MODES",
    "cyclic_sum_half_open", "cyclic_sum_closed", "symbol_sum", "shift_tau",
    "transform_pair", "frak_pair", "apply_pk_array", "braid_components",
    "pitman_T", "pitman_D", "pitman_P",
    "zt_T", "zt_D", "zt_P", "beta_scaled_P",
    "frak_T", "frak_D", "apply_Pk", "jacobian_abs_det",
]

MODES = ("positive", "zero", "beta")


def _freeze(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class PeriodicVector:
    """Real vector indexed by Z_N with 1-based labels and wrap-around lookup."""

    entries: np.ndarray

    def __init__(self, entries: Iterable[float]):
        arr = np.array(list(entries) if not isinstance(entries, np.ndarray) else entries, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise InvalidInputError("a periodic vector needs a non-empty 1-d array of entries")
        if not np.all(np.isfinite(arr)):
            raise InvalidInputError("periodic vector entries must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def period(self) -> int:
        return int(self.entries.size)

    def __len__(self) -> int:
        return self.period

    def __getitem__(self, label: int) -> float:
        return float(self.entries[(int(label) - 1) % self.period])

    def __iter__(self):
        return iter(self.entries.tolist())

    def __eq__(self, other) -> bool:
        if not isinstance(other, PeriodicVector):
            return NotImplemented
        return np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash(tuple(self.entries.tolist()))

    def __repr__(self) -> str:
        return f"PeriodicVector({self.entries.tolist()!r})"

    def scaled(self, factor: float) -> "PeriodicVector":
        return PeriodicVector(self.entries * factor)

    def is_integral(self) -> bool:
        return bool(np.all(self.entries == np.round(self.entries)))


@dataclass(frozen=True)
class VectorPair:
    first: PeriodicVector
    second: PeriodicVector

    def __post_init__(self):
        if self.first.period != self.second.period:
            raise InvalidInputError(
                f"pair periods differ: {self.first.period} vs {self.second.period}")

    @property
    def period(self) -> int:
        return self.first.period

    def __iter__(self):
        return iter((self.first, self.second))

    def max_abs_diff(self, other: "VectorPair") -> float:
        return float(max(np.max(np.abs(self.first.entries - other.first.entries)),
                         np.max(np.abs(self.second.entries - other.second.entries))))


class ColumnSequence:
    """Finite window ``[lo, hi]`` of a bi-infinite sequence of period-N columns.

    Reading a column outside the window raises :class:`OutOfWindowError`;
    the columns beyond the window are not modelled.
    """

    __slots__ = ("period", "lo", "hi", "_columns")

    def __init__(self, lo: int, columns: Sequence[PeriodicVector]):
        columns = tuple(c if isinstance(c, PeriodicVector) else PeriodicVector(c) for c in columns)
        if not columns:
            raise InvalidInputError("a column sequence needs at least one column")
        periods = {c.period for c in columns}
        if len(periods) != 1:
            raise InvalidInputError(f"columns have mixed periods {sorted(periods)}")
        self.period = periods.pop()
        self.lo = int(lo)
        self.hi = self.lo + len(columns) - 1
        self._columns = columns

    @classmethod
    def from_array(cls, lo: int, array) -> "ColumnSequence":
        """Build from a ``(num_columns, N)`` array; row ``t`` becomes column ``lo + t``."""
        arr = np.asarray(array, dtype=float)
        if arr.ndim != 2:
            raise InvalidInputError("expected a 2-d array of shape (num_columns, period)")
        return cls(lo, [PeriodicVector(row) for row in arr])

    @property
    def window(self) -> tuple[int, int]:
        return self.lo, self.hi

    def __len__(self) -> int:
        return len(self._columns)

    def __contains__(self, k: int) -> bool:
        return self.lo <= k <= self.hi

    def __getitem__(self, k: int) -> PeriodicVector:
        if k not in self:
            raise OutOfWindowError(f"column {k} outside window [{self.lo}, {self.hi}]")
        return self._columns[k - self.lo]

    def __iter__(self):
        return iter(self._columns)

    def items(self):
        return zip(range(self.lo, self.hi + 1), self._columns)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ColumnSequence):
            return NotImplemented
        return self.lo == other.lo and self._columns == other._columns

    def __repr__(self) -> str:
        return f"ColumnSequence(lo={self.lo}, columns={[c.entries.tolist() for c in self._columns]!r})"

    def as_array(self) -> np.ndarray:
        return np.stack([c.entries for c in self._columns])

    def replace(self, updates: Mapping[int, PeriodicVector]) -> "ColumnSequence":
        cols = list(self._columns)
        for k, col in updates.items():
            if k not in self:
                raise OutOfWindowError(f"column {k} outside window [{self.lo}, {self.hi}]")
            if col.period != self.period:
                raise InvalidInputError("replacement column has the wrong period")
            cols[k - self.lo] = col
        return ColumnSequence(self.lo, cols)

    def max_abs_diff(self, other: "ColumnSequence") -> float:
        if self.window != other.window:
            raise InvalidInputError("windows differ")
        return float(np.max(np.abs(self.as_array() - other.as_array())))


# cyclic sums ---------------------------------------------------------------

def cyclic_sum_half_open(X: PeriodicVector, i: int, j: int) -> float:
    """``X_{(i,j]}``: sum of ``X_{i+1}, ..., X_j`` in cyclic order (0 when i = j mod N)."""
    n = (j - i) % X.period
    return float(sum(X[i + t] for t in range(1, n + 1)))


def cyclic_sum_closed(X: PeriodicVector, i: int, j: int) -> float:
    """``X_{[i,j]} = X_i + X_{(i,j]}``; ``[i, i-1]`` is the full period."""
    return X[i] + cyclic_sum_half_open(X, i, j)


def symbol_sum(X: PeriodicVector) -> float:
    """Total of X over one period."""
    return float(np.sum(X.entries))


def shift_tau(X: PeriodicVector, k: int) -> PeriodicVector:
    """``(tau_k X)_i = X_{i+k}``."""
    return PeriodicVector(np.roll(X.entries, -int(k)))


# array-level transforms ----------------------------------------------------

def _offset_sums(y: np.ndarray, closed: bool) -> np.ndarray:
    """Cyclic partial sums of ``y`` along the last axis.

    Returns shape ``(..., N, N)`` with ``[..., i, m]`` equal to
    ``y_{[i, i+m]}`` (closed) or ``y_{(i, i+m]}`` (half open), 0-based ``i``.
    """
    n = y.shape[-1]
    doubled = np.concatenate([y, y], axis=-1)
    csum = np.concatenate([np.zeros(y.shape[:-1] + (1,)), np.cumsum(doubled, axis=-1)], axis=-1)
    i = np.arange(n)[:, None]
    m = np.arange(n)[None, :]
    start = i if closed else i + 1
    return csum[..., i + m + 1] - csum[..., start]


def _reducer(mode: str):
    if mode == "zero":
        return lambda s: np.max(s, axis=-1)
    return lambda s: logsumexp(s, axis=-1)


def _check_pair(x1, x2):
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    if x1.shape != x2.shape or x1.ndim == 0 or x1.shape[-1] == 0:
        raise InvalidInputError(f"pair shapes differ or are empty: {x1.shape} vs {x2.shape}")
    if not (np.all(np.isfinite(x1)) and np.all(np.isfinite(x2))):
        raise InvalidInputError("transform inputs must be finite")
    return x1, x2


def transform_pair(x1, x2, mode: str = "positive", beta: float | None = None):
    """Return ``(T(x1, x2), D(x1, x2))`` acting on the last axis.

    ``mode`` is ``"positive"`` (log-sum-exp), ``"zero"`` (max-plus) or
    ``"beta"`` (``(1/beta) * positive(beta*x1, beta*x2)``).
    """
    x1, x2 = _check_pair(x1, x2)
    if mode == "beta":
        if beta is None or not beta > 0 or not np.isfinite(beta):
            raise InvalidInputError(f"beta must be a positive finite number, got {beta!r}")
        t, d = transform_pair(beta * x1, beta * x2, "positive")
        return t / beta, d / beta
    if mode not in ("positive", "zero"):
        raise InvalidInputError(f"unknown mode {mode!r}")
    reduce = _reducer(mode)
    y = np.roll(x2, -1, axis=-1) - x1
    closed = reduce(_offset_sums(y, closed=True))
    half = reduce(_offset_sums(y, closed=False))
    t = np.roll(x1, 1, axis=-1) + np.roll(closed, 1, axis=-1) - closed
    d = np.roll(x2, -1, axis=-1) + half - np.roll(half, 1, axis=-1)
    return t, d


def frak_pair(x1, x2, mode: str = "positive"):
    """Unshifted forms ``(frak_T(x1, x2), frak_D(x1, x2))`` built from ``x2 - x1``."""
    x1, x2 = _check_pair(x1, x2)
    reduce = _reducer(mode)
    z = x2 - x1
    closed = reduce(_offset_sums(z, closed=True))
    half = reduce(_offset_sums(z, closed=False))
    t = x1 + closed - np.roll(closed, -1, axis=-1)
    d = x2 + half - np.roll(half, 1, axis=-1)
    return t, d


def apply_pk_array(cols, k: int, lo: int = 0, mode: str = "positive", beta: float | None = None):
    """Apply the operator at column ``k`` to an array of shape ``(..., num_columns, N)``.

    Column ``c`` lives at index ``c - lo`` of the second-to-last axis.
    Returns a new array; the input is not modified.
    """
    cols = np.asarray(cols, dtype=float)
    idx = k - lo
    if idx < 0 or idx + 1 >= cols.shape[-2]:
        raise OutOfWindowError(
            f"operator at {k} needs columns {k}, {k + 1} inside [{lo}, {lo + cols.shape[-2] - 1}]")
    t, d = transform_pair(cols[..., idx + 1, :], cols[..., idx, :], mode, beta)
    out = cols.copy()
    out[..., idx, :] = t
    out[..., idx + 1, :] = d
    return out


def braid_components(w0, w1, w2, mode: str = "positive", beta: float | None = None):
    """The three entrywise equalities behind the braid relation, for columns ``w0, w1, w2``.

    Returns ``[(lhs, rhs), ...]``; each pair must agree for the relation
    at the column of ``w0`` to hold. The last one is the nested-D identity.
    """
    def T(a, b):
        return transform_pair(a, b, mode, beta)[0]

    def D(a, b):
        return transform_pair(a, b, mode, beta)[1]

    d10, t10 = D(w1, w0), T(w1, w0)
    t21, d21 = T(w2, w1), D(w2, w1)
    left = T(w2, d10)
    right = D(t21, w0)
    return [
        (T(left, t10), T(t21, w0)),
        (D(left, t10), T(d21, right)),
        (D(w2, d10), D(d21, right)),
    ]


# value-level transforms ----------------------------------------------------

def _same_period(X1: PeriodicVector, X2: PeriodicVector):
    if X1.period != X2.period:
        raise InvalidInputError(f"periods differ: {X1.period} vs {X2.period}")


def pitman_T(X1: PeriodicVector, X2: PeriodicVector) -> PeriodicVector:
    _same_period(X1, X2)
    return PeriodicVector(transform_pair(X1.entries, X2.entries)[0])


def pitman_D(X1: PeriodicVector, X2: PeriodicVector) -> PeriodicVector:
    _same_period(X1, X2)
    return PeriodicVector(transform_pair(X1.entries, X2.entries)[1])


def zt_T(X1: PeriodicVector, X2: PeriodicVector) -> PeriodicVector:
    _same_period(X1, X2)
    return PeriodicVector(transform_pair(X1.entries, X2.entries, "zero")[0])


def zt_D(X1: PeriodicVector, X2: PeriodicVector) -> PeriodicVector:
    _same_period(X1, X2)
    return PeriodicVector(transform_pair(X1.entries, X2.entries, "zero")[1])


def _pair_map(pair: VectorPair, mode: str, beta: float | None = None) -> VectorPair:
    # inputs enter T and D in reversed order
    t, d = transform_pair(pair.second.entries, pair.first.entries, mode, beta)
    return VectorPair(PeriodicVector(t), PeriodicVector(d))


def pitman_P(pair: VectorPair) -> VectorPair:
    """``(W1, W2) -> (T(W2, W1), D(W2, W1))``."""
    return _pair_map(pair, "positive")


def zt_P(pair: VectorPair) -> VectorPair:
    return _pair_map(pair, "zero")


def beta_scaled_P(pair: VectorPair, beta: float) -> VectorPair:
    """``(1/beta) P(beta W1, beta W2)``, evaluated without overflow."""
    return _pair_map(pair, "beta", beta)


def frak_T(X1: PeriodicVector, X2: PeriodicVector) -> PeriodicVector:
    _same_period(X1, X2)
    return PeriodicVector(frak_pair(X1.entries, X2.entries)[0])


def frak_D(X1: PeriodicVector, X2: PeriodicVector) -> PeriodicVector:
    _same_period(X1, X2)
    return PeriodicVector(frak_pair(X1.entries, X2.entries)[1])


def apply_Pk(seq: ColumnSequence, k: int, mode: str = "positive", beta: float | None = None) -> ColumnSequence:
    """Replace columns ``k, k+1`` by ``T(W_{k+1}, W_k), D(W_{k+1}, W_k)``."""
    if k not in seq or k + 1 not in seq:
        raise OutOfWindowError(f"operator at {k} needs columns {k}, {k + 1} inside {seq.window}")
    t, d = transform_pair(seq[k + 1].entries, seq[k].entries, mode, beta)
    return seq.replace({k: PeriodicVector(t), k + 1: PeriodicVector(d)})


def jacobian_abs_det(pair: VectorPair, h: float = 1e-5) -> float:
    """Central-difference estimate of |det J| for ``(W1, W2) -> P(W1, W2)``."""
    if not h > 0:
        raise InvalidInputError(f"step must be positive, got {h!r}")
    n = pair.period
    base = np.concatenate([pair.first.entries, pair.second.entries])

    def f(v):
        t, d = transform_pair(v[n:], v[:n])
        return np.concatenate([t, d])

    jac = np.empty((2 * n, 2 * n))
    for col in range(2 * n):
        step = np.zeros(2 * n)
        step[col] = h
        jac[:, col] = (f(base + step) - f(base - step)) / (2 * h)
    with np.errstate(all="ignore"):
        det = abs(float(np.linalg.det(jac)))
    if not np.isfinite(det) or det == 0.0:
        raise NumericFailureError(f"Jacobian determinant is {det!r}")
    return det
