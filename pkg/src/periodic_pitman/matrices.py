"""Windowed upper-triangular realizations of the E / H matrix encoding.

The matrices live on Z x Z; we keep the block with row and column indices
in a finite window ``[lo, hi]``. Products of upper-triangular matrices only
use intermediate indices between the row and the column index, so the
windowed product is exactly the window of the infinite product.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .periodic import PeriodicVector, pitman_T, pitman_D, symbol_sum

__all__ = [
    "IndexWindow", "TriangularMatrix", "build_E", "build_H", "build_delta",
    "identity", "tri_multiply", "tri_product", "check_EH_inverse",
    "check_H_factorization", "cancellation_probe", "relative_deviation",
]


@dataclass(frozen=True)
class IndexWindow:
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise InvalidInputError(f"empty window [{self.lo}, {self.hi}]")

    @property
    def size(self) -> int:
        return self.hi - self.lo + 1

    def indices(self) -> range:
        return range(self.lo, self.hi + 1)


class TriangularMatrix:
    """Upper-triangular block of a Z x Z matrix over ``window``."""

    __slots__ = ("window", "data")

    def __init__(self, window: IndexWindow, data):
        data = np.array(data, dtype=float)
        if data.shape != (window.size, window.size):
            raise InvalidInputError(f"data shape {data.shape} does not match window size {window.size}")
        if np.any(np.tril(data, -1) != 0):
            raise InvalidInputError("entries below the diagonal must be zero")
        if not np.all(np.isfinite(data)):
            raise InvalidInputError("matrix entries must be finite")
        data.setflags(write=False)
        self.window = window
        self.data = data

    def __getitem__(self, ij) -> float:
        i, j = ij
        lo, hi = self.window.lo, self.window.hi
        if not (lo <= i <= hi and lo <= j <= hi):
            raise IndexError(f"({i}, {j}) outside window [{lo}, {hi}]")
        return float(self.data[i - lo, j - lo])

    def __repr__(self) -> str:
        return f"TriangularMatrix({self.window}, {self.data.tolist()!r})"

    def __matmul__(self, other: "TriangularMatrix") -> "TriangularMatrix":
        return tri_multiply(self, other)


def _values_on_window(x, window: IndexWindow) -> np.ndarray:
    """Values ``x_i`` for ``i`` in the window.

    A :class:`PeriodicVector` is extended periodically; any other input is
    read as a plain sequence whose first entry is ``x_lo``.
    """
    if isinstance(x, PeriodicVector):
        return np.array([x[i] for i in window.indices()])
    arr = np.asarray(x, dtype=float)
    if arr.shape != (window.size,):
        raise InvalidInputError(f"expected {window.size} values for window {window}, got shape {arr.shape}")
    return arr


def build_E(x, window: IndexWindow, negate: bool = False) -> TriangularMatrix:
    """Diagonal ``exp(+-x_i)``, ones on the superdiagonal."""
    vals = _values_on_window(x, window)
    if negate:
        vals = -vals
    data = np.diag(np.exp(vals)) + np.eye(window.size, k=1)
    return TriangularMatrix(window, data)


def build_H(x, window: IndexWindow) -> TriangularMatrix:
    """Entry ``(i, j) = exp(x_i + ... + x_j)`` for ``i <= j``."""
    vals = _values_on_window(x, window)
    prefix = np.concatenate([[0.0], np.cumsum(vals)])
    log_entries = prefix[None, 1:] - prefix[:-1, None]
    data = np.where(np.triu(np.ones((window.size, window.size), dtype=bool)), np.exp(np.triu(log_entries)), 0.0)
    return TriangularMatrix(window, data)


def build_delta(window: IndexWindow) -> TriangularMatrix:
    """``diag((-1)^(i-1))``."""
    signs = np.array([1.0 if (i - 1) % 2 == 0 else -1.0 for i in window.indices()])
    return TriangularMatrix(window, np.diag(signs))


def identity(window: IndexWindow) -> TriangularMatrix:
    return TriangularMatrix(window, np.eye(window.size))


def tri_multiply(A: TriangularMatrix, B: TriangularMatrix) -> TriangularMatrix:
    if A.window != B.window:
        raise InvalidInputError(f"window mismatch: {A.window} vs {B.window}")
    n = A.window.size
    out = np.zeros((n, n))
    for i in range(n):
        # (AB)_{ij} = sum_{r=i}^{j} A_{ir} B_{rj}
        out[i, i:] = A.data[i, i:] @ B.data[i:, i:]
    return TriangularMatrix(A.window, out)


def tri_product(*mats: TriangularMatrix) -> TriangularMatrix:
    result = mats[0]
    for m in mats[1:]:
        result = tri_multiply(result, m)
    return result


def relative_deviation(a, b) -> float:
    """Max entrywise ``|a - b| / max(|a|, |b|)``, with 0/0 read as 0."""
    a = np.asarray(a.data if isinstance(a, TriangularMatrix) else a, dtype=float)
    b = np.asarray(b.data if isinstance(b, TriangularMatrix) else b, dtype=float)
    scale = np.maximum(np.abs(a), np.abs(b))
    diff = np.abs(a - b)
    with np.errstate(invalid="ignore", divide="ignore"):
        rel = np.where(scale > 0, diff / np.where(scale > 0, scale, 1.0), 0.0)
    return float(np.max(rel))


def check_EH_inverse(x, window: IndexWindow) -> dict:
    """Deviation of ``Delta H(x) Delta E(-x)`` and ``E(-x) Delta H(x) Delta`` from the identity.

    Each entry's error is divided by ``max(1, sum_r |A_ir| |B_rj|)``, the
    size of the terms that cancel in it. ``interior`` covers rows and
    columns ``[lo, hi-1]``, ``full`` the whole window; the ``*_absolute``
    keys hold the unscaled errors.
    """
    delta = build_delta(window)
    h = build_H(x, window)
    dhd = tri_product(delta, h, delta)
    e_neg = build_E(x, window, negate=True)
    eye = np.eye(window.size)
    abs_dhd = TriangularMatrix(window, np.abs(dhd.data))
    abs_e = TriangularMatrix(window, np.abs(e_neg.data))
    errs = []
    for a, b, abs_a, abs_b in ((dhd, e_neg, abs_dhd, abs_e), (e_neg, dhd, abs_e, abs_dhd)):
        err = np.abs(tri_multiply(a, b).data - eye)
        scale = np.maximum(1.0, tri_multiply(abs_a, abs_b).data)
        errs.append((err, err / scale))
    inner = slice(0, max(window.size - 1, 1))
    return {
        "interior": float(max(np.max(r[inner, inner]) for _, r in errs)),
        "full": float(max(np.max(r) for _, r in errs)),
        "interior_absolute": float(max(np.max(e[inner, inner]) for e, _ in errs)),
        "full_absolute": float(max(np.max(e) for e, _ in errs)),
        "window": (window.lo, window.hi),
    }


def check_H_factorization(W1: PeriodicVector, W2: PeriodicVector, window: IndexWindow) -> dict:
    """Compare ``H(W1) H(W2)`` with ``H(T) H(D)`` and ``E(-W2) E(-W1)`` with ``E(-D) E(-T)``.

    Here ``T = T(W2, W1)`` and ``D = D(W2, W1)``.
    """
    if W1.period != W2.period:
        raise InvalidInputError("periods differ")
    T = pitman_T(W2, W1)
    D = pitman_D(W2, W1)
    h_lhs = tri_multiply(build_H(W1, window), build_H(W2, window))
    h_rhs = tri_multiply(build_H(T, window), build_H(D, window))
    e_lhs = tri_multiply(build_E(W2, window, negate=True), build_E(W1, window, negate=True))
    e_rhs = tri_multiply(build_E(D, window, negate=True), build_E(T, window, negate=True))
    return {
        "H_relative": relative_deviation(h_lhs, h_rhs),
        "E_relative": relative_deviation(e_lhs, e_rhs),
        "window": (window.lo, window.hi),
    }


def cancellation_probe(Y1: PeriodicVector, Y2: PeriodicVector, Y1p: PeriodicVector, Y2p: PeriodicVector,
                       window: IndexWindow | None = None, rtol: float = 1e-12) -> dict:
    """Do ``H(Y1) H(Y2)`` and ``H(Y1') H(Y2')`` agree on the window ``[1, N]``?

    Requires matching period totals ``s(Y1) = s(Y1')`` and ``s(Y2) = s(Y2')``.
    """
    periods = {Y1.period, Y2.period, Y1p.period, Y2p.period}
    if len(periods) != 1:
        raise InvalidInputError("all four vectors need the same period")
    if abs(symbol_sum(Y1) - symbol_sum(Y1p)) > 1e-9 or abs(symbol_sum(Y2) - symbol_sum(Y2p)) > 1e-9:
        raise InvalidInputError("period totals of the two pairs differ")
    if window is None:
        window = IndexWindow(1, Y1.period)
    lhs = tri_multiply(build_H(Y1, window), build_H(Y2, window))
    rhs = tri_multiply(build_H(Y1p, window), build_H(Y2p, window))
    dev = relative_deviation(lhs, rhs)
    return {"agree": dev <= rtol, "relative": dev, "window": (window.lo, window.hi)}
