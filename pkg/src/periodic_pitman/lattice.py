"""Up-right paths on Z^2, periodic weight fields, partition functions and last-passage times.

Points are ``(col, row)``. A path from ``(a, b)`` to ``(c, d)`` collects the
weights of every vertex it visits, endpoints included. Partition functions
are returned as logarithms; ``-inf`` stands for an empty path set.

Three independent routes compute the same single-path quantity:
``partition_dp`` (log-space recursion), ``partition_via_H`` (product of
H matrices) and ``partition_enumerate`` (sum over ``enumerate_paths``).
Multi-path values come from brute-force enumeration of vertex-disjoint
tuples or, under the unique-pairing condition, from the determinant of the
single-path matrix.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.special import logsumexp

from .errors import (InvalidInputError, NumericFailureError, OutOfWindowError,
                     PreconditionError, ResourceLimitError)
from .matrices import IndexWindow, build_H, tri_product
from .periodic import ColumnSequence, PeriodicVector, apply_Pk
from .perms import apply_perm, as_permutation

__all__ = [
    "LatticePoint", "UpRightPath", "MultiPathSpec", "PeriodicField",
    "DEFAULT_PATH_CAP", "DEFAULT_PSI_CAP",
    "enumerate_paths", "count_paths", "psi_check",
    "box_weights", "log_partition_box", "lpp_box", "lgv_logdet",
    "partition_dp", "partition_via_H", "partition_enumerate",
    "multipath_partition", "lpp_dp", "lpp_multipath",
    "path_matrix", "invariance_harness", "usigma_check", "log_relative_deviation",
]

DEFAULT_PATH_CAP = 10**6
DEFAULT_PSI_CAP = 4


@dataclass(frozen=True, order=True)
class LatticePoint:
    col: int
    row: int

    def __iter__(self):
        return iter((self.col, self.row))


def _point(p) -> LatticePoint:
    return p if isinstance(p, LatticePoint) else LatticePoint(int(p[0]), int(p[1]))


@dataclass(frozen=True)
class UpRightPath:
    points: tuple[LatticePoint, ...]

    def __post_init__(self):
        pts = tuple(_point(p) for p in self.points)
        if not pts:
            raise InvalidInputError("a path needs at least one point")
        for p, q in zip(pts, pts[1:]):
            if (q.col - p.col, q.row - p.row) not in ((1, 0), (0, 1)):
                raise InvalidInputError(f"step {p} -> {q} is not up or right")
        object.__setattr__(self, "points", pts)

    @property
    def start(self) -> LatticePoint:
        return self.points[0]

    @property
    def end(self) -> LatticePoint:
        return self.points[-1]

    def __len__(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class MultiPathSpec:
    """Initial points ``U`` and end points ``V``; path ``i`` runs from ``U[i]`` to ``V[i]``."""

    U: tuple[LatticePoint, ...]
    V: tuple[LatticePoint, ...]

    def __post_init__(self):
        U = tuple(_point(p) for p in self.U)
        V = tuple(_point(p) for p in self.V)
        if len(U) != len(V):
            raise InvalidInputError(f"|U| = {len(U)} but |V| = {len(V)}")
        if not U:
            raise InvalidInputError("a multi-path spec needs at least one pair")
        object.__setattr__(self, "U", U)
        object.__setattr__(self, "V", V)

    @classmethod
    def single(cls, start, end) -> "MultiPathSpec":
        return cls((start,), (end,))

    @property
    def k(self) -> int:
        return len(self.U)

    def pairs(self):
        return zip(self.U, self.V)

    def permuted(self, perm: Sequence[int]) -> "MultiPathSpec":
        """Spec with end points ``V_sigma = (V[perm[0]], V[perm[1]], ...)``."""
        return MultiPathSpec(self.U, tuple(self.V[p] for p in perm))


class PeriodicField:
    """Vertex weights ``W_{(col, row)}`` read from a window of periodic columns.

    The row index is reduced modulo the column period. With ``col_period``
    set, the column index is reduced too (doubly periodic weights); this
    requires the window to hold exactly ``col_period`` columns.
    """

    __slots__ = ("columns", "col_period")

    def __init__(self, columns: ColumnSequence, col_period: int | None = None):
        if col_period is not None and col_period != len(columns):
            raise InvalidInputError(
                f"a doubly periodic field needs exactly col_period={col_period} stored columns")
        self.columns = columns
        self.col_period = col_period

    @classmethod
    def from_array(cls, lo: int, array, col_period: int | None = None) -> "PeriodicField":
        return cls(ColumnSequence.from_array(lo, array), col_period)

    @property
    def period(self) -> int:
        return self.columns.period

    @property
    def window(self) -> tuple[int, int]:
        return self.columns.window

    def _column_index(self, col: int) -> int:
        lo, hi = self.columns.window
        if self.col_period is not None:
            return lo + (col - lo) % self.col_period
        if not lo <= col <= hi:
            raise OutOfWindowError(f"column {col} outside window [{lo}, {hi}]")
        return col

    def weight(self, col: int, row: int) -> float:
        return self.columns[self._column_index(col)][row]

    def box(self, start: LatticePoint, end: LatticePoint) -> np.ndarray:
        """Weights on ``[start.col, end.col] x [start.row, end.row]`` as ``(cols, rows)``."""
        return box_weights(self.columns.as_array(), self.columns.lo, start, end, self.col_period)

    def apply(self, ops: Iterable[int], mode: str = "positive", beta: float | None = None) -> "PeriodicField":
        seq = self.columns
        for k in ops:
            seq = apply_Pk(seq, k, mode, beta)
        return PeriodicField(seq, self.col_period)

    def transpose(self) -> "PeriodicField":
        """Swap the roles of columns and rows of a doubly periodic field.

        The result stores rows ``1..N`` as columns of period ``col_period``
        and satisfies ``T.weight(r, c) == self.weight(c, r)``.
        """
        if self.col_period is None:
            raise InvalidInputError("only doubly periodic fields can be transposed")
        m = self.col_period
        rows = [[self.weight(t + 1, r) for t in range(m)] for r in range(1, self.period + 1)]
        return PeriodicField(ColumnSequence.from_array(1, rows), self.period)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PeriodicField):
            return NotImplemented
        return self.columns == other.columns and self.col_period == other.col_period

    def __repr__(self) -> str:
        return f"PeriodicField({self.columns!r}, col_period={self.col_period})"


# box-level numerics, batched over leading axes -----------------------------

def box_weights(cols, lo: int, start: LatticePoint, end: LatticePoint, col_period: int | None = None) -> np.ndarray:
    """Cut the rectangle between two points out of column data ``(..., num_columns, N)``."""
    cols = np.asarray(cols, dtype=float)
    ncols, n = cols.shape[-2], cols.shape[-1]
    c_idx = np.arange(start.col, end.col + 1) - lo
    if col_period is not None:
        c_idx = c_idx % col_period
    elif c_idx.size and (c_idx.min() < 0 or c_idx.max() >= ncols):
        raise OutOfWindowError(
            f"columns [{start.col}, {end.col}] not inside window [{lo}, {lo + ncols - 1}]")
    r_idx = (np.arange(start.row, end.row + 1) - 1) % n
    return cols[..., c_idx[:, None], r_idx[None, :]]


def log_partition_box(box, beta: float = 1.0) -> np.ndarray:
    """``log Z`` from the lower-left to the upper-right corner of ``box`` ``(..., C, R)``."""
    box = beta * np.asarray(box, dtype=float)
    nc, nr = box.shape[-2], box.shape[-1]
    if nc == 0 or nr == 0:
        return np.full(box.shape[:-2], -np.inf)
    prev = None
    for c in range(nc):
        cur = np.empty(box.shape[:-2] + (nr,))
        for r in range(nr):
            left = prev[..., r] if prev is not None else None
            down = cur[..., r - 1] if r > 0 else None
            if left is None and down is None:
                acc = 0.0
            elif left is None:
                acc = down
            elif down is None:
                acc = left
            else:
                acc = np.logaddexp(left, down)
            cur[..., r] = box[..., c, r] + acc
        prev = cur
    return prev[..., nr - 1]


def lpp_box(box) -> np.ndarray:
    """Last-passage time from the lower-left to the upper-right corner of ``box``."""
    box = np.asarray(box, dtype=float)
    nc, nr = box.shape[-2], box.shape[-1]
    if nc == 0 or nr == 0:
        return np.full(box.shape[:-2], -np.inf)
    g = np.full(box.shape[:-2] + (nr,), -np.inf)
    for c in range(nc):
        for r in range(nr):
            best = g[..., r]
            if r > 0:
                best = np.maximum(best, g[..., r - 1])
            if c == 0 and r == 0:
                best = np.zeros_like(best)
            g[..., r] = box[..., c, r] + best
    return g[..., nr - 1]


def lgv_logdet(log_m) -> np.ndarray:
    """``log det exp(log_m)`` over the last two axes, factoring out each row's max.

    Raises :class:`NumericFailureError` when the determinant is not positive.
    """
    log_m = np.asarray(log_m, dtype=float)
    row_max = np.max(log_m, axis=-1, keepdims=True)
    if not np.all(np.isfinite(row_max)):
        raise NumericFailureError("a row of the path matrix has no paths")
    det = np.linalg.det(np.exp(log_m - row_max))
    if np.any(~(det > 0)):
        raise NumericFailureError("path-matrix determinant is not positive")
    return np.log(det) + np.sum(row_max[..., 0], axis=-1)


# paths ---------------------------------------------------------------------

def count_paths(start, end) -> int:
    start, end = _point(start), _point(end)
    dc, dr = end.col - start.col, end.row - start.row
    if dc < 0 or dr < 0:
        return 0
    return math.comb(dc + dr, dc)


def _iter_point_paths(start: LatticePoint, end: LatticePoint):
    dc, dr = end.col - start.col, end.row - start.row
    for right_steps in itertools.combinations(range(dc + dr), dc):
        c, r = start.col, start.row
        pts = [LatticePoint(c, r)]
        rs = set(right_steps)
        for s in range(dc + dr):
            if s in rs:
                c += 1
            else:
                r += 1
            pts.append(LatticePoint(c, r))
        yield tuple(pts)


def enumerate_paths(start, end, cap: int = DEFAULT_PATH_CAP) -> list[UpRightPath]:
    """All up-right paths from ``start`` to ``end``."""
    start, end = _point(start), _point(end)
    n = count_paths(start, end)
    if n > cap:
        raise ResourceLimitError(f"{n} paths exceed the cap of {cap}")
    if n == 0:
        return []
    return [UpRightPath(pts) for pts in _iter_point_paths(start, end)]


class _PointIndex:
    """Bit positions for lattice points, so vertex sets become Python ints."""

    def __init__(self):
        self.bits: dict[LatticePoint, int] = {}

    def mask(self, pts) -> int:
        m = 0
        for p in pts:
            b = self.bits.setdefault(p, len(self.bits))
            m |= 1 << b
        return m


def _path_masks(spec: MultiPathSpec, index: _PointIndex, cap: int, weight=None):
    """Per pair, a list of ``(mask, total_weight)`` over all its paths."""
    out = []
    total = 1
    for u, v in spec.pairs():
        n = count_paths(u, v)
        total *= max(n, 1)
        if n > cap:
            raise ResourceLimitError(f"{n} paths exceed the cap of {cap}")
        entries = []
        for pts in (_iter_point_paths(u, v) if n else ()):
            w = sum(weight(p.col, p.row) for p in pts) if weight is not None else 0.0
            entries.append((index.mask(pts), w))
        out.append(entries)
    return out


def _disjoint_systems(path_lists, first_only: bool = False):
    """Yield total weights of vertex-disjoint tuples, one path per pair."""
    k = len(path_lists)

    def rec(i, used, acc):
        if i == k:
            yield acc
            return
        for mask, w in path_lists[i]:
            if mask & used:
                continue
            yield from rec(i + 1, used | mask, acc + w)

    for total in rec(0, 0, 0.0):
        yield total
        if first_only:
            return


def _has_disjoint_system(spec: MultiPathSpec, cap: int) -> bool:
    lists = _path_masks(spec, _PointIndex(), cap)
    return any(True for _ in _disjoint_systems(lists, first_only=True))


def psi_check(spec: MultiPathSpec, cap: int = DEFAULT_PSI_CAP, path_cap: int = DEFAULT_PATH_CAP) -> bool:
    """Unique-pairing condition: disjoint multi-paths exist for the given pairing and no other."""
    if spec.k > cap:
        raise ResourceLimitError(f"psi check limited to k <= {cap}, got {spec.k}")
    if not _has_disjoint_system(spec, path_cap):
        return False
    identity = tuple(range(spec.k))
    for perm in itertools.permutations(range(spec.k)):
        if perm != identity and _has_disjoint_system(spec.permuted(perm), path_cap):
            return False
    return True


# partition functions and passage times ------------------------------------

def _check_field_columns(field: PeriodicField, *points: LatticePoint):
    if field.col_period is not None:
        return
    lo, hi = field.window
    for p in points:
        if not lo <= p.col <= hi:
            raise OutOfWindowError(f"point {tuple(p)} has column outside window [{lo}, {hi}]")


def partition_dp(field: PeriodicField, start, end, beta: float = 1.0) -> float:
    """``log Z^beta(end | start)`` by the recursion ``Z(n, m) = e^{beta W}(Z(n-1, m) + Z(n, m-1))``."""
    start, end = _point(start), _point(end)
    _check_field_columns(field, start, end)
    if not beta > 0:
        raise InvalidInputError(f"beta must be positive, got {beta!r}")
    if end.col < start.col or end.row < start.row:
        return -math.inf
    return float(log_partition_box(field.box(start, end), beta))


def partition_via_H(field: PeriodicField, start, end) -> float:
    """``log (H(W_a) ... H(W_c))_{(b, d)}`` on the row window ``[b, d]``."""
    start, end = _point(start), _point(end)
    _check_field_columns(field, start, end)
    if end.col < start.col or end.row < start.row:
        return -math.inf
    window = IndexWindow(start.row, end.row)
    mats = [build_H(_column_vector(field, c), window) for c in range(start.col, end.col + 1)]
    entry = tri_product(*mats)[start.row, end.row]
    return math.log(entry) if entry > 0 else -math.inf


def _column_vector(field: PeriodicField, col: int) -> PeriodicVector:
    return field.columns[field._column_index(col)]


def partition_enumerate(field: PeriodicField, start, end, beta: float = 1.0, cap: int = DEFAULT_PATH_CAP) -> float:
    """``log Z`` as an explicit sum over every path."""
    start, end = _point(start), _point(end)
    _check_field_columns(field, start, end)
    paths = enumerate_paths(start, end, cap)
    if not paths:
        return -math.inf
    totals = [beta * sum(field.weight(p.col, p.row) for p in path.points) for path in paths]
    return float(logsumexp(totals))


def lpp_dp(field: PeriodicField, start, end) -> float:
    """``G(end | start)``: maximal weight sum over up-right paths."""
    start, end = _point(start), _point(end)
    _check_field_columns(field, start, end)
    if end.col < start.col or end.row < start.row:
        return -math.inf
    return float(lpp_box(field.box(start, end)))


def path_matrix(field: PeriodicField, spec: MultiPathSpec, mode: str = "positive", beta: float = 1.0) -> np.ndarray:
    """``M[i, j] = log Z(V_j | U_i)`` (or ``G`` for ``mode="zero"``)."""
    out = np.empty((spec.k, spec.k))
    for i, u in enumerate(spec.U):
        for j, v in enumerate(spec.V):
            out[i, j] = lpp_dp(field, u, v) if mode == "zero" else partition_dp(field, u, v, beta)
    return out


def multipath_partition(field: PeriodicField, spec: MultiPathSpec, method: str = "enumerate",
                        beta: float = 1.0, cap: int = DEFAULT_PATH_CAP) -> float:
    """``log Z(V | U)`` summed over vertex-disjoint multi-paths.

    ``method="lgv"`` takes the determinant of the single-path matrix and is
    only valid when :func:`psi_check` holds.
    """
    _check_field_columns(field, *spec.U, *spec.V)
    if spec.k == 1:
        return partition_dp(field, spec.U[0], spec.V[0], beta)
    if method == "lgv":
        if not psi_check(spec, path_cap=cap):
            raise PreconditionError("determinant route needs the unique-pairing condition")
        return float(lgv_logdet(path_matrix(field, spec, "positive", beta)))
    if method != "enumerate":
        raise InvalidInputError(f"unknown method {method!r}")
    lists = _path_masks(spec, _PointIndex(), cap, field.weight)
    totals = [beta * t for t in _disjoint_systems(lists)]
    return float(logsumexp(totals)) if totals else -math.inf


def lpp_multipath(field: PeriodicField, spec: MultiPathSpec, cap: int = DEFAULT_PATH_CAP) -> float:
    """Maximum over vertex-disjoint multi-paths of the total weight (enumeration only)."""
    _check_field_columns(field, *spec.U, *spec.V)
    if spec.k == 1:
        return lpp_dp(field, spec.U[0], spec.V[0])
    lists = _path_masks(spec, _PointIndex(), cap, field.weight)
    return max(_disjoint_systems(lists), default=-math.inf)


# invariance under operator chains -----------------------------------------

def log_relative_deviation(a, b) -> float:
    """``|Z_a / Z_b - 1|`` for log-values, with two empty sums counted as equal."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    both_empty = np.isneginf(a) & np.isneginf(b)
    with np.errstate(invalid="ignore"):
        dev = np.abs(np.expm1(np.where(both_empty, 0.0, a - b)))
    dev = np.where(np.isnan(dev), np.inf, dev)
    return float(np.max(dev)) if dev.size else 0.0


def _abs_relative(a, b) -> float:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    both_empty = np.isneginf(a) & np.isneginf(b)
    with np.errstate(invalid="ignore"):
        diff = np.where(both_empty, 0.0, np.abs(a - b))
    scale = np.maximum(1.0, np.maximum(np.abs(np.where(both_empty, 0, a)), np.abs(np.where(both_empty, 0, b))))
    dev = np.where(np.isnan(diff), np.inf, diff / scale)
    return float(np.max(dev)) if dev.size else 0.0


def _normalize_ops(ops, mode):
    ks, modes = [], set()
    for op in ops:
        if isinstance(op, (tuple, list)):
            ks.append(int(op[0]))
            modes.add(op[1])
        else:
            ks.append(int(op))
    if len(modes) > 1 or (modes and mode is not None and modes != {mode}):
        raise InvalidInputError(f"operator chain mixes modes {sorted(modes)}")
    return ks, (modes.pop() if modes else (mode or "positive"))


def invariance_harness(field: PeriodicField, specs, ops, mode: str | None = None,
                       beta: float | None = None, multipath_method: str = "enumerate") -> dict:
    """Apply an operator chain and compare every path-matrix entry and multi-path value.

    ``ops`` is ``[k_1, k_2, ...]`` (applied in that order) or a list of
    ``(k, mode)`` pairs. Endpoints must avoid ``a = k + 1`` for initial and
    ``c = k`` for end columns. Positive mode compares ``Z`` (relative),
    zero mode compares ``G`` (absolute over ``max(1, |G|)``) and beta mode
    compares ``Z^beta`` after ``beta``-scaled operators.
    """
    if isinstance(specs, MultiPathSpec):
        specs = [specs]
    ks, mode = _normalize_ops(ops, mode)
    if mode == "beta" and beta is None:
        raise InvalidInputError("beta mode needs beta")
    for spec in specs:
        for k in ks:
            if any(u.col == k + 1 for u in spec.U) or any(v.col == k for v in spec.V):
                raise PreconditionError(f"endpoint columns of {spec} clash with operator at {k}")
        if spec.k > 1 and not psi_check(spec):
            raise PreconditionError(f"{spec} violates the unique-pairing condition")
        _check_field_columns(field, *spec.U, *spec.V)
    after_field = field.apply(ks, mode, beta)
    zbeta = beta if mode == "beta" else 1.0

    def evaluate(f):
        mats, multis = [], []
        for spec in specs:
            if mode == "zero":
                mats.append(path_matrix(f, spec, "zero"))
                multis.append(lpp_multipath(f, spec))
            else:
                mats.append(path_matrix(f, spec, "positive", zbeta))
                multis.append(multipath_partition(f, spec, multipath_method, zbeta))
        return mats, multis

    before_m, before_z = evaluate(field)
    after_m, after_z = evaluate(after_field)
    compare = _abs_relative if mode == "zero" else log_relative_deviation
    pair_dev = max((compare(a, b) for a, b in zip(after_m, before_m)), default=0.0)
    multi_dev = compare(after_z, before_z) if specs else 0.0
    return {
        "mode": mode,
        "ops": ks,
        "pair_max_relative": pair_dev,
        "multipath_max_relative": multi_dev,
        "max_relative": max(pair_dev, multi_dev),
        "before": before_z,
        "after": after_z,
        "field_after": after_field,
    }


def usigma_check(sigma: Mapping[int, int], spec: MultiPathSpec, axis: str = "column") -> bool:
    """``sigma(Z_{<x}) = Z_{<x}`` at initial points and ``sigma(Z_{>x}) = Z_{>x}`` at end points.

    ``x`` is the column coordinate (``axis="column"``) or the row coordinate.
    """
    sigma = as_permutation(sigma)
    if axis not in ("column", "row"):
        raise InvalidInputError(f"axis must be 'column' or 'row', got {axis!r}")
    coord = (lambda p: p.col) if axis == "column" else (lambda p: p.row)
    for p in spec.U:
        x = coord(p)
        if any(i < x <= apply_perm(sigma, i) for i in sigma):
            return False
    for p in spec.V:
        x = coord(p)
        if any(i > x >= apply_perm(sigma, i) for i in sigma):
            return False
    return True
