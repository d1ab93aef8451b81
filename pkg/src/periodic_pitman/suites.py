"""Verification suites: seeded batches of checks producing sortable, serializable records.

Each check record carries a tag, a digest of the inputs it was computed on,
the measured value (a deviation, or a p-value for statistical checks), the
threshold and whether it passed. Reports are deterministic functions of
the run configuration and seed; records are sorted by ``(tag, digest)``.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from . import __version__
from .errors import InvalidInputError, ResourceLimitError
from .lattice import (LatticePoint, MultiPathSpec, PeriodicField, count_paths, invariance_harness,
                      lpp_dp, multipath_partition, partition_dp, psi_check)
from .matrices import (IndexWindow, build_H, cancellation_probe, check_EH_inverse,
                       check_H_factorization, tri_product)
from .periodic import (PeriodicVector, VectorPair, braid_components, frak_pair, jacobian_abs_det,
                       transform_pair, apply_pk_array)
from .perms import from_cycles
from .stochastic import FAMILIES, MCConfig, ParamField, burke_mc_test, permutation_invariance_mc

__all__ = [
    "SUITES", "DEFAULT_TOLERANCES", "RunConfig", "CheckRecord", "SuiteReport", "run_suite",
    "random_invariance_instance", "pair_relative", "SUITE_RUNNERS",
]

SUITES = ("algebra", "matrix", "invariance", "braid", "zerotemp", "burke", "permute")
DEFAULT_TOLERANCES = {"exact": 1e-10, "chain": 1e-9, "alpha": 1e-3, "jacobian": 1e-5}
HARD_CAPS = {"N": 8, "window": 32, "k": 3, "path_cap": 10**6, "samples": 10**7, "trials": 10**5}


@dataclass
class RunConfig:
    suite: str = "all"
    seed: int = 0
    samples: int = 100_000
    N: int = 4
    window: int = 32
    k: int = 3
    path_cap: int = 10**6
    trials: int = 200
    streams: int = 4
    families: tuple[str, ...] = FAMILIES
    tolerances: dict = field(default_factory=dict)
    out: str | None = None
    format: str = "json"

    def validate(self) -> "RunConfig":
        if self.suite not in SUITES + ("all",):
            raise InvalidInputError(f"suite: unknown suite {self.suite!r}")
        for name in ("N", "window", "k", "path_cap", "trials", "streams"):
            if not isinstance(getattr(self, name), int) or getattr(self, name) < 1:
                raise InvalidInputError(f"{name}: must be a positive integer")
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
            raise InvalidInputError("seed: must be an integer in [0, 2^64)")
        if not isinstance(self.samples, int) or self.samples < 100:
            raise InvalidInputError("samples: must be an integer >= 100")
        if self.format not in ("json", "csv"):
            raise InvalidInputError(f"format: expected json or csv, got {self.format!r}")
        self.families = tuple(self.families)
        for fam in self.families:
            if fam not in FAMILIES:
                raise InvalidInputError(f"families: unknown family {fam!r}")
        for tag, val in self.tolerances.items():
            if isinstance(val, bool) or not isinstance(val, (int, float)) or not val > 0:
                raise InvalidInputError(f"tolerances: {tag} must be positive")
        for name, cap in HARD_CAPS.items():
            if getattr(self, name) > cap:
                raise ResourceLimitError(f"{name}={getattr(self, name)} exceeds the cap {cap}")
        return self

    def tol(self, tag: str, category: str) -> float:
        if tag in self.tolerances:
            return float(self.tolerances[tag])
        return float(self.tolerances.get(category, DEFAULT_TOLERANCES[category]))

    @classmethod
    def from_dict(cls, doc: dict) -> "RunConfig":
        if not isinstance(doc, dict):
            raise InvalidInputError("config: expected a JSON object")
        known = {f.name for f in fields(cls)}
        for key in doc:
            if key not in known:
                raise InvalidInputError(f"{key}: unknown config field")
        return cls(**doc).validate()

    def public(self) -> dict:
        out = asdict(self)
        out.pop("out")
        out["families"] = list(self.families)
        return out


@dataclass
class CheckRecord:
    tag: str
    digest: str
    value: float
    threshold: float
    relation: str = "<="  # "<=": deviation at most threshold; ">=" / "<": value on that side of it
    detail: str = ""

    @property
    def passed(self) -> bool:
        if not math.isfinite(self.value):
            return False
        if self.relation == "<=":
            return self.value <= self.threshold
        if self.relation == ">=":
            return self.value >= self.threshold
        return self.value < self.threshold

    def to_dict(self) -> dict:
        return {"tag": self.tag, "digest": self.digest, "value": self.value, "threshold": self.threshold,
                "relation": self.relation, "passed": self.passed, "detail": self.detail}


@dataclass
class SuiteReport:
    suite: str
    seed: int
    records: list[CheckRecord]
    config: dict
    version: str = __version__

    def __post_init__(self):
        self.records = sorted(self.records, key=lambda r: (r.tag, r.digest))

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if not r.passed]

    def to_json(self) -> str:
        doc = {"suite": self.suite, "version": self.version, "seed": self.seed, "passed": self.passed,
               "config": self.config, "records": [r.to_dict() for r in self.records]}
        return json.dumps(doc, indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["tag", "digest", "value", "threshold", "relation", "passed", "detail"])
        for r in self.records:
            writer.writerow([r.tag, r.digest, repr(r.value), repr(r.threshold), r.relation, r.passed, r.detail])
        return buf.getvalue()

    def render(self, fmt: str) -> str:
        return self.to_json() if fmt == "json" else self.to_csv()


# helpers ------------------------------------------------------------------

def _digest(*parts) -> str:
    h = hashlib.sha256()
    for p in parts:
        if isinstance(p, np.ndarray):
            h.update(str(p.shape).encode())
            h.update(np.ascontiguousarray(p, dtype=float).tobytes())
        else:
            h.update(repr(p).encode())
    return h.hexdigest()[:16]


def _rng(seed: int, suite: str) -> np.random.Generator:
    key = SUITES.index(suite)
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy=seed, spawn_key=(key,))))


def pair_relative(a, b) -> float:
    """Max of ``|a - b| / max(1, |a|, |b|)``."""
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b) / np.maximum(1.0, np.maximum(np.abs(a), np.abs(b)))))


def _batch_counts(cfg: RunConfig, n_max: int) -> list[tuple[int, int]]:
    """Spread ``cfg.trials`` random draws over ``N = 1..n_max``."""
    per = max(1, math.ceil(cfg.trials / n_max))
    return [(n, per) for n in range(1, n_max + 1)]


# algebra -----------------------------------------------------------------

def algebra_checks(cfg: RunConfig, rng: np.random.Generator) -> list[CheckRecord]:
    out = []
    exact = lambda tag: cfg.tol(tag, "exact")  # noqa: E731
    for n, count in _batch_counts(cfg, cfg.N):
        w = rng.uniform(-10, 10, (count, 2, n))
        w1, w2 = w[:, 0], w[:, 1]
        dg = _digest(w)
        t, d = transform_pair(w2, w1)
        t2, d2 = transform_pair(d, t)
        inv = float(np.max(np.abs(np.stack([t2, d2], 1) - w)))
        out.append(CheckRecord("involution", dg, inv, exact("involution"), detail=f"N={n}"))

        wz = rng.uniform(0, 10, (count, 2, n))
        tz, dz = transform_pair(wz[:, 1], wz[:, 0], "zero")
        tz2, dz2 = transform_pair(dz, tz, "zero")
        inv_z = float(np.max(np.abs(np.stack([tz2, dz2], 1) - wz)))
        out.append(CheckRecord("involution-zero", _digest(wz), inv_z, exact("involution-zero"), detail=f"N={n}"))

        x1, x2 = w1, w2
        t, d = transform_pair(x1, x2)
        s_dev = max(pair_relative(t.sum(-1), x1.sum(-1)), pair_relative(d.sum(-1), x2.sum(-1)))
        out.append(CheckRecord("period-total", dg, s_dev, exact("period-total"), detail=f"N={n}"))
        out.append(CheckRecord("dt-sum", dg, pair_relative(t + d, x1 + x2), exact("dt-sum"), detail=f"N={n}"))
        lhs = np.exp(-d) + np.exp(-np.roll(t, -1, -1))
        rhs = np.exp(-x1) + np.exp(-np.roll(x2, -1, -1))
        out.append(CheckRecord("dt-exp", dg, float(np.max(np.abs(lhs - rhs) / rhs)), exact("dt-exp"),
                               detail=f"N={n}"))
        ts, ds = transform_pair(np.roll(x1, -1, -1), np.roll(x2, -1, -1))
        shift = max(pair_relative(ts, np.roll(t, -1, -1)), pair_relative(ds, np.roll(d, -1, -1)))
        out.append(CheckRecord("shift", dg, shift, exact("shift"), detail=f"N={n}"))
        ft, fd = frak_pair(x1, np.roll(x2, -1, -1))
        frak = max(pair_relative(d, fd), pair_relative(t, np.roll(ft, 1, -1)))
        out.append(CheckRecord("frak-dictionary", dg, frak, exact("frak-dictionary"), detail=f"N={n}"))

    jac_tol = cfg.tol("jacobian", "jacobian")
    for n, count in _batch_counts(cfg, min(cfg.N, 4)):
        pts = rng.uniform(-5, 5, (min(count, 50), 2, n))
        devs = [abs(jacobian_abs_det(VectorPair(PeriodicVector(p[0]), PeriodicVector(p[1]))) - 1) for p in pts]
        out.append(CheckRecord("jacobian", _digest(pts), float(max(devs)), jac_tol, detail=f"N={n}"))
    return out


# matrix -----------------------------------------------------------------

def matrix_checks(cfg: RunConfig, rng: np.random.Generator) -> list[CheckRecord]:
    out = []
    exact = lambda tag: cfg.tol(tag, "exact")  # noqa: E731
    sizes = sorted({2, 4, 8, 16, cfg.window} & set(range(1, cfg.window + 1)))
    for size in sizes:
        lo = int(rng.integers(-5, 6))
        win = IndexWindow(lo, lo + size - 1)
        x = rng.uniform(-2, 2, size)
        res = check_EH_inverse(x, win)
        out.append(CheckRecord("eh-inverse", _digest(x, lo), res["interior"], exact("eh-inverse"),
                               detail=f"window={size}"))
        n = int(rng.integers(1, cfg.N + 1))
        w = rng.uniform(-2, 2, (2, n))
        fac = check_H_factorization(PeriodicVector(w[0]), PeriodicVector(w[1]), win)
        out.append(CheckRecord("h-factorization", _digest(w, lo, size), fac["H_relative"],
                               exact("h-factorization"), detail=f"window={size} N={n}"))
        out.append(CheckRecord("e-factorization", _digest(w, lo, size), fac["E_relative"],
                               exact("e-factorization"), detail=f"window={size} N={n}"))

    for _ in range(max(1, min(cfg.trials, 20))):
        n = int(rng.integers(1, cfg.N + 1))
        ncols = int(rng.integers(1, 5))
        rows = int(rng.integers(1, min(cfg.window, 8) + 1))
        data = rng.uniform(-2, 2, (ncols, n))
        fld = PeriodicField.from_array(1, data)
        win = IndexWindow(1, rows)
        prod = tri_product(*[build_H(fld.columns[c], win) for c in range(1, ncols + 1)])
        dev = 0.0
        for b in range(1, rows + 1):
            for d in range(b, rows + 1):
                log_z = partition_dp(fld, (1, b), (ncols, d))
                dev = max(dev, abs(math.expm1(math.log(prod[b, d]) - log_z)))
        out.append(CheckRecord("h-product-vs-dp", _digest(data, rows), dev, exact("h-product-vs-dp"),
                               detail=f"cols={ncols} rows={rows} N={n}"))

    # equal period totals do not force equal H products
    y1, y1p, y2 = PeriodicVector([1, -1]), PeriodicVector([-1, 1]), PeriodicVector([0, 0])
    probe = cancellation_probe(y1, y2, y1p, y2)
    out.append(CheckRecord("non-cancellation", _digest("probe", 1, -1), probe["relative"], 1e-6, ">=",
                           detail="distinct pairs with equal totals"))
    same = cancellation_probe(y1, y2, y1, y2)
    out.append(CheckRecord("cancellation-identity", _digest("probe", 1, 1), same["relative"],
                           exact("cancellation-identity")))
    return out


# invariance --------------------------------------------------------------

def _random_spec(rng, lo, hi, n, k, bad_u, bad_v, row_max):
    for _ in range(50):
        cols_u = [c for c in range(lo, hi + 1) if c not in bad_u]
        cols_v = [c for c in range(lo, hi + 1) if c not in bad_v]
        if not cols_u or not cols_v:
            return None
        U = sorted({LatticePoint(int(rng.choice(cols_u)), int(rng.integers(1, row_max + 1))) for _ in range(k)},
                   key=lambda p: (p.row - p.col, p.col))
        V = sorted({LatticePoint(int(rng.choice(cols_v)), int(rng.integers(1, row_max + 1))) for _ in range(k)},
                   key=lambda p: (p.row - p.col, p.col))
        if len(U) != k or len(V) != k:
            continue
        if any(v.col < u.col or v.row < u.row for u, v in zip(U, V)):
            continue
        spec = MultiPathSpec(tuple(U), tuple(V))
        if k == 1 or psi_check(spec):
            return spec
    return None


def random_invariance_instance(rng: np.random.Generator, max_n: int = 4, max_cols: int = 8,
                               max_ops: int = 5, max_k: int = 3, scale: float = 1.0):
    """A random field, operator chain and endpoint specs compatible with that chain.

    Weights are uniform on ``[-scale, scale]``. Larger scales make the
    determinant route lose accuracy (roughly machine epsilon times the ratio
    of all to non-intersecting path systems), so keep ``scale`` near 1 when
    comparing it against enumeration.

    Returns ``(field, ops, specs)``. Every spec's initial columns avoid
    ``k + 1`` and its end columns avoid ``k`` for every operator ``k``;
    multi-path specs satisfy the unique-pairing condition.
    """
    n = int(rng.integers(1, max_n + 1))
    ncols = int(rng.integers(2, max_cols + 1))
    lo = int(rng.integers(-3, 4))
    hi = lo + ncols - 1
    fld = PeriodicField.from_array(lo, rng.uniform(-scale, scale, (ncols, n)))
    ops = [int(k) for k in rng.integers(lo, hi, size=int(rng.integers(1, max_ops + 1)))]
    bad_u = {k + 1 for k in ops}
    bad_v = set(ops)
    row_max = min(2 * n + 2, 6)
    specs = []
    for k in range(1, max_k + 1):
        spec = _random_spec(rng, lo, hi, n, k, bad_u, bad_v, row_max)
        if spec is not None:
            specs.append(spec)
    if not specs:
        # an operator-free chain always leaves room for a single path
        ops = []
        specs = [MultiPathSpec.single((lo, 1), (hi, row_max))]
    return fld, ops, specs


def invariance_checks(cfg: RunConfig, rng: np.random.Generator) -> list[CheckRecord]:
    out = []
    chain = cfg.tol("invariance", "chain")
    chain_z = cfg.tol("invariance-zero", "chain")
    lgv_tol = cfg.tol("lgv-vs-enumeration", "exact")
    for _ in range(cfg.trials):
        fld, ops, specs = random_invariance_instance(rng, min(cfg.N, 4), min(cfg.window, 8), 5, cfg.k)
        dg = _digest(fld.columns.as_array(), fld.window, ops, [(s.U, s.V) for s in specs])
        detail = f"ops={ops} k={[s.k for s in specs]}"
        pos = invariance_harness(fld, specs, ops, mode="positive")
        out.append(CheckRecord("invariance", dg, pos["max_relative"], chain, detail=detail))
        zero = invariance_harness(fld, specs, ops, mode="zero")
        out.append(CheckRecord("invariance-zero", dg, zero["max_relative"], chain_z, detail=detail))
        lgv_dev = 0.0
        for spec in specs:
            if spec.k > 1:
                a = multipath_partition(fld, spec, "enumerate", cap=cfg.path_cap)
                b = multipath_partition(fld, spec, "lgv")
                lgv_dev = max(lgv_dev, abs(math.expm1(b - a)))
        out.append(CheckRecord("lgv-vs-enumeration", dg, lgv_dev, lgv_tol, detail=detail))
    return out


# braid -------------------------------------------------------------------

def braid_checks(cfg: RunConfig, rng: np.random.Generator) -> list[CheckRecord]:
    out = []
    for n, count in _batch_counts(cfg, min(cfg.N, 6)):
        w = rng.uniform(-10, 10, (count, 3, n))
        dg = _digest(w)
        for mode, suffix in (("positive", ""), ("zero", "-zero")):
            comps = braid_components(w[:, 0], w[:, 1], w[:, 2], mode)
            for i, (lhs, rhs) in enumerate(comps, start=1):
                tag = f"braid-{i}{suffix}"
                out.append(CheckRecord(tag, dg, pair_relative(lhs, rhs), cfg.tol(tag, "chain"), detail=f"N={n}"))
            a = apply_pk_array(apply_pk_array(apply_pk_array(w, 0, 0, mode), 1, 0, mode), 0, 0, mode)
            b = apply_pk_array(apply_pk_array(apply_pk_array(w, 1, 0, mode), 0, 0, mode), 1, 0, mode)
            tag = f"braid{suffix}"
            out.append(CheckRecord(tag, dg, pair_relative(a, b), cfg.tol(tag, "chain"), detail=f"N={n}"))
    return out


# zero temperature -----------------------------------------------------------

BETAS = (1.0, 10.0, 1e2, 1e3, 1e4, 1e5, 1e6)


def beta_gap(w1, w2, beta: float) -> np.ndarray:
    """``max |(1/beta) P(beta w) - P_zero(w)|`` per batch entry, inputs ``(..., N)``."""
    tb, db = transform_pair(w2, w1, "beta", beta)
    tz, dz = transform_pair(w2, w1, "zero")
    return np.maximum(np.max(np.abs(tb - tz), -1), np.max(np.abs(db - dz), -1))


def beta_bound(n: int, beta: float, scale: float) -> float:
    # log(N)/beta plus room for the rounding of (beta*x)/beta
    return math.log(n) / beta + 1e-12 * max(1.0, scale)


def zerotemp_checks(cfg: RunConfig, rng: np.random.Generator) -> list[CheckRecord]:
    out = []
    for n, count in _batch_counts(cfg, cfg.N):
        w = rng.uniform(-10, 10, (count, 2, n))
        for beta in BETAS:
            gap = float(np.max(beta_gap(w[:, 0], w[:, 1], beta)))
            out.append(CheckRecord("beta-bound", _digest(w, beta), gap, beta_bound(n, beta, 10.0),
                                   detail=f"N={n} beta={beta:g}"))
    for _ in range(max(1, min(cfg.trials, 40))):
        n = int(rng.integers(1, cfg.N + 1))
        ncols = int(rng.integers(1, 6))
        rows = int(rng.integers(1, 6))
        data = rng.uniform(-3, 3, (ncols, n))
        fld = PeriodicField.from_array(1, data)
        g = lpp_dp(fld, (1, 1), (ncols, rows))
        paths = count_paths((1, 1), (ncols, rows))
        worst = 0.0
        for beta in BETAS:
            gap = partition_dp(fld, (1, 1), (ncols, rows), beta) / beta - g
            slack = 1e-12 * max(1.0, abs(g))
            worst = max(worst, -gap - slack, gap - math.log(paths) / beta - slack, 0.0)
        out.append(CheckRecord("free-energy-sandwich", _digest(data, rows), worst,
                               cfg.tol("free-energy-sandwich", "exact"), detail=f"paths={paths}"))
    for _ in range(max(1, cfg.trials // 4)):
        fld, ops, specs = random_invariance_instance(rng, min(cfg.N, 4), min(cfg.window, 8), 5, cfg.k)
        res = invariance_harness(fld, specs, ops, mode="zero")
        dg = _digest(fld.columns.as_array(), fld.window, ops, [(s.U, s.V) for s in specs])
        out.append(CheckRecord("lpp-invariance", dg, res["max_relative"], cfg.tol("lpp-invariance", "chain"),
                               detail=f"ops={ops}"))
    return out


# Monte Carlo ---------------------------------------------------------------

def default_burke_params(kind: str, n: int) -> ParamField:
    b = np.linspace(0.5, 0.9, n) if n > 1 else np.array([0.7])
    if kind == "geometric":
        return ParamField((0.4, 0.8), tuple(b))
    if kind == "exponential":
        return ParamField((1.0, 2.0), tuple(b))
    return ParamField((1.5, 2.5), tuple(b))


def _mc_record(tag: str, report) -> CheckRecord:
    """Statistical verdict: the smallest p-value must reach the Bonferroni level."""
    stat = report.statistical
    level = stat[0].threshold if stat else 0.0
    return CheckRecord(tag, _digest(report.name, report.seed, report.samples), report.min_pvalue(), level, ">=",
                       detail=report.name)


def _exact_records(prefix: str, report) -> list[CheckRecord]:
    digest = _digest(report.name, report.seed, report.samples)
    return [CheckRecord(f"{prefix}/{r.name}", digest, r.value, r.threshold, detail=report.name)
            for r in report.exact]


def burke_checks(cfg: RunConfig, rng: np.random.Generator) -> list[CheckRecord]:
    out = []
    mc = MCConfig(samples=cfg.samples, seed=cfg.seed, alpha=cfg.tol("alpha", "alpha"), streams=cfg.streams)
    n = min(cfg.N, 4)
    for kind in cfg.families:
        params = default_burke_params(kind, n)
        for ordering in ("direct", "operator"):
            rep = burke_mc_test(kind, params, mc, ordering)
            out.append(_mc_record(f"burke/{kind}", rep))
            out.extend(_exact_records(f"burke/{kind}", rep))
        neg = burke_mc_test(kind, params, mc, "direct", negative_control=True)
        rec = _mc_record(f"burke-negative-control/{kind}", neg)
        rec.relation = "<"
        out.append(rec)
    return out


PERMUTE_SCENARIOS = (
    # (name, sigma, tau)
    ("sigma=(2 3)", from_cycles((2, 3)), None),
    ("sigma=(2 3 4), tau=(2 3)", from_cycles((2, 3, 4)), from_cycles((2, 3))),
)


def default_permute_setup(kind: str):
    """Parameter field on columns 1..5, rows 1..4, and endpoint specs valid for every scenario."""
    b = (0.5, 1.0, 0.7, 0.2)
    if kind == "geometric":
        params = ParamField((0.3, 0.6, 0.9, 0.5, 0.8), (0.5, 0.9, 0.7, 0.8), lo=1)
    else:
        params = ParamField((1.0, 2.0, 3.0, 1.5, 2.5), b, lo=1)
    specs = [
        MultiPathSpec.single((1, 1), (5, 4)),
        MultiPathSpec.single((1, 1), (4, 4)),
        MultiPathSpec(((1, 1), (1, 2)), ((5, 3), (4, 4))),
    ]
    return params, specs


def permute_checks(cfg: RunConfig, rng: np.random.Generator) -> list[CheckRecord]:
    out = []
    mc = MCConfig(samples=cfg.samples, seed=cfg.seed, alpha=cfg.tol("alpha", "alpha"), streams=cfg.streams)
    for kind in cfg.families:
        params, specs = default_permute_setup(kind)
        for name, sigma, tau in PERMUTE_SCENARIOS:
            rep = permutation_invariance_mc(kind, params, sigma, specs, mc, tau=tau)
            out.append(_mc_record(f"permute/{kind}", rep))
            for r in _exact_records(f"permute/{kind}", rep):
                r.threshold = cfg.tol("coupling", "chain")
                out.append(r)
    return out


SUITE_RUNNERS = {
    "algebra": algebra_checks,
    "matrix": matrix_checks,
    "invariance": invariance_checks,
    "braid": braid_checks,
    "zerotemp": zerotemp_checks,
    "burke": burke_checks,
    "permute": permute_checks,
}


def run_suite(config: RunConfig) -> SuiteReport:
    config.validate()
    names = SUITES if config.suite == "all" else (config.suite,)
    records: list[CheckRecord] = []
    for name in names:
        for rec in SUITE_RUNNERS[name](config, _rng(config.seed, name)):
            rec.tag = f"{name}/{rec.tag}"
            records.append(rec)
    return SuiteReport(config.suite, config.seed, records, config.public())
