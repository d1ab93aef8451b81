"""JSON text form of vectors, column sequences, fields, endpoint specs and parameter fields.

Every document carries a ``"type"`` key. Column data is row-major: one list
per column, holding that column's entries for rows ``1..N``. Floats go
through ``json`` (shortest round-trip repr), so parse(serialize(x)) == x.
"""

from __future__ import annotations

import json
import math

from .errors import InvalidInputError, ParseError
from .lattice import LatticePoint, MultiPathSpec, PeriodicField
from .periodic import ColumnSequence, PeriodicVector
from .stochastic import ParamField

__all__ = ["serialize_instance", "parse_instance", "to_document", "from_document"]


def to_document(obj) -> dict:
    if isinstance(obj, PeriodicVector):
        return {"type": "PeriodicVector", "period": obj.period, "entries": obj.entries.tolist()}
    if isinstance(obj, ColumnSequence):
        lo, hi = obj.window
        return {"type": "ColumnSequence", "period": obj.period, "lo": lo, "hi": hi,
                "columns": obj.as_array().tolist()}
    if isinstance(obj, PeriodicField):
        lo, hi = obj.window
        return {"type": "PeriodicField", "period": obj.period, "col_period": obj.col_period,
                "lo": lo, "hi": hi, "columns": obj.columns.as_array().tolist()}
    if isinstance(obj, MultiPathSpec):
        return {"type": "MultiPathSpec", "k": obj.k,
                "U": [[p.col, p.row] for p in obj.U], "V": [[p.col, p.row] for p in obj.V]}
    if isinstance(obj, ParamField):
        return {"type": "ParamField", "period": len(obj.b), "lo": obj.lo, "hi": obj.lo + len(obj.a) - 1,
                "a": list(obj.a), "b": list(obj.b), "lambda": obj.lam}
    raise InvalidInputError(f"cannot serialize {type(obj).__name__}")


def serialize_instance(obj) -> str:
    return json.dumps(to_document(obj), allow_nan=False)


def parse_instance(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("<document>", f"invalid JSON: {exc}") from None
    return from_document(doc)


# field readers ----------------------------------------------------------------

def _get(doc: dict, key: str):
    if key not in doc:
        raise ParseError(key, "missing")
    return doc[key]


def _int(doc: dict, key: str, minimum: int | None = None) -> int:
    val = _get(doc, key)
    if isinstance(val, bool) or not isinstance(val, int):
        raise ParseError(key, f"expected an integer, got {val!r}")
    if minimum is not None and val < minimum:
        raise ParseError(key, f"must be at least {minimum}")
    return val


def _number(val, name: str) -> float:
    if isinstance(val, bool) or not isinstance(val, (int, float)) or not math.isfinite(val):
        raise ParseError(name, f"expected a finite number, got {val!r}")
    return float(val)


def _numbers(val, name: str, length: int | None = None) -> list[float]:
    if not isinstance(val, list):
        raise ParseError(name, "expected a list")
    if length is not None and len(val) != length:
        raise ParseError(name, f"expected {length} entries, got {len(val)}")
    return [_number(v, f"{name}[{i}]") for i, v in enumerate(val)]


def _columns(doc: dict) -> ColumnSequence:
    period = _int(doc, "period", 1)
    lo = _int(doc, "lo")
    hi = _int(doc, "hi")
    cols = _get(doc, "columns")
    if not isinstance(cols, list):
        raise ParseError("columns", "expected a list of columns")
    if len(cols) != hi - lo + 1:
        raise ParseError("columns", f"window [{lo}, {hi}] needs {hi - lo + 1} columns, got {len(cols)}")
    data = [_numbers(c, f"columns[{i}]", period) for i, c in enumerate(cols)]
    return ColumnSequence(lo, [PeriodicVector(c) for c in data])


def _points(doc: dict, key: str) -> tuple[LatticePoint, ...]:
    pts = _get(doc, key)
    if not isinstance(pts, list):
        raise ParseError(key, "expected a list of [col, row] pairs")
    out = []
    for i, p in enumerate(pts):
        if (not isinstance(p, list) or len(p) != 2
                or any(isinstance(x, bool) or not isinstance(x, int) for x in p)):
            raise ParseError(f"{key}[{i}]", f"expected [col, row] integers, got {p!r}")
        out.append(LatticePoint(p[0], p[1]))
    return tuple(out)


def from_document(doc):
    if not isinstance(doc, dict):
        raise ParseError("<document>", "expected a JSON object")
    kind = _get(doc, "type")
    try:
        if kind == "PeriodicVector":
            period = _int(doc, "period", 1)
            return PeriodicVector(_numbers(_get(doc, "entries"), "entries", period))
        if kind == "ColumnSequence":
            return _columns(doc)
        if kind == "PeriodicField":
            col_period = doc.get("col_period")
            if col_period is not None:
                col_period = _int(doc, "col_period", 1)
            return PeriodicField(_columns(doc), col_period)
        if kind == "MultiPathSpec":
            U, V = _points(doc, "U"), _points(doc, "V")
            if len(U) != len(V):
                raise ParseError("V", f"|U| = {len(U)} but |V| = {len(V)}")
            if "k" in doc and _int(doc, "k") != len(U):
                raise ParseError("k", f"k = {doc['k']} but |U| = {len(U)}")
            return MultiPathSpec(U, V)
        if kind == "ParamField":
            period = _int(doc, "period", 1)
            lo, hi = _int(doc, "lo"), _int(doc, "hi")
            a = _numbers(_get(doc, "a"), "a", hi - lo + 1)
            b = _numbers(_get(doc, "b"), "b", period)
            return ParamField(tuple(a), tuple(b), _number(doc.get("lambda", 1.0), "lambda"), lo)
    except InvalidInputError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(kind), str(exc)) from None
    raise ParseError("type", f"unknown instance type {kind!r}")
