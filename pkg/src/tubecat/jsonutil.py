"""Deterministic JSON emission.

Stock json.dumps prints floats with shortest-roundtrip repr, which depends on
the value's history (e.g. -0.0 vs 0.0 survives, but 17-digit reproducibility
across platforms is what we promise in reports).  Every float goes out with 17
significant digits, always containing '.' or 'e' so it reads back as a float.
Containers are emitted in insertion order; callers build dicts
deterministically, so equal inputs give byte-identical output.
"""
from __future__ import annotations

import math

__all__ = ["format_float", "dumps_canonical"]


def format_float(x: float) -> str:
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        raise ValueError("non-finite float in JSON output: %r" % x)
    s = format(x, ".17g")
    if "." not in s and "e" not in s and "E" not in s:
        s += ".0"
    return s


def _emit(obj, out: list) -> None:
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, str):
        # stdlib escaping is fine (and deterministic) for strings
        import json

        out.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(format_float(obj))
    elif isinstance(obj, dict):
        out.append("{")
        first = True
        for k, v in obj.items():
            if not isinstance(k, str):
                raise TypeError("JSON object keys must be str, got %r" % (k,))
            if not first:
                out.append(",")
            first = False
            _emit(k, out)
            out.append(":")
            _emit(v, out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, v in enumerate(obj):
            if i:
                out.append(",")
            _emit(v, out)
        out.append("]")
    else:
        # numpy scalars and anything else with a clean Python equivalent
        if hasattr(obj, "item"):
            _emit(obj.item(), out)
        else:
            raise TypeError("cannot serialize %r" % type(obj))


def dumps_canonical(obj) -> str:
    """Serialize to a compact canonical JSON string (trailing newline included)."""
    out: list = []
    _emit(obj, out)
    return "".join(out) + "\n"
