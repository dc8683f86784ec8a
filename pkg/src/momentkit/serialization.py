"""Moment-sequence interchange files (JSON).

Schema: ``dimension``, ``max_degree``, ``mode`` ("rational" | "float:<bits>"),
``support_hint``, ``entries`` as a list of {"alpha": [..], "value": "..."},
plus an optional ``meta`` block.  Rational values are exact "p/q" strings;
float values are hex-float strings, which round-trip bit-exactly at the
declared precision (decimal strings are also accepted on input).
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .errors import InvalidParameter
from .moments import (
    ConeSupport,
    CurveSupport,
    FullSpace,
    MomentSequence,
    NonnegativeOrthant,
)
from .polynomials import multi_indices
from .scalars import FloatMode, Mode, RationalMode, mode_from_string, mode_to_string


def support_to_json(support) -> dict:
    if isinstance(support, FullSpace):
        return {"kind": "full_space"}
    if isinstance(support, NonnegativeOrthant):
        return {"kind": "nonnegative_orthant"}
    if isinstance(support, ConeSupport):
        return {"kind": "cone",
                "generators": [[str(Fraction(c)) for c in g] for g in support.generators]}
    if isinstance(support, CurveSupport):
        return {"kind": "curve", "curve_id": support.curve_id}
    raise InvalidParameter(f"unknown support {support!r}")


def support_from_json(doc: dict):
    kind = doc.get("kind", "full_space")
    if kind == "full_space":
        return FullSpace()
    if kind == "nonnegative_orthant":
        return NonnegativeOrthant()
    if kind == "cone":
        return ConeSupport(tuple(tuple(Fraction(c) for c in g)
                                 for g in doc["generators"]))
    if kind == "curve":
        return CurveSupport(doc["curve_id"])
    raise InvalidParameter(f"unknown support kind {kind!r}")


def sequence_to_json(seq: MomentSequence) -> str:
    mode = seq.mode
    entries = []
    for alpha in multi_indices(seq.dimension, seq.max_degree):
        entries.append({"alpha": list(alpha),
                        "value": mode.to_string(seq.entries[alpha])})
    doc = {
        "dimension": seq.dimension,
        "max_degree": seq.max_degree,
        "mode": mode_to_string(mode),
        "support_hint": support_to_json(seq.support),
        "entries": entries,
        "meta": {k: v for k, v in seq.meta.items()},
    }
    return json.dumps(doc, indent=2, sort_keys=True)


def sequence_from_json(text: str) -> MomentSequence:
    doc = json.loads(text)
    mode = mode_from_string(doc["mode"])
    entries = {}
    for item in doc["entries"]:
        entries[tuple(int(e) for e in item["alpha"])] = mode.from_string(item["value"])
    return MomentSequence(
        dimension=int(doc["dimension"]),
        max_degree=int(doc["max_degree"]),
        mode=mode,
        entries=entries,
        support=support_from_json(doc.get("support_hint", {})),
        meta=doc.get("meta", {}),
    )


def save_moment_sequence(seq: MomentSequence, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(sequence_to_json(seq))


def load_moment_sequence(path: str) -> MomentSequence:
    with open(path) as fh:
        return sequence_from_json(fh.read())


def format_value(mode: Mode, v: Any) -> dict:
    """Report rendering: exact string plus a readable decimal."""
    if v is None:
        return {"value": None}
    if isinstance(mode, RationalMode) and isinstance(v, (int, Fraction)):
        return {"rational": mode.to_string(v), "decimal": _decimal(mode, v)}
    if isinstance(mode, FloatMode) and mode.is_value(v):
        return {"hex": mode.to_string(v), "decimal": _decimal(mode, v)}
    return {"value": str(v)}


def _decimal(mode: Mode, v) -> str:
    f = mode.to_float(v)
    return repr(f)
