"""JSON model documents and k-vector documents.

A model document looks like::

    {"dim": 3, "index": 1, "p_plus": 1,
     "rotations": [{"kind": "rational", "num": 1, "den": 3}]}

Quadratic ratios are written ``{"kind": "quadratic", "a": -1, "b": 1,
"c": 2, "D": 5}`` for (a + b*sqrt(D))/c.  Omitted counts default to 0 and
omitted angle lists to empty.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .exact_numbers import AngleRatio, QuadraticRatio, RationalRatio
from .identity_ledger import KVector
from .normal_form import GeodesicModel, NormalFormData, ValidationError, validate_model

COUNT_FIELDS = ("p_minus", "p_zero", "p_plus", "q_minus", "q_zero", "q_plus", "h_plus", "h_minus")
ANGLE_FIELDS = ("rotations", "nontrivial_pairs", "trivial_pairs")
KNOWN_FIELDS = {"dim", "index", *COUNT_FIELDS, *ANGLE_FIELDS, "name", "comment"}


class ParseError(ValueError):
    pass


def _int(doc: dict, key: str, default: int | None = None) -> int:
    if key not in doc:
        if default is None:
            raise ParseError(f"missing field {key!r}")
        return default
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"field {key!r} must be an integer, got {v!r}")
    return v


def parse_angle(entry: Any) -> AngleRatio:
    if not isinstance(entry, dict) or "kind" not in entry:
        raise ParseError(f"angle entry must be an object with 'kind', got {entry!r}")
    kind = entry["kind"]
    try:
        if kind == "rational":
            return RationalRatio(_int(entry, "num"), _int(entry, "den"))
        if kind == "quadratic":
            return QuadraticRatio(_int(entry, "a"), _int(entry, "b"), _int(entry, "c"), _int(entry, "D"))
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(f"bad angle {entry!r}: {exc}") from exc
    raise ParseError(f"unknown angle kind {kind!r}")


def dump_angle(x: AngleRatio) -> dict:
    if isinstance(x, RationalRatio):
        return {"kind": "rational", "num": x.num, "den": x.den}
    return {"kind": "quadratic", "a": x.a, "b": x.b, "c": x.c, "D": x.D}


def model_from_dict(doc: Any, validate: bool = True) -> GeodesicModel:
    if not isinstance(doc, dict):
        raise ParseError("model document must be a JSON object")
    unknown = set(doc) - KNOWN_FIELDS
    if unknown:
        raise ParseError(f"unknown fields: {sorted(unknown)}")
    dim = _int(doc, "dim")
    index = _int(doc, "index")
    counts = {k: _int(doc, k, 0) for k in COUNT_FIELDS}
    angles = {}
    for k in ANGLE_FIELDS:
        raw = doc.get(k, [])
        if not isinstance(raw, list):
            raise ParseError(f"field {k!r} must be a list")
        angles[k] = tuple(parse_angle(e) for e in raw)
    model = GeodesicModel(dim, index, NormalFormData(half_dim=dim - 1, **counts, **angles))
    if validate:
        report = validate_model(model)
        if report:
            raise ValidationError(report)
    return model


def model_to_dict(model: GeodesicModel) -> dict:
    nf = model.nf
    doc: dict[str, Any] = {"dim": model.dim_M, "index": model.initial_index}
    for k in COUNT_FIELDS:
        doc[k] = getattr(nf, k)
    for k in ANGLE_FIELDS:
        doc[k] = [dump_angle(x) for x in getattr(nf, k)]
    return doc


def _load_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc


def parse_model_file(path: str | Path) -> GeodesicModel:
    return model_from_dict(_load_json(path))


def write_model_file(model: GeodesicModel, path: str | Path) -> None:
    Path(path).write_text(json.dumps(model_to_dict(model), indent=2) + "\n")


def parse_kvector_file(path: str | Path) -> dict[int, KVector]:
    """``{"kvectors": {"1": [1], "3": {"entries": [1, 0, 0, 0], "sign": 1}}}``."""
    doc = _load_json(path)
    raw = doc.get("kvectors") if isinstance(doc, dict) else None
    if not isinstance(raw, dict):
        raise ParseError("k-vector document needs a 'kvectors' object keyed by iterate m")
    out = {}
    for key, val in raw.items():
        try:
            m = int(key)
        except ValueError as exc:
            raise ParseError(f"iterate key {key!r} is not an integer") from exc
        if isinstance(val, list):
            entries, sign = val, 1
        elif isinstance(val, dict) and isinstance(val.get("entries"), list):
            entries, sign = val["entries"], val.get("sign", 1)
        else:
            raise ParseError(f"bad k-vector for m={m}: {val!r}")
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in entries):
            raise ParseError(f"k-vector entries for m={m} must be integers")
        out[m] = KVector(tuple(entries), sign)
    return out
