"""Surface models to and from JSON, with rationals stored as ``"p/q"`` strings."""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .model import Curve, SurfaceModel


def rational_str(x) -> str:
    return str(Fraction(x))


def parse_rational(x: Any) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise ValueError(f"expected a rational as an integer or 'p/q' string, got {x!r}")
    return Fraction(x)


def _vector(xs) -> tuple[Fraction, ...]:
    return tuple(parse_rational(x) for x in xs)


def model_to_dict(m: SurfaceModel) -> dict:
    d0, d1 = m.polarization
    out = {
        "id": m.id,
        "basis": list(m.basis),
        "gram": [[rational_str(x) for x in row] for row in m.gram],
        "curves": [{"label": c.label, "coords": [rational_str(x) for x in c.coords]} for c in m.curves],
        "polarization": {"constant": [rational_str(x) for x in d0], "slope": [rational_str(x) for x in d1]},
        "a_interval": [rational_str(x) for x in m.a_interval],
        "flag_priority": list(m.flag_priority),
        "description": m.description,
        "citation": m.citation,
    }
    if m.exceptional is not None:
        out["exceptional"] = m.exceptional
    return out


def model_from_dict(d: dict) -> SurfaceModel:
    try:
        basis = tuple(d["basis"])
        pol = d["polarization"]
        lo, hi = _vector(d["a_interval"])
        return SurfaceModel(
            id=d.get("id", "user"),
            basis=basis,
            gram=tuple(_vector(row) for row in d["gram"]),
            curves=tuple(Curve(c["label"], _vector(c["coords"])) for c in d["curves"]),
            polarization=(_vector(pol["constant"]), _vector(pol["slope"])),
            a_interval=(lo, hi),
            exceptional=d.get("exceptional"),
            flag_priority=tuple(d.get("flag_priority", ())),
            description=d.get("description", ""),
            citation=d.get("citation", ""),
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed surface model: {exc}") from exc


def dumps_model(m: SurfaceModel) -> str:
    return json.dumps(model_to_dict(m), indent=2)


def loads_model(text: str) -> SurfaceModel:
    return model_from_dict(json.loads(text))
