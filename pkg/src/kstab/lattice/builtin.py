"""The eight built-in surface models and their one-point blowups."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .model import Curve, SurfaceModel

F = Fraction


def _diag(*entries) -> tuple[tuple[Fraction, ...], ...]:
    n = len(entries)
    return tuple(tuple(F(entries[i]) if i == j else F(0) for j in range(n)) for i in range(n))


def _vec(basis: tuple[str, ...], **coeffs) -> tuple[Fraction, ...]:
    return tuple(F(coeffs.get(b, 0)) for b in basis)


def _curves(basis, spec: dict[str, dict]) -> tuple[Curve, ...]:
    return tuple(Curve(label, _vec(basis, **c)) for label, c in spec.items())


def _blowup(base: SurfaceModel, extra: dict[str, dict], new_id: str, citation: str) -> SurfaceModel:
    """Blow up a general point: add ``E`` orthogonal to the base lattice with ``E^2 = -1``."""
    basis = base.basis + ("E",)
    n = len(base.basis)
    gram = tuple(tuple(list(r) + [F(0)]) for r in base.gram) + (tuple([F(0)] * n + [F(-1)]),)
    curves = _curves(basis, extra)
    curves += tuple(Curve(c.label, c.coords + (F(0),)) for c in base.curves)
    curves += (Curve("E", _vec(basis, E=1)),)
    d0, d1 = base.polarization
    return SurfaceModel(
        id=new_id,
        basis=basis,
        gram=gram,
        curves=curves,
        polarization=(d0 + (F(0),), d1 + (F(0),)),
        a_interval=base.a_interval,
        exceptional="E",
        flag_priority=("E",),
        description=f"one-point blowup of {base.id} at a point off every negative curve",
        citation=citation,
    )


def _dp5() -> SurfaceModel:
    basis = ("h", "e1", "e2", "e3", "e4")
    curves = {f"e{i}": {f"e{i}": 1} for i in range(1, 5)}
    for i in range(1, 5):
        for j in range(i + 1, 5):
            curves[f"l{i}{j}"] = {"h": 1, f"e{i}": -1, f"e{j}": -1}
    return SurfaceModel(
        id="dp5",
        basis=basis,
        gram=_diag(1, -1, -1, -1, -1),
        curves=_curves(basis, curves),
        polarization=(_vec(basis, e1=-1, e2=-1, e3=-1, e4=-1), _vec(basis, h=1)),
        a_interval=(F(2), F(3)),
        flag_priority=("e1", "e2", "e3", "e4", "l12", "l13", "l14", "l23", "l24", "l34"),
        description="smooth quintic del Pezzo surface, blowup of the plane in four points",
        citation="subsection:dP5-smooth",
        self_intersections=tuple((k, F(-1)) for k in curves),
    )


def _dp5_a1() -> SurfaceModel:
    basis = ("h", "e1", "e2", "e3")
    curves = {
        "e1": {"e1": 1},
        "e2": {"e2": 1},
        "e3": {"e3": 1},
        "l1": {"h": 1, "e1": -1, "e3": -1},
        "l2": {"h": 1, "e2": -1, "e3": -1},
        "l3": {"h": 1, "e3": -2},
        "l4": {"h": 1, "e1": -1, "e2": -1},
    }
    return SurfaceModel(
        id="dp5_a1",
        basis=basis,
        gram=_diag(1, -1, -1, F(-1, 2)),
        curves=_curves(basis, curves),
        polarization=(_vec(basis, e1=-1, e2=-1, e3=-2), _vec(basis, h=1)),
        a_interval=(F(2), F(3)),
        flag_priority=("e3", "e1", "e2", "l3", "l4", "l1", "l2"),
        description="quintic del Pezzo surface with one node (type A1)",
        citation="subsection:dP5-A1",
        self_intersections=(
            ("e1", F(-1)), ("e2", F(-1)), ("e3", F(-1, 2)),
            ("l1", F(-1, 2)), ("l2", F(-1, 2)), ("l3", F(-1)), ("l4", F(-1)),
        ),
    )


def _dp5_a2() -> SurfaceModel:
    basis = ("h", "e1", "e2")
    curves = {
        "e1": {"e1": 1},
        "e2": {"e2": 1},
        "l1": {"h": 1, "e2": -2},
        "l2": {"h": 1, "e1": -1, "e2": -1},
    }
    return SurfaceModel(
        id="dp5_a2",
        basis=basis,
        gram=_diag(1, -1, F(-1, 3)),
        curves=_curves(basis, curves),
        polarization=(_vec(basis, e1=-1, e2=-3), _vec(basis, h=1)),
        a_interval=(F(2), F(3)),
        flag_priority=("e2", "e1", "l1", "l2"),
        description="quintic del Pezzo surface with one singular point of type A2",
        citation="subsection:dP5-A2",
        self_intersections=(("e1", F(-1)), ("e2", F(-1, 3)), ("l1", F(-1, 3)), ("l2", F(-1, 3))),
    )


def _dp6() -> SurfaceModel:
    basis = ("h1", "h2", "e1", "e2")
    gram = (
        (F(0), F(1), F(0), F(0)),
        (F(1), F(0), F(0), F(0)),
        (F(0), F(0), F(-1), F(0)),
        (F(0), F(0), F(0), F(-1)),
    )
    curves = {
        "e1": {"e1": 1},
        "e2": {"e2": 1},
        "l1": {"h1": 1, "e1": -1},
        "l2": {"h2": 1, "e1": -1},
        "l3": {"h1": 1, "e2": -1},
        "l4": {"h2": 1, "e2": -1},
    }
    return SurfaceModel(
        id="dp6",
        basis=basis,
        gram=gram,
        curves=_curves(basis, curves),
        polarization=(_vec(basis, e1=-1, e2=-1), _vec(basis, h1=1, h2=1)),
        a_interval=(F(1), F(2)),
        flag_priority=("e1", "e2", "l1", "l2", "l3", "l4"),
        description="smooth sextic del Pezzo surface, blowup of a quadric in two points",
        citation="subsection:dP6-smooth",
        self_intersections=tuple((k, F(-1)) for k in curves),
    )


@lru_cache(maxsize=None)
def builtin_models() -> dict[str, SurfaceModel]:
    dp5, a1, a2, dp6 = _dp5(), _dp5_a1(), _dp5_a2(), _dp6()
    out = {m.id: m for m in (dp5, a1, a2, dp6)}
    out["dp5_bl"] = _blowup(
        dp5,
        {
            "c0": {"h": 2, "E": -1, "e1": -1, "e2": -1, "e3": -1, "e4": -1},
            "c1": {"h": 1, "E": -1, "e1": -1},
            "c2": {"h": 1, "E": -1, "e2": -1},
            "c3": {"h": 1, "E": -1, "e3": -1},
            "c4": {"h": 1, "E": -1, "e4": -1},
        },
        "dp5_bl",
        "lemma:dP5-general-point",
    )
    out["dp5_a1_bl"] = _blowup(
        a1,
        {
            "c0": {"h": 2, "E": -1, "e1": -1, "e2": -1, "e3": -2},
            "c1": {"h": 1, "E": -1, "e1": -1},
            "c2": {"h": 1, "E": -1, "e2": -1},
            "c3": {"h": 1, "E": -1, "e3": -1},
        },
        "dp5_a1_bl",
        "lemma:dP5-A1-general-point",
    )
    out["dp5_a2_bl"] = _blowup(
        a2,
        {
            "c0": {"h": 2, "E": -1, "e1": -1, "e2": -3},
            "c1": {"h": 1, "E": -1, "e1": -1},
            "c2": {"h": 1, "E": -1, "e2": -1},
        },
        "dp5_a2_bl",
        "lemma:dP5-A2-general-point",
    )
    out["dp6_bl"] = _blowup(
        dp6,
        {
            "c0": {"h1": 1, "h2": 1, "e1": -1, "e2": -1, "E": -1},
            "c1": {"h1": 1, "E": -1},
            "c2": {"h2": 1, "E": -1},
        },
        "dp6_bl",
        "lemma:dP6-general-point",
    )
    return out


BLOWUP_OF = {"dp5": "dp5_bl", "dp5_a1": "dp5_a1_bl", "dp5_a2": "dp5_a2_bl", "dp6": "dp6_bl"}

# models added at run time, e.g. from a JSON bundle; they shadow built-ins of the same id
_extra: dict[str, SurfaceModel] = {}


def _key(name: str) -> str:
    return name.strip().lower().replace("-", "_")


def register_model(m: SurfaceModel, blowup_of: str | None = None) -> None:
    """Make ``m`` available to ``get_model``; ``blowup_of`` names the model it blows up."""
    _extra[_key(m.id)] = m
    if blowup_of is not None:
        BLOWUP_OF[_key(blowup_of)] = _key(m.id)


def get_model(name: str) -> SurfaceModel:
    key = _key(name)
    if key in _extra:
        return _extra[key]
    models = builtin_models()
    if key not in models:
        known = sorted(set(models) | set(_extra))
        raise KeyError(f"unknown surface {name!r}; known: {', '.join(known)}")
    return models[key]
