"""The flag bound on a pencil surface from a lower bound f(u) of delta on [1, tau)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..exact import (
    AffineMap,
    BoundFunction,
    NonPolynomialIntegrand,
    UniPoly,
    enclose_rational_integral,
    enclosure,
    integrate_rational_in_u,
    is_positive,
    parse_rational_fn,
    parse_scalar,
    piecewise_min_all,
    simplify,
    substitute,
)
from ..exact.numbers import Scalar, fmt
from .ring import H_MINUS_R, TWO_H_MINUS_E, PencilCase, XRing, restricted_volume


class NotPositive(ValueError):
    def __init__(self, msg: str, witness=None):
        super().__init__(msg)
        self.witness = witness


@dataclass(frozen=True)
class NemuroCase:
    """``1 / (c0 + c1/f(1) + (3/22) * integral over [1, tau] of g/f)``."""

    name: str
    pencil: PencilCase
    c0: Fraction
    c1: Fraction
    g: UniPoly
    tau: Fraction
    citation: str = "lemma:Nemuro"


def _g(text: str) -> UniPoly:
    return parse_rational_fn(text, "u").as_poly()


NEMURO_CASES = {
    "HR_notR": NemuroCase("HR_notR", H_MINUS_R, Fraction(0), Fraction(15, 22), _g("(2-u)*(6-u)"), Fraction(2)),
    "HR_inR": NemuroCase("HR_inR", H_MINUS_R, Fraction(9, 88), Fraction(15, 22), _g("(2-u)*(6-u)"), Fraction(2)),
    "HE_notE": NemuroCase(
        "HE_notE", TWO_H_MINUS_E, Fraction(0), Fraction(9, 11), _g("2*(3-2*u)*(5-2*u)"), Fraction(3, 2)
    ),
    "HE_inE": NemuroCase(
        "HE_inE", TWO_H_MINUS_E, Fraction(5, 176), Fraction(9, 11), _g("2*(3-2*u)*(5-2*u)"), Fraction(3, 2)
    ),
}
CASE_ALIASES = {"hr-not-r": "HR_notR", "hr-in-r": "HR_inR", "he-not-e": "HE_notE", "he-in-e": "HE_inE"}


def get_case(name: str) -> NemuroCase:
    key = CASE_ALIASES.get(name.strip().lower(), name)
    if key not in NEMURO_CASES:
        raise KeyError(f"unknown case {name!r}; known: {', '.join(CASE_ALIASES)}")
    return NEMURO_CASES[key]


# -- re-deriving the constants from the pencil data --------------------------------

def _integral(p: UniPoly, lo, hi) -> Fraction:
    prim = p.antiderivative()
    return prim(Fraction(hi)) - prim(Fraction(lo))


def derived_constants(pencil: PencilCase, ring: XRing | None = None) -> dict[str, object]:
    """``c1``, the ``N``-term ``c0`` and ``g`` recomputed from the intersection ring.

    ``c1 = (3/22) * integral over [0, 1] of (P|_S)^2`` (constant there, equal to ``K_S^2``),
    ``c0 = (3/22) * integral over [1, tau] of (u - 1)(P|_S)^2``, using ``ord <= (u - 1) A_S``.
    """
    ring = ring or XRing.standard()
    k = Fraction(3) / ring.cube((4, -1, -1))
    first, second = restricted_volume(pencil, 0, ring), restricted_volume(pencil, 1, ring)
    lo, hi = pencil.chambers[1].lo, pencil.chambers[1].hi
    return {
        "c1": k * _integral(first, pencil.chambers[0].lo, pencil.chambers[0].hi),
        "c0": k * _integral(second * UniPoly([-1, 1]), lo, hi),
        "g": second,
        "tau": pencil.tau,
    }


# -- lower bounds of delta on the pencil surfaces, in u ------------------------------

A_TO_U = {"HminusR": AffineMap(4, -1), "2HminusE": AffineMap(4, -2)}


@dataclass(frozen=True)
class SurfaceBound:
    """A stated lower bound ``f(u)`` together with the surface bound in ``a`` it comes from."""

    id: str
    pencil: str
    parts: tuple[str, ...]
    source: tuple[str, ...]
    citation: str
    description: str

    def stated(self) -> BoundFunction:
        ends = [parse_scalar(x) for x in self.parts[0::2]]
        fns = [parse_rational_fn(x, "u") for x in self.parts[1::2]]
        out: list = [ends[0]]
        for fn, e in zip(fns, ends[1:]):
            out += [fn, e]
        return BoundFunction.from_parts(out, "u").canonical()


SURFACE_BOUNDS = {
    b.id: b
    for b in (
        SurfaceBound("dp5-smooth", "HminusR", ("1", "3*(6-u)/(u^2-10*u+22)", "2"), ("dP5-cor",),
                     "proposition:dP5-smooth", "smooth quintic surface"),
        SurfaceBound("dp5-a1-off-e", "HminusR", ("1", "3*(6-u)/(u^2-10*u+22)", "2"), ("A1-cor-off-exc",),
                     "proposition:dP5-A1 (first case)", "A1 quintic, point off C and off E"),
        SurfaceBound("dp5-a1-on-e", "HminusR",
                     ("1", "1/(2-u)", "(7-sqrt(21))/2", "3*(6-u)/(u^2-10*u+22)", "2"), ("A1-cor-on-exc",),
                     "proposition:dP5-A1 (second case)", "A1 quintic, point off C and on E"),
        SurfaceBound("dp5-a2-off-e", "HminusR",
                     ("1", "6*(6-u)/((2-u)*(22+u))", "(1+sqrt(21))/5", "4*(6-u)/(u^2-14*u+28)",
                      "sqrt(5)-1", "2*(6-u)/(u^2-6*u+12)", "2"), ("A2-cor-off-exc",),
                     "proposition:dP5-A2 (first case)", "A2 quintic, point off C and off E"),
        SurfaceBound("dp5-a2-on-e", "HminusR",
                     ("1", "6*(6-u)/((2-u)*(38-7*u))", "(7-sqrt(17))/2", "6*(6-u)/(u^2-10*u+28)", "2"),
                     ("A2-cor-on-exc",), "proposition:dP5-A2 (second case)", "A2 quintic, point off C and on E"),
        SurfaceBound("dp6-on-curve", "2HminusE", ("1", "1/(2-u)", "3/2"),
                     ("dP6-e1e2-on-lines", "dP6-e1e2-off-lines", "dP6-lines"),
                     "proposition:dP6-smooth (first case)", "sextic surface, point on a (-1)-curve"),
        SurfaceBound("dp6-off-curve", "2HminusE",
                     ("1", "2*(5-2*u)/(4*u^2-18*u+19)", "(9-sqrt(21))/4", "3*(5-2*u)/(4*u^2-18*u+21)", "3/2"),
                     ("dP6-general",), "proposition:dP6-smooth (second case)", "sextic surface, point on no (-1)-curve"),
    )
}
BOUND_ALIASES = {
    "prop2.5": "dp5-smooth", "prop2.6-off-e": "dp5-a1-off-e", "prop2.6-on-e": "dp5-a1-on-e",
    "prop2.7-off-e": "dp5-a2-off-e", "prop2.7-on-e": "dp5-a2-on-e",
    "prop2.8-on-curve": "dp6-on-curve", "prop2.8-off-curve": "dp6-off-curve",
}


def get_surface_bound(name: str) -> SurfaceBound:
    key = BOUND_ALIASES.get(name.strip().lower(), name.strip().lower())
    if key not in SURFACE_BOUNDS:
        raise KeyError(f"unknown bound {name!r}; known: {', '.join(SURFACE_BOUNDS)}")
    return SURFACE_BOUNDS[key]


def derived_bound(b: SurfaceBound, registry=None) -> BoundFunction:
    """The machine-computed surface bounds named in ``b.source``, minimised and rewritten in ``u``."""
    from ..registry import default_registry

    reg = registry or default_registry()
    in_a = piecewise_min_all([reg.computed(rid) for rid in b.source]).canonical()
    return substitute(in_a, A_TO_U[b.pencil]).canonical()


# -- the combiner ------------------------------------------------------------------

def nemuro_denominator(case: NemuroCase, f: BoundFunction) -> Scalar:
    """``c0 + c1/f(1) + (3/22) * integral of g/f``, exact; ``f`` must be positive on ``[1, tau]``."""
    if f.var != "u":
        raise ValueError(f"bound must be in u, got {f.var}")
    if f.lo != 1 or f.hi != case.tau:
        raise ValueError(f"bound covers [{fmt(f.lo)}, {fmt(f.hi)}], case needs [1, {fmt(case.tau)}]")
    ok, witness = is_positive(f)
    if not ok:
        raise NotPositive(f"f is not positive on [1, {fmt(case.tau)}]", witness)
    integral: Scalar = Fraction(0)
    for p in f.pieces:
        integral = integral + integrate_rational_in_u(case.g, p.fn, p.lo, p.hi)
    return simplify(case.c0 + case.c1 / f(Fraction(1)) + Fraction(3, 22) * integral)


def nemuro(case: NemuroCase, f: BoundFunction) -> Scalar:
    return simplify(1 / nemuro_denominator(case, f))


def nemuro_enclosure(case: NemuroCase, f: BoundFunction, width=Fraction(1, 10**9)) -> tuple[Fraction, Fraction]:
    """Rational enclosure of the bound for inputs whose ``g/f`` is not a polynomial."""
    lo, hi = enclosure(simplify(case.c0 + case.c1 / f(Fraction(1))), 80)
    for p in f.pieces:
        try:
            a, b = enclosure(integrate_rational_in_u(case.g, p.fn, p.lo, p.hi), 80)
        except NonPolynomialIntegrand:
            a, b = enclose_rational_integral(case.g, p.fn, p.lo, p.hi, width / len(f.pieces))
        lo += Fraction(3, 22) * a
        hi += Fraction(3, 22) * b
    return 1 / hi, 1 / lo
