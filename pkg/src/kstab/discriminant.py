"""The bidegree (2, 3) discriminant curve on P^1 x P^1 and an exact smoothness decision.

Smoothness is decided chart by chart.  In each affine chart the curve is ``f(y, z) = 0`` and a
singular point is a common zero of ``f, f_y, f_z``.  Every such point has ``z`` a root of
``Res_y(f, f_y)``; for each irreducible factor ``q`` of that resultant we take the gcd of the
three polynomials in ``(Q[z]/q)[y]``, which is non-constant exactly when a singular point lies
over the roots of ``q``.  A Groebner-basis test of the same system is kept as an independent
second route.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import sympy as sp

Y, Z, T = sp.symbols("y z t")
Y0, Y1, Z0, Z1 = sp.symbols("y0 y1 z0 z1")

# chart name -> substitution of the homogeneous coordinates by the affine (y, z)
CHARTS = {
    "y0=1,z0=1": {Y0: 1, Y1: Y, Z0: 1, Z1: Z},
    "y0=1,z1=1": {Y0: 1, Y1: Y, Z0: Z, Z1: 1},
    "y1=1,z0=1": {Y0: Y, Y1: 1, Z0: 1, Z1: Z},
    "y1=1,z1=1": {Y0: Y, Y1: 1, Z0: Z, Z1: 1},
}


class DegenerateParameters(ValueError):
    pass


@dataclass(frozen=True)
class BiHomPoly:
    """``sum c[i][j] y0^(2-i) y1^i z0^(3-j) z1^j`` with rational coefficients."""

    c: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.c) != 3 or any(len(row) != 4 for row in self.c):
            raise ValueError("expected a 3 x 4 coefficient table")

    def is_zero(self) -> bool:
        return not any(x for row in self.c for x in row)

    def expr(self) -> sp.Expr:
        out = sp.Integer(0)
        for i in range(3):
            for j in range(4):
                if self.c[i][j]:
                    out += sp.Rational(self.c[i][j].numerator, self.c[i][j].denominator) * (
                        Y0 ** (2 - i) * Y1**i * Z0 ** (3 - j) * Z1**j
                    )
        return out

    def degenerate_bidegree(self) -> bool:
        """True when some variable can be factored out, so the bidegree drops."""
        rows = [any(self.c[i]) for i in range(3)]
        cols = [any(self.c[i][j] for i in range(3)) for j in range(4)]
        return not (rows[0] and rows[2] and cols[0] and cols[3])

    @classmethod
    def from_monomial(cls, i: int, j: int, coeff=1) -> "BiHomPoly":
        c = [[Fraction(0)] * 4 for _ in range(3)]
        c[i][j] = Fraction(coeff)
        return cls(tuple(tuple(r) for r in c))


def _q(x) -> Fraction:
    return Fraction(x)


def discriminant_poly(lam, a: Sequence, b: Sequence) -> BiHomPoly:
    """Coefficients of the discriminant curve for ``lambda``, ``(a0, a1, a2)`` and ``(b1, b2, b3)``."""
    lam = _q(lam)
    if lam in (0, 1, -1):
        raise DegenerateParameters(f"degenerate elliptic curve parameter lambda = {lam}")
    a0, a1, a2 = (_q(x) for x in a)
    b1, b2, b3 = (_q(x) for x in b)
    if not (a0 or a1 or a2):
        raise DegenerateParameters("(a0, a1, a2) must be nonzero")
    if not (b1 or b2 or b3):
        raise DegenerateParameters("(b1, b2, b3) must be nonzero")
    l3 = lam**3
    row0 = (
        lam * (b1**2 - lam * b2**2 + lam * b3**2),
        -(l3 * b2**2 + l3 * b3**2 + b1**2),
        -(l3 * b1**2 - b2**2 + b3**2),
        -(l3 * b1**2 - b2**2 + b3**2),
    )
    row1 = (
        -2 * lam * (a1 * b1 - lam * a2 * b2),
        2 * (l3 * a2 * b2 + a1 * b1),
        2 * (l3 * a1 * b1 - a2 * b2),
        -2 * lam * (lam * a1 * b1 + a2 * b2),
    )
    row2 = (
        -lam * (lam * a2**2 + a0**2 - a1**2),
        -(l3 * a2**2 + a0**2 + a1**2),
        l3 * a0**2 - l3 * a1**2 + a2**2,
        lam * (lam * a0**2 + lam * a1**2 + a2**2),
    )
    return BiHomPoly((row0, row1, row2))


# -- arithmetic in (Q[z]/q)[y]: coefficient lists in y of reduced polys in z -------

def _reduce(p, q: sp.Poly) -> list[sp.Poly]:
    """Coefficients in ``y`` of ``p`` (an expression in y, z), reduced modulo ``q(z)``."""
    pp = sp.Poly(p, Y, Z, domain="QQ")
    out = [sp.Poly(0, Z, domain="QQ") for _ in range(pp.degree(Y) + 1 if not pp.is_zero else 0)]
    for (i, j), c in pp.terms():
        out[i] += sp.Poly(c * Z**j, Z, domain="QQ")
    return _trim([c.rem(q) for c in out])


def _trim(a: list[sp.Poly]) -> list[sp.Poly]:
    while a and a[-1].is_zero:
        a.pop()
    return a


def _gcd_mod(a: list[sp.Poly], b: list[sp.Poly], q: sp.Poly) -> list[sp.Poly]:
    a, b = list(a), list(b)
    while b:
        inv = b[-1].invert(q)
        while len(a) >= len(b):
            factor = (a[-1] * inv).rem(q)
            shift = len(a) - len(b)
            for k, bc in enumerate(b):
                a[k + shift] = (a[k + shift] - factor * bc).rem(q)
            _trim(a)
        a, b = b, a
    return a


def _as_expr(a: list[sp.Poly], y, z) -> sp.Expr:
    return sp.expand(sum((c.as_expr().subs(Z, z) * y**k for k, c in enumerate(a)), sp.Integer(0)))


@dataclass
class ChartResult:
    chart: str
    singular: bool
    witnesses: list[dict] = field(default_factory=list)
    groebner_singular: bool | None = None
    torus_singular: bool | None = None

    @property
    def routes_agree(self) -> bool:
        return self.groebner_singular is None or self.groebner_singular == self.singular


def _box(q: sp.Poly) -> list[list[str]]:
    """Rational rectangles isolating the complex roots of ``q``."""
    real, cplx = sp.Poly(q.as_expr(), Z).intervals(all=True)
    out = [[str(lo), "0", str(hi), "0"] for (lo, hi), _ in real]
    for (c0, c1), _ in cplx:
        out.append([str(sp.re(c0)), str(sp.im(c0)), str(sp.re(c1)), str(sp.im(c1))])
    return out


def singular_points_in_chart(f: sp.Expr, chart: str, cross_check: bool = True) -> ChartResult:
    """Decide whether ``f(y, z) = 0`` is singular somewhere in the affine chart."""
    fp = sp.Poly(sp.expand(f), Y, Z, domain="QQ")
    res = ChartResult(chart, False)
    if fp.is_zero:
        raise ValueError("polynomial is identically zero")
    fy, fz = fp.diff(Y), fp.diff(Z)
    if fp.is_ground:
        res.groebner_singular = False if cross_check else None
        res.torus_singular = False if cross_check else None
        return res

    # repeated factors make every point of that factor singular
    _, facs = sp.factor_list(fp.as_expr(), Y, Z)
    for fac, mult in facs:
        if mult > 1 and sp.Poly(fac, Y, Z).total_degree() > 0:
            res.singular = True
            res.witnesses.append({"kind": "repeated factor", "factor": str(fac), "multiplicity": mult})

    if not res.singular:
        for elim, other in ((Y, Z), (Z, Y)):
            r = sp.Poly(sp.resultant(fp.as_expr(), fp.diff(elim).as_expr(), elim), other, domain="QQ")
            if not r.is_zero:
                break
        else:
            r = None
        if r is None:
            # f has a factor in y alone and one in z alone; their lines cross in the chart
            res.singular = True
            res.witnesses.append({"kind": "crossing components"})
        else:
            swap = elim == Z
            for fac, _ in sp.factor_list(r.as_expr(), other)[1]:
                q = sp.Poly(fac.subs(other, Z) if swap else fac, Z, domain="QQ")
                if q.degree() <= 0:
                    continue
                ff = fp.as_expr()
                polys = [ff, sp.diff(ff, Y), sp.diff(ff, Z)]
                if swap:
                    polys = [p.subs({Y: T}).subs({Z: Y}).subs({T: Z}) for p in polys]
                g = _reduce(polys[0], q)
                if not g:
                    # q(z) is a component; with f = q h the gradient on it is h * grad q
                    g = _reduce(sp.cancel(polys[0] / q.as_expr()), q)
                else:
                    for p in polys[1:]:
                        g = _gcd_mod(g, _reduce(p, q), q)
                        if len(g) <= 1:
                            break
                if len(g) >= 2:
                    res.singular = True
                    res.witnesses.append({
                        "kind": "isolated",
                        "eliminated": "y" if not swap else "z",
                        "minimal_polynomial": str(q.as_expr().subs(Z, other)),
                        "other_coordinate_gcd": str(_as_expr(g, elim, other)),
                        "boxes": _box(q),
                    })

    if cross_check:
        gb = sp.groebner([fp.as_expr(), fy.as_expr(), fz.as_expr()], Y, Z, order="grevlex")
        res.groebner_singular = not (len(gb.exprs) == 1 and gb.exprs[0] == 1)
        gt = sp.groebner([fp.as_expr(), fy.as_expr(), fz.as_expr(), Y * Z * T - 1], Y, Z, T, order="grevlex")
        res.torus_singular = not (len(gt.exprs) == 1 and gt.exprs[0] == 1)
    return res


@dataclass
class SmoothnessReport:
    smooth: bool
    charts: list[ChartResult]

    @property
    def routes_agree(self) -> bool:
        return all(c.routes_agree for c in self.charts)

    @property
    def charts_consistent(self) -> bool:
        """Points with all four coordinates nonzero are seen by every chart, so those verdicts must match."""
        seen = {c.torus_singular for c in self.charts if c.torus_singular is not None}
        return len(seen) <= 1

    @property
    def verdict(self) -> str:
        return "Smooth" if self.smooth else "Singular"

    def witness(self) -> dict | None:
        for c in self.charts:
            if c.singular:
                return {"chart": c.chart, **c.witnesses[0]}
        return None


def is_smooth(p: BiHomPoly, cross_check: bool = True) -> SmoothnessReport:
    if p.is_zero():
        raise ValueError("polynomial is identically zero")
    F = p.expr()
    charts = [singular_points_in_chart(F.subs(sub), name, cross_check) for name, sub in CHARTS.items()]
    return SmoothnessReport(not any(c.singular for c in charts), charts)


KSTABLE = "KStableByCorollary"
INCONCLUSIVE = "Inconclusive"


@dataclass
class Verdict:
    lam: Fraction
    a: tuple[Fraction, ...]
    b: tuple[Fraction, ...]
    report: SmoothnessReport

    @property
    def verdict(self) -> str:
        return KSTABLE if self.report.smooth else INCONCLUSIVE

    def to_json(self) -> dict:
        out = {
            "lambda": str(self.lam),
            "a": [str(x) for x in self.a],
            "b": [str(x) for x in self.b],
            "smooth": self.report.smooth,
            "verdict": self.verdict,
            "charts": {c.chart: ("Singular" if c.singular else "Smooth") for c in self.report.charts},
            "routes_agree": self.report.routes_agree,
            "charts_consistent": self.report.charts_consistent,
        }
        w = self.report.witness()
        if w:
            out["witness"] = w
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def kstable_verdict(lam, a: Sequence, b: Sequence, cross_check: bool = True) -> Verdict:
    p = discriminant_poly(lam, a, b)
    return Verdict(_q(lam), tuple(_q(x) for x in a), tuple(_q(x) for x in b), is_smooth(p, cross_check))
