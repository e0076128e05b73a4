"""Exact definite integrals: polynomials in v with affine-in-a bounds, and g/f in u."""
from __future__ import annotations

from fractions import Fraction
from math import factorial

from .numbers import Scalar, enclosure, fmt, simplify
from .poly import BiPoly, RationalFn, UniPoly
from .sturm import isolate_all, nonnegative_on


class BoundsCross(ValueError):
    """The lower limit exceeds the upper limit somewhere on the parameter interval."""

    def __init__(self, msg: str, witness=None):
        super().__init__(msg)
        self.witness = witness


class NonPolynomialIntegrand(ArithmeticError):
    pass


def _as_a_poly(x) -> UniPoly:
    if isinstance(x, UniPoly):
        return x
    if isinstance(x, BiPoly):
        return x.as_a_poly()
    return UniPoly.const(x)


def integrate_poly_in_v(f: BiPoly, lower, upper, a_interval: tuple | None = None) -> RationalFn:
    """``∫_lower^upper f(a, v) dv`` with limits given as polynomials in ``a``.

    With ``a_interval`` the order of the limits is certified on that closed interval.
    """
    lo, hi = _as_a_poly(lower), _as_a_poly(upper)
    if a_interval is not None:
        gap = hi - lo
        if not nonnegative_on(gap, *a_interval):
            bad = isolate_all(gap, *a_interval)
            raise BoundsCross(
                f"limits {lo} > {hi} somewhere on [{fmt(a_interval[0])}, {fmt(a_interval[1])}]",
                bad[0] if bad else a_interval,
            )
    prim = f.antiderivative_v()
    return RationalFn(prim.subs_v(hi) - prim.subs_v(lo))


def integrate_rational_in_u(g: UniPoly, f_piece: RationalFn, lo: Scalar, hi: Scalar) -> Scalar:
    """``∫_lo^hi g/f du`` when ``g/f`` is a polynomial; exact in Q or Q(sqrt d)."""
    if lo == hi:
        return Fraction(0)
    h = RationalFn(g) / f_piece
    if not h.is_polynomial():
        raise NonPolynomialIntegrand(f"non-polynomial integrand {h.format('u')}")
    prim = h.as_poly().antiderivative()
    return simplify(prim(hi) - prim(lo))


# -- certified enclosure for the non-polynomial case ----------------------

def _imul(x, y):
    ps = (x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1])
    return min(ps), max(ps)


def _poly_range(p: UniPoly, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    acc = (Fraction(0), Fraction(0))
    for c in reversed(p.coeffs):
        acc = _imul(acc, (lo, hi))
        acc = (acc[0] + c, acc[1] + c)
    return acc


def _fn_range(r: RationalFn, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    n = _poly_range(r.num, lo, hi)
    d = _poly_range(r.den, lo, hi)
    if d[0] <= 0 <= d[1]:
        raise ZeroDivisionError("denominator may vanish on the subinterval")
    return _imul(n, (1 / d[1], 1 / d[0]))


def _taylor_piece(derivs, lo: Fraction, hi: Fraction, order: int):
    """Enclosure of the integral over ``[lo, hi]`` from a Taylor model at the midpoint."""
    m = (lo + hi) / 2
    r = (hi - lo) / 2
    exact = Fraction(0)
    for k in range(0, order + 1, 2):
        exact += derivs[k](m) / factorial(k) * 2 * r ** (k + 1) / (k + 1)
    rem_lo, rem_hi = _fn_range(derivs[order + 1], lo, hi)
    bound = max(abs(rem_lo), abs(rem_hi)) / factorial(order + 1) * 2 * r ** (order + 2) / (order + 2)
    return exact - bound, exact + bound


def enclose_rational_integral(
    g: UniPoly,
    f_piece: RationalFn,
    lo: Scalar,
    hi: Scalar,
    width: Fraction = Fraction(1, 10**9),
    order: int = 6,
) -> tuple[Fraction, Fraction]:
    """Rational interval containing ``∫_lo^hi g/f du``, of total width at most ``width``."""
    if lo == hi:
        return Fraction(0), Fraction(0)
    h = RationalFn(g) / f_piece
    derivs = [h]
    for _ in range(order + 1):
        derivs.append(derivs[-1].derivative())

    # replace irrational limits by nearby rationals and bound the slivers
    inner_lo = enclosure(lo, 80)[1]
    inner_hi = enclosure(hi, 80)[0]
    sliver = Fraction(0)
    for a, b in ((enclosure(lo, 80)[0], inner_lo), (inner_hi, enclosure(hi, 80)[1])):
        if a < b:
            r = _fn_range(h, a, b)
            sliver += max(abs(r[0]), abs(r[1])) * (b - a)

    budget = width - 2 * sliver
    todo = [(inner_lo, inner_hi)]
    total_lo = total_hi = Fraction(0)
    span = inner_hi - inner_lo
    while todo:
        a, b = todo.pop()
        try:
            e_lo, e_hi = _taylor_piece(derivs, a, b, order)
            ok = (e_hi - e_lo) * span <= budget * (b - a)
        except ZeroDivisionError:
            ok = False
        if ok:
            total_lo += e_lo
            total_hi += e_hi
        else:
            m = (a + b) / 2
            m = Fraction(round(m * 2**40), 2**40) if a < Fraction(round(m * 2**40), 2**40) < b else m
            todo.extend([(m, b), (a, m)])
    return total_lo - sliver, total_hi + sliver
