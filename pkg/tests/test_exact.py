from fractions import Fraction

import mpmath
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from kstab.exact import (
    AffineMap,
    BoundFunction,
    FormulaError,
    NonPolynomialIntegrand,
    QuadExt,
    RationalFn,
    UniPoly,
    count_roots,
    enclose_rational_integral,
    enclosure,
    integrate_poly_in_v,
    integrate_rational_in_u,
    is_positive,
    nonnegative_on,
    parse_rational_fn,
    parse_scalar,
    piecewise_min,
    sign,
    simplify,
    substitute,
)
from kstab.exact.poly import BiPoly

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=30)
small_sqfree = st.sampled_from([2, 3, 5, 13, 17, 21, 33, 57])


def _sym(x):
    if isinstance(x, Fraction):
        return sp.Rational(x.numerator, x.denominator)
    return sum((sp.Rational(c.numerator, c.denominator) * sp.sqrt(d) for d, c in x.terms.items()), sp.Integer(0))


@given(fractions, fractions, small_sqfree)
def test_quadext_sign_agrees_with_sympy(p, q, d):
    x = QuadExt(p, q, d)
    assert sign(x) == sp.sign(_sym(x))


@given(fractions, fractions, fractions, fractions, small_sqfree)
def test_quadext_field_operations(p, q, r, s, d):
    x, y = QuadExt(p, q, d), QuadExt(r, s, d)
    assert sp.simplify(_sym(x * y) - _sym(x) * _sym(y)) == 0
    assert sp.simplify(_sym(x + y) - _sym(x) - _sym(y)) == 0
    if sign(y) != 0:
        assert sp.simplify(_sym(x / y) - _sym(x) / _sym(y)) == 0


def test_mixed_radicals_compare():
    a = QuadExt(0, 1, 5) + QuadExt(0, 1, 21)
    b = QuadExt(0, 1, 105) - QuadExt(3)
    assert sign(a - b) == sp.sign(sp.sqrt(5) + sp.sqrt(21) - sp.sqrt(105) + 3)


def test_sqrt_of_rational():
    assert QuadExt.sqrt(Fraction(8, 9)) == QuadExt(0, Fraction(2, 3), 2)
    assert simplify(QuadExt.sqrt(Fraction(4, 9))) == Fraction(2, 3)
    with pytest.raises(ValueError):
        QuadExt.sqrt(-1)


@given(fractions, fractions, small_sqfree)
def test_enclosure_contains_value(p, q, d):
    lo, hi = enclosure(QuadExt(p, q, d), 60)
    v = float(p) + float(q) * d**0.5
    assert float(lo) - 1e-9 <= v <= float(hi) + 1e-9
    assert hi - lo < Fraction(1, 2**50)


@given(st.lists(st.integers(-9, 9), min_size=2, max_size=6), fractions, fractions)
def test_sturm_count_matches_sympy(coeffs, lo, hi):
    p = UniPoly(coeffs)
    if p.degree < 1 or lo == hi:
        return
    lo, hi = min(lo, hi), max(lo, hi)
    x = sp.symbols("x")
    sqf = sp.Poly(list(reversed(coeffs)), x).sqf_part()
    closed = sqf.count_roots(sp.Rational(lo.numerator, lo.denominator), sp.Rational(hi.numerator, hi.denominator))
    # count_roots works on the half-open interval (lo, hi]
    expected = closed - (1 if p(lo) == 0 else 0)
    assert count_roots(p, lo, hi) == expected


def test_nonnegative_on_touching_zero():
    sq = UniPoly([-2, 1]) * UniPoly([-2, 1])
    assert nonnegative_on(sq, 0, 3)
    assert not nonnegative_on(UniPoly([-2, 1]), 0, 3)


def test_parse_and_format_round_trip():
    f = parse_rational_fn("3*(6-u)/(u^2-10*u+22)", "u")
    assert parse_rational_fn(f.format("u"), "u") == f
    assert parse_scalar("(13-sqrt(57))/2") == QuadExt(Fraction(13, 2), Fraction(-1, 2), 57)
    with pytest.raises(FormulaError):
        parse_rational_fn("exp(a)", "a")


def _bound(parts, var="a"):
    out = []
    for i, x in enumerate(parts):
        out.append(parse_scalar(x) if i % 2 == 0 else parse_rational_fn(x, var))
    return BoundFunction.from_parts(out, var)


def test_piecewise_min_breakpoint_is_exact():
    f = BoundFunction.single(2, 3, parse_rational_fn("3*(a+2)/(2*a^2-5*a+8)"))
    g = BoundFunction.single(2, 3, parse_rational_fn("3*(a+2)/(a^2+8*a-20)"))
    m = piecewise_min(f, g).canonical()
    assert m.breakpoints == [QuadExt(Fraction(13, 2), Fraction(-1, 2), 57)]


@settings(max_examples=60)
@given(st.fractions(min_value=2, max_value=3, max_denominator=50))
def test_piecewise_min_pointwise(a):
    f = _bound(["2", "2*(a+2)/(a^2-2*a+4)", "3"])
    g = _bound(["2", "4*(a+2)/(a^2+6*a-12)", "3"])
    m = piecewise_min(f, g)
    assert m(a) == min(f(a), g(a))


@given(st.fractions(min_value=1, max_value=2, max_denominator=50))
def test_substitute_then_inverse_is_identity(u):
    b = _bound(["2", "3*(a+2)/(a^2+2*a-2)", "(1+sqrt(21))/2", "1/(a-2)", "3"])
    m = AffineMap(4, -1)
    in_u = substitute(b, m)
    assert in_u.var == "u" and in_u.lo == 1 and in_u.hi == 2
    back = substitute(in_u, m.inverse())
    assert back.same_as(b)
    assert in_u(u) == b(4 - u)


def test_is_positive_witness():
    ok, w = is_positive(_bound(["0", "a-1", "2"]))
    assert not ok and sign(w - 1) <= 0
    assert is_positive(_bound(["1", "1/(2-a)", "3/2"]))[0]


def test_integrate_poly_in_v_against_sympy():
    # integral over v in [0, a] of (a - v)^2, a polynomial in a
    f = BiPoly({(2, 0): Fraction(1), (1, 1): Fraction(-2), (0, 2): Fraction(1)})
    res = integrate_poly_in_v(f, BiPoly.const(0), BiPoly.affine(0, 1, 0))
    a, v = sp.symbols("a v")
    ref = sp.integrate((a - v) ** 2, (v, 0, a))
    for x in (Fraction(1), Fraction(5, 2)):
        assert res(x) == Fraction(str(ref.subs(a, sp.Rational(x.numerator, x.denominator))))


def test_rational_integral_exact_and_enclosed():
    g = UniPoly([12, -8, 1])  # (2-u)(6-u)
    f = parse_rational_fn("3*(6-u)/(u^2-10*u+22)", "u")
    exact = integrate_rational_in_u(g, f, Fraction(1), Fraction(2))
    ref = mpmath.quad(lambda u: (2 - u) * (u * u - 10 * u + 22) / 3, [1, 2])
    assert abs(float(exact) - float(ref)) < 1e-12
    lo, hi = enclose_rational_integral(g, f, Fraction(1), Fraction(2))
    assert lo <= exact <= hi
    with pytest.raises(NonPolynomialIntegrand):
        integrate_rational_in_u(UniPoly([1]), RationalFn(UniPoly([0, 1])), 1, 2)


def test_enclosure_of_non_polynomial_integrand():
    g = UniPoly([1])
    f = RationalFn(UniPoly([1, 1]))
    lo, hi = enclose_rational_integral(g, f, Fraction(0), Fraction(1), Fraction(1, 10**8))
    ln2 = Fraction(mpmath.nstr(mpmath.log(2), 30))
    assert lo <= ln2 + Fraction(1, 10**20)
    assert hi >= ln2 - Fraction(1, 10**20)
    assert hi - lo <= Fraction(1, 10**8)
