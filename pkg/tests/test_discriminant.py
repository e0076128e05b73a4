import random
import time
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from kstab.discriminant import (
    CHARTS,
    INCONCLUSIVE,
    KSTABLE,
    Y,
    Z,
    BiHomPoly,
    DegenerateParameters,
    discriminant_poly,
    is_smooth,
    kstable_verdict,
    singular_points_in_chart,
)


def test_printed_coefficient():
    lam, a, b = Fraction(3), (Fraction(2), Fraction(5), Fraction(-1)), (Fraction(7), Fraction(1, 2), Fraction(4))
    p = discriminant_poly(lam, a, b)
    # coefficient of y0 y1 z0^3
    assert p.c[1][0] == -2 * lam * (a[1] * b[0] - lam * a[2] * b[1])


def test_lines_lemma_parameters_are_smooth():
    t0 = time.perf_counter()
    v = kstable_verdict(2, (1, 0, -1), (1, 0, -1))
    elapsed = time.perf_counter() - t0
    assert v.report.smooth and v.verdict == KSTABLE
    assert all(not c.singular for c in v.report.charts)
    assert v.report.routes_agree and v.report.charts_consistent
    assert elapsed < 5
    assert v.to_json()["lambda"] == "2" and v.to_json()["smooth"] is True


def test_regression_sample():
    """lambda = 2, a = (0, 1, 0), b = (1, 0, 0): singular at ([1:1], [1:0])."""
    v = kstable_verdict(2, (0, 1, 0), (1, 0, 0))
    assert v.verdict == INCONCLUSIVE
    F = discriminant_poly(2, (0, 1, 0), (1, 0, 0)).expr()
    from kstab.discriminant import Y0, Y1, Z0, Z1

    pt = {Y0: 1, Y1: 1, Z0: 1, Z1: 0}
    for g in (F, *(sp.diff(F, x) for x in (Y0, Y1, Z0, Z1))):
        assert g.subs(pt) == 0


def test_non_reduced_monomial_is_singular():
    r = is_smooth(BiHomPoly.from_monomial(0, 0))
    assert not r.smooth
    assert r.witness()["kind"] == "repeated factor"


@pytest.mark.parametrize("lam", [0, 1, -1])
def test_degenerate_lambda(lam):
    with pytest.raises(DegenerateParameters):
        discriminant_poly(lam, (1, 0, -1), (1, 0, -1))
    with pytest.raises(DegenerateParameters):
        kstable_verdict(lam, (1, 0, -1), (1, 0, -1))


def test_zero_vectors_rejected():
    with pytest.raises(DegenerateParameters):
        discriminant_poly(2, (0, 0, 0), (1, 0, -1))
    with pytest.raises(DegenerateParameters):
        discriminant_poly(2, (1, 0, -1), (0, 0, 0))
    with pytest.raises(ValueError):
        is_smooth(BiHomPoly(((Fraction(0),) * 4,) * 3))


def _eval(lam, a, b):
    return [x for row in discriminant_poly(lam, a, b).c for x in row]


def test_coefficients_are_cubic_in_lambda_and_quadratic_in_data():
    rng = random.Random(7)
    lams = [Fraction(k) for k in (2, 3, -2, 5, Fraction(1, 2))]
    for _ in range(8):  # 8 data vectors x 5 lambdas = 40 evaluations
        a = tuple(Fraction(rng.randint(-4, 4)) for _ in range(3))
        b = tuple(Fraction(rng.randint(-4, 4)) for _ in range(3))
        if not any(a) or not any(b):
            a, b = (Fraction(1), Fraction(2), Fraction(3)), (Fraction(1), Fraction(-1), Fraction(2))
        vals = [_eval(l, a, b) for l in lams]
        x = sp.symbols("x")
        for k in range(12):
            cubic = sp.interpolate([(sp.Rational(str(l)), sp.Rational(str(v[k]))) for l, v in zip(lams[:4], vals[:4])], x)
            assert sp.Poly(cubic, x).degree() <= 3
            assert cubic.subs(x, sp.Rational(str(lams[4]))) == sp.Rational(str(vals[4][k]))
        # homogeneous of degree 2 in (a, b)
        t = Fraction(rng.randint(2, 5))
        scaled = _eval(lams[0], tuple(t * v for v in a), tuple(t * v for v in b))
        assert scaled == [t * t * v for v in vals[0]]


coeff = st.integers(-3, 3)
triple = st.tuples(coeff, coeff, coeff).filter(any)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([2, 3, -2, Fraction(1, 2), Fraction(-3, 2), 5]), triple, triple)
def test_charts_and_routes_agree(lam, a, b):
    r = kstable_verdict(lam, a, b).report
    assert r.routes_agree
    assert r.charts_consistent


def _witness_points(f, w):
    """Exact common zeros of f, f_y, f_z over the witness' algebraic z-values."""
    swap = w["eliminated"] == "z"
    elim, other = (Z, Y) if swap else (Y, Z)
    q = sp.sympify(w["minimal_polynomial"], locals={"y": Y, "z": Z})
    g = sp.sympify(w["other_coordinate_gcd"], locals={"y": Y, "z": Z})
    pts = []
    for r in sp.roots(sp.Poly(q, other)):
        for s in sp.roots(sp.Poly(g.subs(other, r), elim)):
            pts.append({other: r, elim: s})
    return pts


@pytest.mark.parametrize("f", [
    (Y**2 - Z**2 * (Z + 1)) * (Z**2 + 1),
    (Y**2 - Z**3 - 1) * (Y - 2),
    Y**2 - (Z**2 - 2) ** 2,
    (Y - Z) * (Y + Z - 1) * (Y - 3),
])
def test_singular_witnesses_are_genuine(f):
    res = singular_points_in_chart(f, "y0=1,z0=1")
    assert res.singular and res.groebner_singular
    found = 0
    for w in res.witnesses:
        if w["kind"] != "isolated":
            continue
        for pt in _witness_points(f, w):
            for h in (f, sp.diff(f, Y), sp.diff(f, Z)):
                assert sp.simplify(h.subs(pt)) == 0
            found += 1
    assert found > 0


def test_smooth_curve_has_no_witness():
    res = singular_points_in_chart(Y**2 - Z**3 - 1, "y0=1,z0=1")
    assert not res.singular and res.groebner_singular is False


def test_chart_table():
    assert len(CHARTS) == 4
