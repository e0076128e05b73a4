from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kstab.exact import BoundFunction, UniPoly, enclosure, parse_rational_fn, sign
from kstab.threefold import (
    ANTICANONICAL,
    ASSUMED,
    MACHINE,
    NEMURO_CASES,
    PENCILS,
    SURFACE_BOUNDS,
    NotPositive,
    XRing,
    derived_bound,
    derived_constants,
    get_case,
    get_pencil,
    get_surface_bound,
    nemuro,
    nemuro_enclosure,
    pencil_problems,
    restricted_volume,
    run_certificate,
    s_x,
)


def test_anticanonical_degree():
    assert XRing.standard().cube(ANTICANONICAL) == 22


def test_ring_is_symmetric():
    r = XRing.standard()
    assert r.entry(0, 1, 1) == r.entry(1, 0, 1) == r.entry(1, 1, 0) == -4


def test_s_x_values():
    assert s_x(get_pencil("h-r")) == Fraction(67, 88)
    assert s_x(get_pencil("2h-e")) == Fraction(109, 176)


def test_s_x_against_quadrature():
    ring = XRing.standard()
    for p in PENCILS.values():
        def vol(u):
            return float(ring.cube(p.P(Fraction(float(u)))))
        pts = [float(ch.lo) for ch in p.chambers] + [float(p.tau)]
        val = mpmath.quad(vol, pts) / 22
        assert abs(val - float(s_x(p))) < 1e-12


def test_tampered_ring_breaks_the_pin():
    bad = XRing.standard(EEE=-15)
    assert bad.cube(ANTICANONICAL) != 22
    assert bad.cube(ANTICANONICAL) == 21


@pytest.mark.parametrize("name", list(PENCILS))
def test_pencil_data_consistent(name):
    assert pencil_problems(PENCILS[name]) == []


def test_restricted_volumes():
    hr, he = PENCILS["HminusR"], PENCILS["2HminusE"]
    assert restricted_volume(hr, 0) == UniPoly([5])
    assert restricted_volume(hr, 1) == UniPoly([12, -8, 1])
    assert restricted_volume(he, 0) == UniPoly([6])
    assert restricted_volume(he, 1) == UniPoly([30, -32, 8])


@pytest.mark.parametrize("name", list(NEMURO_CASES))
def test_nemuro_constants_rederived(name):
    case = NEMURO_CASES[name]
    d = derived_constants(case.pencil)
    assert d["c1"] == case.c1
    assert d["g"] == case.g
    if case.c0:
        assert d["c0"] == case.c0


def test_nemuro_constants_by_sympy():
    import sympy as sp

    u = sp.symbols("u")
    assert sp.Rational(3, 22) * sp.integrate((u - 1) * (2 - u) * (6 - u), (u, 1, 2)) == sp.Rational(9, 88)
    assert sp.Rational(3, 22) * sp.integrate((u - 1) * 2 * (3 - 2 * u) * (5 - 2 * u), (u, 1, sp.Rational(3, 2))) \
        == sp.Rational(5, 176)


def test_known_nemuro_values():
    f = get_surface_bound("prop2.5").stated()
    assert nemuro(get_case("hr-not-r"), f) == Fraction(88, 73)
    assert nemuro(get_case("hr-in-r"), f) == Fraction(44, 41)
    g = get_surface_bound("prop2.8-on-curve").stated()
    assert nemuro(get_case("he-in-e"), g) == 1
    assert nemuro(get_case("he-not-e"), g) == Fraction(176, 171)


def _float_nemuro(case, f):
    integral = sum(
        mpmath.quad(lambda u: float(case.g(Fraction(float(u)))) / float(p.fn(Fraction(float(u)))), [float(p.lo), float(p.hi)])
        for p in f.pieces
    )
    return 1 / (float(case.c0) + float(case.c1) / float(f(Fraction(1))) + 3 / 22 * integral)


@pytest.mark.parametrize("bid", list(SURFACE_BOUNDS))
def test_nemuro_against_quadrature(bid):
    sb = SURFACE_BOUNDS[bid]
    f = sb.stated()
    for case in NEMURO_CASES.values():
        if case.pencil.name != sb.pencil:
            continue
        exact = nemuro(case, f)
        lo, hi = enclosure(exact, 60)
        ref = _float_nemuro(case, f)
        assert float(lo) - 1e-9 <= ref <= float(hi) + 1e-9


def test_enclosure_route_agrees_with_exact():
    f = get_surface_bound("dp5-a2-off-e").stated()
    case = get_case("hr-not-r")
    exact = nemuro(case, f)
    lo, hi = nemuro_enclosure(case, f)
    assert sign(exact - lo) >= 0 and sign(hi - exact) >= 0


@settings(max_examples=40, deadline=None)
@given(st.fractions(min_value=Fraction(1, 10), max_value=5, max_denominator=20),
       st.fractions(min_value=0, max_value=3, max_denominator=20))
def test_nemuro_is_antitone_in_f(c, extra):
    """A larger lower bound on delta gives a larger flag bound."""
    case = get_case("hr-in-r")
    for shape in ("1", "6-u"):
        base = parse_rational_fn(shape, "u")
        f1 = BoundFunction.single(1, 2, base * c, var="u")
        f2 = BoundFunction.single(1, 2, base * (c + extra), var="u")
        assert nemuro(case, f1) <= nemuro(case, f2)


def test_non_positive_input_rejected():
    f = BoundFunction.single(1, 2, parse_rational_fn("u-3/2", "u"), var="u")
    with pytest.raises(NotPositive):
        nemuro(get_case("hr-not-r"), f)
    with pytest.raises(ValueError):
        nemuro(get_case("hr-not-r"), BoundFunction.single(1, 3, parse_rational_fn("1", "u"), var="u"))


def test_derived_inputs_match_stated_except_a2_on_e():
    for bid, sb in SURFACE_BOUNDS.items():
        same = sb.stated().same_as(derived_bound(sb))
        assert same == (bid != "dp5-a2-on-e"), bid


def test_certificate_structure():
    rep = run_certificate()
    cats = {c.category for c in rep.checks}
    assert cats == {MACHINE, ASSUMED}
    ids = {c.id: c for c in rep.checks}
    assert ids["anticanonical-degree"].status == "Pass"
    assert ids["equality-case"].status == "Pass"
    assert ids["closing-minimum"].computed == "1"
    # every Nemuro bound, including the ones fed with machine-derived inputs, clears 1
    assert all(c.status == "Pass" for c in rep.checks if c.id.startswith("nemuro-") and c.category == MACHINE)
    assert [c.id for c in rep.failures] == ["input-dp5-a2-on-e"]
    assert sum(rep.counts().values()) == len(rep.checks)


def test_certificate_detects_tampering():
    rep = run_certificate(XRing.standard(EEE=-15))
    assert "anticanonical-degree" in {c.id for c in rep.failures}


def test_e_r_disjoint_on_s():
    rep = run_certificate()
    check = next(c for c in rep.checks if c.id == "E-R-disjoint-on-S")
    assert check.status == "Pass"
