"""Acceptance criteria, one test each; conftest prints a PASS/FAIL line per criterion."""
import random
import time
from fractions import Fraction

import pytest

from kstab.discriminant import KSTABLE, kstable_verdict
from kstab.lattice import builtin_models, certify_family, zariski_family_split, zariski_fixed
from kstab.lattice.model import intersect
from kstab.registry import FAIL, NOTED, PASS, verify_all
from kstab.threefold import (
    ANTICANONICAL,
    NEMURO_CASES,
    PENCILS,
    XRing,
    derived_constants,
    get_case,
    get_surface_bound,
    nemuro,
    s_x,
)


def _best_of(fn, repeats=20):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return out, best


@pytest.mark.criterion(1, "intersection ring pin (4H-E-R)^3 = 22 in < 1 ms")
def test_criterion_1_ring_pin(record_property):
    ring = XRing.standard()
    value, secs = _best_of(lambda: ring.cube(ANTICANONICAL))
    record_property("detail", f"value {value}, {secs * 1e3:.3f} ms")
    assert value == 22
    assert secs < 1e-3


@pytest.mark.criterion(2, "S_X = 67/88 for |H-R| and 109/176 for |2H-E| in < 10 ms")
def test_criterion_2_s_x(record_property):
    (hr, he), secs = _best_of(lambda: (s_x(PENCILS["HminusR"]), s_x(PENCILS["2HminusE"])))
    record_property("detail", f"{hr}, {he}, {secs * 1e3:.3f} ms")
    assert hr == Fraction(67, 88)
    assert he == Fraction(109, 176)
    assert secs < 1e-2


@pytest.mark.criterion(3, "Nemuro constants 9/88 and 5/176 re-derived")
def test_criterion_3_nemuro_constants(record_property):
    hr = derived_constants(PENCILS["HminusR"])["c0"]
    he = derived_constants(PENCILS["2HminusE"])["c0"]
    record_property("detail", f"{hr}, {he}")
    assert hr == Fraction(9, 88) == NEMURO_CASES["HR_inR"].c0
    assert he == Fraction(5, 176) == NEMURO_CASES["HE_inE"].c0


@pytest.mark.criterion(4, "registry reproduces every printed bound, exactly one documented mismatch, < 30 s")
def test_criterion_4_registry(record_property):
    t0 = time.perf_counter()
    results = verify_all()
    secs = time.perf_counter() - t0
    noted = [r.record.id for r in results if r.status == NOTED]
    failed = [r.record.id for r in results if r.status == FAIL]
    passed = sum(r.status == PASS for r in results)
    record_property("detail", f"{len(results)} records: {passed} pass, noted {noted}, failed {failed}, {secs:.2f} s")
    assert secs < 30
    assert noted == ["A2-e1"]
    assert failed == []


@pytest.mark.criterion(5, "corollary chain: 88/73, 44/41, > 1 on singular strata, = 1 at the boundary")
def test_criterion_5_corollary_chain(record_property):
    smooth = get_surface_bound("prop2.5").stated()
    v1, v2 = nemuro(get_case("hr-not-r"), smooth), nemuro(get_case("hr-in-r"), smooth)
    values = []
    for bid in ("prop2.6-off-e", "prop2.6-on-e", "prop2.7-off-e", "prop2.7-on-e"):
        f = get_surface_bound(bid).stated()
        cases = ("hr-not-r", "hr-in-r") if bid.endswith("off-e") else ("hr-not-r",)
        values += [nemuro(get_case(c), f) for c in cases]
    boundary = nemuro(get_case("he-in-e"), get_surface_bound("prop2.8-on-curve").stated())
    record_property("detail", f"{v1}, {v2}, {len(values)} singular-stratum values > 1, boundary {boundary}")
    assert v1 == Fraction(88, 73) and v2 == Fraction(44, 41)
    assert all(v > 1 for v in values)
    assert boundary == 1


@pytest.mark.criterion(6, "zariski_family equals zariski_fixed at 25 random (a, v) per pair, < 10 s")
def test_criterion_6_zariski_oracle(record_property):
    t0 = time.perf_counter()
    checked = 0
    for mid, m in builtin_models().items():
        for c in m.labels:
            rng = random.Random(f"{mid}:{c}")
            decs = zariski_family_split(m, c)
            for _ in range(25):
                dec = rng.choice(decs)
                lo, hi = dec.a_interval
                a = lo + (hi - lo) * Fraction(rng.randint(1, 997), 997)
                v = dec.tau(a) * Fraction(rng.randint(0, 997), 997)
                z = dec.evaluate(a, v)
                d = tuple(p - v * x for p, x in zip(m.polarization_at(a), m.curve(c).coords))
                fixed = zariski_fixed(m, d)
                assert (z.P, z.n_dict()) == (fixed.P, fixed.n_dict()), (mid, c, a, v)
                checked += 1
    secs = time.perf_counter() - t0
    record_property("detail", f"{checked} samples, {secs:.2f} s")
    assert secs < 10


@pytest.mark.criterion(7, "d/dv P^2 = -2 P.C on every chamber of every built-in family")
def test_criterion_7_derivative_identity(record_property):
    chambers = 0
    for m in builtin_models().values():
        for c in m.labels:
            curve = m.curve(c).divisor()
            for dec in zariski_family_split(m, c):
                for ch in dec.chambers:
                    assert intersect(m, ch.P, ch.P).diff_v() == intersect(m, ch.P, curve) * -2
                    chambers += 1
                assert certify_family(m, dec) == []
    record_property("detail", f"{chambers} chambers")


@pytest.mark.criterion(8, "discriminant regression: Smooth, KStableByCorollary, all four charts, < 5 s")
def test_criterion_8_discriminant(record_property):
    t0 = time.perf_counter()
    v = kstable_verdict(2, (1, 0, -1), (1, 0, -1))
    secs = time.perf_counter() - t0
    charts = {c.chart: not c.singular for c in v.report.charts}
    record_property("detail", f"{v.report.verdict}, {v.verdict}, charts {sum(charts.values())}/4, {secs:.2f} s")
    assert v.report.smooth and v.verdict == KSTABLE
    assert len(charts) == 4 and all(charts.values())
    assert v.report.routes_agree and v.report.charts_consistent
    assert secs < 5
