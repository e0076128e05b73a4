import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kstab.lattice import (
    NotPseudoEffective,
    builtin_models,
    certify_family,
    dumps_model,
    get_model,
    loads_model,
    negative_definite,
    zariski_family_split,
    zariski_fixed,
)
from kstab.lattice.zariski import det, inverse

MODELS = builtin_models()
PAIRS = [(mid, c.label) for mid, m in MODELS.items() for c in m.curves]


def _sample_points(m, dec, rng, n):
    lo, hi = dec.a_interval
    pts = []
    while len(pts) < n:
        a = lo + (hi - lo) * Fraction(rng.randint(1, 400), 400)
        if a == m.a_interval[0]:
            continue
        tau = dec.tau(a)
        v = tau * Fraction(rng.randint(0, 400), 400)
        pts.append((a, v))
    return pts


def _is_zariski(m, d, P, N):
    """Defining properties: P nef, N effective with negative definite support, P.N_i = 0, P + N = D."""
    if any(m.pairing(P, c.coords) < 0 for c in m.curves):
        return False
    if any(x < 0 for _, x in N):
        return False
    labels = [lab for lab, _ in N]
    if labels:
        gram = [[m.curve_product(x, y) for y in labels] for x in labels]
        if not negative_definite(gram):
            return False
    if any(m.pairing(P, m.curve(lab).coords) != 0 for lab in labels):
        return False
    recon = list(P)
    for lab, x in N:
        recon = [r + x * c for r, c in zip(recon, m.curve(lab).coords)]
    return tuple(recon) == tuple(d)


@pytest.mark.parametrize("mid,curve", PAIRS)
def test_family_matches_fixed_decomposition(mid, curve):
    m = MODELS[mid]
    rng = random.Random(f"{mid}/{curve}")
    decs = zariski_family_split(m, curve)
    for dec in decs:
        for a, v in _sample_points(m, dec, rng, 25):
            z = dec.evaluate(a, v)
            d = tuple(p - v * c for p, c in zip(m.polarization_at(a), m.curve(curve).coords))
            fixed = zariski_fixed(m, d)
            assert z.P == fixed.P
            assert z.n_dict() == fixed.n_dict()
            assert _is_zariski(m, d, z.P, z.N)


@pytest.mark.parametrize("mid,curve", PAIRS)
def test_family_invariants_hold_symbolically(mid, curve):
    m = MODELS[mid]
    for dec in zariski_family_split(m, curve):
        assert certify_family(m, dec) == []


@pytest.mark.parametrize("mid", ["dp5", "dp5_a1", "dp5_a2", "dp6"])
def test_polarization_ends_at_anticanonical(mid):
    m = MODELS[mid]
    degree = {"dp5": 5, "dp5_a1": 5, "dp5_a2": 5, "dp6": 6}[mid]
    top = m.polarization_at(m.a_interval[1])
    assert m.pairing(top, top) == degree
    # -K meets every (-1)-curve once
    for c in m.curves:
        if m.self_int(c.label) == -1:
            assert m.pairing(top, c.coords) == 1


def test_beyond_threshold_is_rejected():
    m = get_model("dp6")
    a = Fraction(3, 2)
    dec = zariski_family_split(m, "l1")[0]
    tau = dec.tau(a)
    with pytest.raises(NotPseudoEffective):
        dec.evaluate(a, tau + Fraction(1, 7))
    d = tuple(p - (tau + 1) * c for p, c in zip(m.polarization_at(a), m.curve("l1").coords))
    with pytest.raises(NotPseudoEffective):
        zariski_fixed(m, d)


def test_dp6_sample_decomposition():
    m = get_model("dp6")
    dec = zariski_family_split(m, "l1")[0]
    z = dec.evaluate(Fraction(3, 2), Fraction(5, 4))
    assert dict(z.N) == {"l4": Fraction(3, 4), "e1": Fraction(1, 4)}
    assert m.pairing(z.P, z.P) == Fraction(5, 16)


@pytest.mark.parametrize("mid", list(MODELS))
def test_model_json_round_trip(mid):
    m = MODELS[mid]
    assert loads_model(dumps_model(m)) == m


def test_duplicate_or_positive_curves_rejected():
    m = MODELS["dp5"]
    d = __import__("json").loads(dumps_model(m))
    d["curves"].append(dict(d["curves"][0]))
    with pytest.raises(ValueError):
        loads_model(__import__("json").dumps(d))


@settings(max_examples=40)
@given(st.lists(st.integers(-5, 5), min_size=9, max_size=9))
def test_inverse_and_det(entries):
    mat = [[Fraction(entries[3 * i + j]) for j in range(3)] for i in range(3)]
    if det(mat) == 0:
        return
    inv = inverse(mat)
    prod = [[sum(mat[i][k] * inv[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    assert prod == [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]


def test_negative_definite():
    assert negative_definite([[Fraction(-2), Fraction(1)], [Fraction(1), Fraction(-2)]])
    assert not negative_definite([[Fraction(-1), Fraction(1)], [Fraction(1), Fraction(-1)]])
    assert not negative_definite([[Fraction(-1), Fraction(2)], [Fraction(2), Fraction(-1)]])
