"""Exact real roots of rational polynomials whose relevant factors are at most quadratic."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import sympy

from .numbers import QuadExt, Scalar, simplify
from .poly import UniPoly
from .sturm import count_roots_open


class HighDegreeRoot(ArithmeticError):
    """A root inside the interval belongs to an irreducible factor of degree >= 3."""


@lru_cache(maxsize=4096)
def _factor(coeffs: tuple[Fraction, ...]) -> tuple[tuple[tuple[Fraction, ...], int], ...]:
    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x**i for i, c in enumerate(coeffs))
    _, factors = sympy.factor_list(sympy.Poly(expr, x, domain="QQ"))
    out = []
    for f, m in factors:
        cs = [Fraction(int(c.p), int(c.q)) for c in reversed(f.all_coeffs())]
        out.append((tuple(cs), int(m)))
    return tuple(out)


def factor(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Irreducible factors over Q with multiplicities (content dropped)."""
    if p.degree <= 0:
        return []
    return [(UniPoly(c), m) for c, m in _factor(p.coeffs)]


def _quadratic_roots(q: UniPoly) -> list[Scalar]:
    c, b, a = q.coeffs
    disc = b * b - 4 * a * c
    if disc < 0:
        return []
    r = QuadExt.sqrt(disc)
    return [simplify((-b - r) / (2 * a)), simplify((-b + r) / (2 * a))] if a > 0 else [
        simplify((-b + r) / (2 * a)),
        simplify((-b - r) / (2 * a)),
    ]


def real_roots(p: UniPoly, lo: Scalar | None = None, hi: Scalar | None = None) -> list[tuple[Scalar, int]]:
    """Real roots with multiplicity, sorted, restricted to the open interval ``(lo, hi)``."""
    out: list[tuple[Scalar, int]] = []
    for q, m in factor(p):
        if q.degree == 1:
            cands = [simplify(-q[0] / q[1])]
        elif q.degree == 2:
            cands = _quadratic_roots(q)
        else:
            if lo is None or hi is None or count_roots_open(q, lo, hi):
                raise HighDegreeRoot(f"root of irreducible {q} is not quadratic")
            continue
        for r in cands:
            if (lo is None or lo < r) and (hi is None or r < hi):
                out.append((r, m))
    out.sort(key=lambda t: QuadExt._coerce(t[0]))
    return out
