"""Exact scalars: rationals and sums of square roots.

``QuadExt`` holds ``p + q*sqrt(d)`` for squarefree ``d``. Internally it is a
Q-linear combination of square roots of distinct squarefree integers, so the
sum of two elements from different quadratic fields (which happens when a
piecewise integral has breakpoints in two fields) is still representable.
Zero testing is structural: square roots of distinct squarefree integers are
linearly independent over Q.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from numbers import Rational
from typing import Union

Scalar = Union[int, Fraction, "QuadExt"]


@lru_cache(maxsize=None)
def _prime_factors(n: int) -> tuple[int, ...]:
    out = []
    p = 2
    while p * p <= n:
        while n % p == 0:
            out.append(p)
            n //= p
        p += 1
    if n > 1:
        out.append(n)
    return tuple(out)


def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(k, m)`` with ``n == k*k*m`` and ``m`` squarefree."""
    if n <= 0:
        raise ValueError("expected a positive integer")
    k, m = 1, 1
    counts: dict[int, int] = {}
    for p in _prime_factors(n):
        counts[p] = counts.get(p, 0) + 1
    for p, e in counts.items():
        k *= p ** (e // 2)
        if e % 2:
            m *= p
    return k, m


def is_squarefree(n: int) -> bool:
    return n > 0 and squarefree_split(n)[0] == 1


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class QuadExt:
    """Exact real number ``p + q*sqrt(d)`` (and sums of such)."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, p=0, q=0, d: int = 1):
        p, q = _frac(p), _frac(q)
        if not isinstance(d, int) or not is_squarefree(d):
            raise ValueError(f"d must be a squarefree positive integer, got {d!r}")
        terms: dict[int, Fraction] = {}
        if d == 1:
            p, q = p + q, Fraction(0)
        if p:
            terms[1] = p
        if q:
            terms[d] = q
        self._terms = terms
        self._hash = None

    @classmethod
    def _from_terms(cls, terms: dict[int, Fraction]) -> "QuadExt":
        obj = cls.__new__(cls)
        obj._terms = {d: c for d, c in terms.items() if c}
        obj._hash = None
        return obj

    @classmethod
    def sqrt(cls, n) -> "QuadExt":
        """Exact square root of a nonnegative rational."""
        n = _frac(n)
        if n < 0:
            raise ValueError("square root of a negative number")
        if n == 0:
            return cls()
        k, m = squarefree_split(n.numerator * n.denominator)
        return cls(0, Fraction(k, n.denominator), m)

    # -- structure -------------------------------------------------------
    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    @property
    def fields(self) -> tuple[int, ...]:
        return tuple(sorted(d for d in self._terms if d != 1))

    def is_rational(self) -> bool:
        return not self.fields

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self._terms.get(1, Fraction(0))

    @property
    def d(self) -> int:
        f = self.fields
        if len(f) > 1:
            raise ValueError(f"{self} spans several quadratic fields {f}")
        return f[0] if f else 1

    @property
    def p(self) -> Fraction:
        if len(self.fields) > 1:
            raise ValueError(f"{self} spans several quadratic fields")
        return self._terms.get(1, Fraction(0))

    @property
    def q(self) -> Fraction:
        return self._terms.get(self.d, Fraction(0)) if self.d != 1 else Fraction(0)

    # -- arithmetic ------------------------------------------------------
    @staticmethod
    def _coerce(x) -> "QuadExt":
        if isinstance(x, QuadExt):
            return x
        return QuadExt(_frac(x))

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        t = dict(self._terms)
        for d, c in o._terms.items():
            t[d] = t.get(d, Fraction(0)) + c
        return QuadExt._from_terms(t)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt._from_terms({d: -c for d, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        t: dict[int, Fraction] = {}
        for d1, c1 in self._terms.items():
            for d2, c2 in o._terms.items():
                g = gcd(d1, d2)
                m = (d1 // g) * (d2 // g)
                t[m] = t.get(m, Fraction(0)) + c1 * c2 * g
        return QuadExt._from_terms(t)

    __rmul__ = __mul__

    def _conjugate(self, prime: int) -> "QuadExt":
        return QuadExt._from_terms(
            {d: (-c if d % prime == 0 else c) for d, c in self._terms.items()}
        )

    def inverse(self) -> "QuadExt":
        if not self._terms:
            raise ZeroDivisionError("division by zero")
        primes = sorted({p for d in self._terms for p in _prime_factors(d)})
        x, acc = self, QuadExt(1)
        for p in primes:
            c = x._conjugate(p)
            acc = acc * c
            x = x * c
        return acc * (1 / x.to_fraction())

    def __truediv__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        if o.is_rational():
            r = o.to_fraction()
            if r == 0:
                raise ZeroDivisionError("division by zero")
            return QuadExt._from_terms({d: c / r for d, c in self._terms.items()})
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out, base = QuadExt(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- order -----------------------------------------------------------
    def enclosure(self, bits: int = 64) -> tuple[Fraction, Fraction]:
        """Rational interval ``[lo, hi]`` containing the value."""
        lo = hi = self._terms.get(1, Fraction(0))
        scale = 1 << bits
        for d, c in self._terms.items():
            if d == 1:
                continue
            s = isqrt(d * scale * scale)
            a, b = c * Fraction(s, scale), c * Fraction(s + 1, scale)
            lo += min(a, b)
            hi += max(a, b)
        return lo, hi

    def sign(self) -> int:
        if not self._terms:
            return 0
        f = self.fields
        if not f:
            r = self._terms[1]
            return (r > 0) - (r < 0)
        if len(f) == 1:
            p, q, d = self.p, self.q, f[0]
            sp, sq = (p > 0) - (p < 0), (q > 0) - (q < 0)
            if sp == 0 or sp == sq:
                return sq if sp == 0 else sp
            return sp if p * p > q * q * d else sq
        bits = 32
        while True:
            lo, hi = self.enclosure(bits)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            bits *= 2

    def _cmp(self, other) -> int:
        return (self - other).sign()

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.to_fraction())
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __bool__(self):
        return bool(self._terms)

    def __float__(self):
        lo, hi = self.enclosure(64)
        return float((lo + hi) / 2)

    # -- display ---------------------------------------------------------
    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for d in sorted(self._terms):
            c = self._terms[d]
            if d == 1:
                parts.append(str(c))
            elif abs(c) == 1:
                parts.append(f"{'-' if c < 0 else ''}sqrt({d})")
            else:
                parts.append(f"{c}*sqrt({d})")
        out = parts[0]
        for part in parts[1:]:
            out += f" - {part[1:]}" if part.startswith("-") else f" + {part}"
        return out

    def __repr__(self):
        return f"QuadExt({self})"


def simplify(x: Scalar) -> Union[Fraction, QuadExt]:
    """Collapse a rational ``QuadExt`` to ``Fraction``; pass others through."""
    if isinstance(x, QuadExt):
        return x.to_fraction() if x.is_rational() else x
    return _frac(x)


def sign(x: Scalar) -> int:
    if isinstance(x, QuadExt):
        return x.sign()
    x = _frac(x)
    return (x > 0) - (x < 0)


def enclosure(x: Scalar, bits: int = 64) -> tuple[Fraction, Fraction]:
    if isinstance(x, QuadExt):
        return x.enclosure(bits)
    x = _frac(x)
    return x, x


def rational_between(lo: Scalar, hi: Scalar) -> Fraction:
    """A rational strictly inside ``(lo, hi)``; requires ``lo < hi``."""
    if not lo < hi:
        raise ValueError("empty interval")
    if not isinstance(lo, QuadExt) and not isinstance(hi, QuadExt):
        return (_frac(lo) + _frac(hi)) / 2
    bits = 16
    while True:
        _, lo_up = enclosure(lo, bits)
        hi_dn, _ = enclosure(hi, bits)
        if lo_up < hi_dn:
            mid = (lo_up + hi_dn) / 2
            # snap to a short dyadic when it stays inside
            for k in range(0, bits + 1):
                cand = Fraction(round(mid * (1 << k)), 1 << k)
                if lo_up < cand < hi_dn:
                    return cand
            return mid
        bits *= 2


def fmt(x: Scalar) -> str:
    """Exact text form: ``p/q`` or ``p/q + r/s*sqrt(d)``."""
    return str(simplify(x))
