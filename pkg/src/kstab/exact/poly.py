"""Dense univariate and bivariate polynomials over Q, and rational functions.

Degrees stay below ten everywhere in this package, so everything is dense and
coefficient lists are plain tuples of ``Fraction``.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import zip_longest
from typing import Iterable, Mapping

from .numbers import QuadExt, _frac


def _trim(coeffs) -> tuple[Fraction, ...]:
    c = [_frac(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _term(c: Fraction, power: str, first: bool) -> str:
    sgn = "-" if c < 0 else "+"
    mag = abs(c)
    if power and mag == 1:
        body = power
    elif power:
        body = f"{mag}*{power}"
    else:
        body = str(mag)
    if first:
        return body if sgn == "+" else f"-{body}"
    return f" {sgn} {body}"


class UniPoly:
    """Polynomial in one variable, coefficients low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    def __setattr__(self, *_):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def const(cls, c) -> "UniPoly":
        return cls([c])

    @classmethod
    def x(cls) -> "UniPoly":
        return cls([0, 1])

    @classmethod
    def linear(cls, c0, c1) -> "UniPoly":
        return cls([c0, c1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    @staticmethod
    def _coerce(other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly([_frac(other)])

    def __add__(self, other):
        if not isinstance(other, (UniPoly, int, Fraction)):
            return NotImplemented
        o = self._coerce(other)
        return UniPoly(a + b for a, b in zip_longest(self.coeffs, o.coeffs, fillvalue=Fraction(0)))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        if not isinstance(other, (UniPoly, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UniPoly(c * other for c in self.coeffs)
        if not isinstance(other, UniPoly):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = UniPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return UniPoly(c / other for c in self.coeffs)
        return NotImplemented

    def __divmod__(self, other: "UniPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        q = [Fraction(0)] * max(0, len(rem) - dq)
        lc = other.lc
        for k in range(len(rem) - dq - 1, -1, -1):
            c = rem[k + dq] / lc
            q[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return UniPoly(q), UniPoly(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return q

    def __call__(self, x):
        acc = Fraction(0) if not isinstance(x, QuadExt) else QuadExt()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def antiderivative(self) -> "UniPoly":
        return UniPoly([0] + [c / (i + 1) for i, c in enumerate(self.coeffs)])

    def compose(self, inner: "UniPoly") -> "UniPoly":
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def monic(self) -> "UniPoly":
        return self / self.lc if self.coeffs else self

    @staticmethod
    def gcd(a: "UniPoly", b: "UniPoly") -> "UniPoly":
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def squarefree(self) -> "UniPoly":
        g = UniPoly.gcd(self, self.derivative())
        return self.exact_div(g).monic() if g.degree > 0 else self.monic()

    def sqrt(self) -> "UniPoly | None":
        """Exact polynomial square root, or ``None``."""
        if self.is_zero():
            return self
        if self.degree % 2:
            return None
        lc = self.lc
        r = QuadExt.sqrt(lc)
        if not r.is_rational():
            return None
        n = self.degree // 2
        root = [Fraction(0)] * (n + 1)
        root[n] = r.to_fraction()
        # match coefficients from the top down
        for k in range(n - 1, -1, -1):
            partial = UniPoly(root) * UniPoly(root)
            diff = self[n + k] - partial[n + k]
            root[k] = diff / (2 * root[n])
        cand = UniPoly(root)
        return cand if cand * cand == self else None

    def primitive(self) -> tuple[Fraction, "UniPoly"]:
        """``(c, q)`` with ``self == c*q``, ``q`` integral, primitive, positive leading coefficient."""
        from math import gcd

        if self.is_zero():
            return Fraction(0), self
        den, ints = self.integer_coeffs()
        g = 0
        for c in ints:
            g = gcd(g, c)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), UniPoly([c // g for c in ints])

    def integer_coeffs(self) -> tuple[int, list[int]]:
        """``(den, ints)`` with ``self == UniPoly(ints)/den``."""
        from math import lcm

        den = 1
        for c in self.coeffs:
            den = lcm(den, c.denominator)
        return den, [int(c * den) for c in self.coeffs]

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UniPoly.const(other)
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("UniPoly", self.coeffs))

    def format(self, var: str = "a") -> str:
        if not self.coeffs:
            return "0"
        out = ""
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            power = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            out += _term(c, power, not out)
        return out

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"UniPoly({self.format()})"


class BiPoly:
    """Polynomial in the parameter ``a`` and the flag variable ``v``.

    Stored as ``{(i, j): c}`` for the monomial ``c * a**i * v**j``.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        t = {}
        for k, c in (terms or {}).items():
            c = _frac(c)
            if c:
                t[k] = c
        object.__setattr__(self, "terms", t)

    def __setattr__(self, *_):
        raise AttributeError("BiPoly is immutable")

    @classmethod
    def const(cls, c) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def affine(cls, c0=0, ca=0, cv=0) -> "BiPoly":
        return cls({(0, 0): c0, (1, 0): ca, (0, 1): cv})

    @classmethod
    def from_a(cls, p: UniPoly) -> "BiPoly":
        return cls({(i, 0): c for i, c in enumerate(p.coeffs)})

    @classmethod
    def from_v(cls, p: UniPoly) -> "BiPoly":
        return cls({(0, j): c for j, c in enumerate(p.coeffs)})

    A: "BiPoly"
    V: "BiPoly"

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, i: int, j: int) -> Fraction:
        return self.terms.get((i, j), Fraction(0))

    @property
    def deg_a(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    @property
    def deg_v(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    @staticmethod
    def _coerce(other) -> "BiPoly":
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, UniPoly):
            return BiPoly.from_a(other)
        return BiPoly.const(other)

    def __add__(self, other):
        if not isinstance(other, (BiPoly, UniPoly, int, Fraction)):
            return NotImplemented
        o = self._coerce(other)
        t = dict(self.terms)
        for k, c in o.terms.items():
            t[k] = t.get(k, Fraction(0)) + c
        return BiPoly(t)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, (BiPoly, UniPoly, int, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return BiPoly({k: c * other for k, c in self.terms.items()})
        if isinstance(other, UniPoly):
            other = BiPoly.from_a(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        t: dict[tuple[int, int], Fraction] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                t[k] = t.get(k, Fraction(0)) + c1 * c2
        return BiPoly(t)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return BiPoly({k: c / other for k, c in self.terms.items()})
        return NotImplemented

    def __pow__(self, n: int):
        out = BiPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __call__(self, a, v):
        acc = Fraction(0)
        for (i, j), c in self.terms.items():
            acc = acc + c * a**i * v**j
        return acc

    def in_v(self) -> list[UniPoly]:
        """Coefficients as polynomials in ``a``, indexed by the power of ``v``."""
        out = [dict() for _ in range(self.deg_v + 1)]
        for (i, j), c in self.terms.items():
            out[j][i] = c
        return [UniPoly([d.get(i, 0) for i in range(max(d, default=-1) + 1)]) for d in out]

    def subs_v(self, p: UniPoly) -> UniPoly:
        """Substitute ``v = p(a)``; the result is a polynomial in ``a``."""
        acc = UniPoly()
        for c in reversed(self.in_v()):
            acc = acc * p + c
        return acc

    def subs_a(self, a) -> UniPoly:
        """Fix ``a``; the result is a polynomial in ``v``."""
        out: dict[int, Fraction] = {}
        for (i, j), c in self.terms.items():
            out[j] = out.get(j, Fraction(0)) + c * _frac(a) ** i
        return UniPoly([out.get(j, 0) for j in range(max(out, default=-1) + 1)])

    def diff_v(self) -> "BiPoly":
        return BiPoly({(i, j - 1): c * j for (i, j), c in self.terms.items() if j})

    def antiderivative_v(self) -> "BiPoly":
        return BiPoly({(i, j + 1): c / (j + 1) for (i, j), c in self.terms.items()})

    def as_a_poly(self) -> UniPoly:
        if self.deg_v > 0:
            raise ValueError("depends on v")
        return self.subs_v(UniPoly())

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, UniPoly)):
            other = BiPoly._coerce(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(("BiPoly", frozenset(self.terms.items())))

    def format(self, a: str = "a", v: str = "v") -> str:
        if not self.terms:
            return "0"
        out = ""
        for (i, j) in sorted(self.terms, key=lambda k: (-(k[0] + k[1]), -k[0])):
            c = self.terms[(i, j)]
            mon = []
            if i:
                mon.append(a if i == 1 else f"{a}^{i}")
            if j:
                mon.append(v if j == 1 else f"{v}^{j}")
            out += _term(c, "*".join(mon), not out)
        return out

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"BiPoly({self.format()})"


BiPoly.A = BiPoly({(1, 0): 1})
BiPoly.V = BiPoly({(0, 1): 1})


class RationalFn:
    """Quotient of two ``UniPoly``; reduced, with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = num if isinstance(num, UniPoly) else UniPoly.const(num)
        den = UniPoly.const(1) if den is None else (den if isinstance(den, UniPoly) else UniPoly.const(den))
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            num, den = UniPoly(), UniPoly.const(1)
        else:
            g = UniPoly.gcd(num, den)
            if g.degree > 0:
                num, den = num.exact_div(g), den.exact_div(g)
            lc = den.lc
            num, den = num / lc, den / lc
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *_):
        raise AttributeError("RationalFn is immutable")

    @staticmethod
    def _coerce(other) -> "RationalFn":
        if isinstance(other, RationalFn):
            return other
        if isinstance(other, (UniPoly, int, Fraction)):
            return RationalFn(other)
        raise TypeError

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return RationalFn(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, self.den)

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
        return RationalFn(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return RationalFn(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def reciprocal(self) -> "RationalFn":
        return RationalFn(1) / self

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def as_poly(self) -> UniPoly:
        if not self.is_polynomial():
            raise ArithmeticError(f"{self} is not a polynomial")
        return self.num / self.den.lc

    def derivative(self) -> "RationalFn":
        n, d = self.num, self.den
        return RationalFn(n.derivative() * d - n * d.derivative(), d * d)

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at {x}")
        return self.num(x) / d

    def compose(self, inner: UniPoly) -> "RationalFn":
        return RationalFn(self.num.compose(inner), self.den.compose(inner))

    def __eq__(self, other):
        if isinstance(other, (UniPoly, int, Fraction)):
            other = RationalFn(other)
        if not isinstance(other, RationalFn):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash(("RationalFn", self.num, self.den))

    def format(self, var: str = "a") -> str:
        if self.num.is_zero():
            return "0"
        cn, n = self.num.primitive()
        cd, d = self.den.primitive()
        k = cn / cd
        top = n.format(var)
        if sum(1 for c in n.coeffs if c) > 1 and (k != 1 or d.degree > 0):
            top = f"({top})"
        if k.numerator != 1 or top == "1":
            if k.numerator == -1 and top != "1":
                top = f"-{top}"
            else:
                top = str(k.numerator) if top == "1" else f"{k.numerator}*{top}"
        if d.degree == 0 and k.denominator == 1:
            return top
        bottom = d.format(var)
        if d.degree == 0:
            return f"{top}/{k.denominator}"
        if sum(1 for c in d.coeffs if c) > 1:
            bottom = f"({bottom})"
        if k.denominator != 1:
            bottom = f"({k.denominator}*{bottom})"
        return f"{top}/{bottom}"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"RationalFn({self.format()})"
