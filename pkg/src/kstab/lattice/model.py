"""Picard-lattice surface models: basis, Gram matrix, negative-curve catalog, polarization."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from ..exact import BiPoly, UniPoly, fmt, positive_on


class RankMismatch(ValueError):
    pass


def _f(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class DivisorClass:
    """Coordinates against a model basis; each entry is a ``BiPoly`` in ``(a, v)``."""

    coords: tuple[BiPoly, ...]

    @classmethod
    def of(cls, values: Sequence) -> "DivisorClass":
        return cls(tuple(v if isinstance(v, BiPoly) else BiPoly.const(v) for v in values))

    @classmethod
    def zero(cls, rank: int) -> "DivisorClass":
        return cls.of([0] * rank)

    @property
    def rank(self) -> int:
        return len(self.coords)

    def _check(self, other: "DivisorClass"):
        if self.rank != other.rank:
            raise RankMismatch(f"rank {self.rank} vs {other.rank}")

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._check(other)
        return DivisorClass(tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        self._check(other)
        return DivisorClass(tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(tuple(-x for x in self.coords))

    def scale(self, c) -> "DivisorClass":
        """Multiply by a rational or a ``BiPoly``."""
        return DivisorClass(tuple(x * c for x in self.coords))

    def at(self, a, v=0) -> tuple[Fraction, ...]:
        return tuple(_f(x(_f(a), _f(v))) for x in self.coords)

    def is_constant(self) -> bool:
        return all(x.deg_a <= 0 and x.deg_v <= 0 for x in self.coords)

    def format(self, labels: Sequence[str]) -> str:
        out = ""
        for lab, c in zip(labels, self.coords):
            if c.is_zero():
                continue
            text = c.format()
            if len(c.terms) > 1:
                term = f"({text})*{lab}"
                out += f" + {term}" if out else term
            elif text in ("1", "-1"):
                sgn = "-" if text == "-1" else "+"
                out += f" {sgn} {lab}" if out else ("-" if sgn == "-" else "") + lab
            elif text.startswith("-"):
                out += f" - {text[1:]}*{lab}" if out else f"{text}*{lab}"
            else:
                out += f" + {text}*{lab}" if out else f"{text}*{lab}"
        return out or "0"


@dataclass(frozen=True)
class Curve:
    label: str
    coords: tuple[Fraction, ...]

    def divisor(self) -> DivisorClass:
        return DivisorClass.of(self.coords)


@dataclass(frozen=True)
class SurfaceModel:
    """A surface known only through its Picard lattice and its negative curves.

    ``polarization`` is ``(constant part, coefficient of a)``, so ``D(a) = D0 + a*D1``.
    The parameter ranges over the half-open interval ``(a_lo, a_hi]``.
    """

    id: str
    basis: tuple[str, ...]
    gram: tuple[tuple[Fraction, ...], ...]
    curves: tuple[Curve, ...]
    polarization: tuple[tuple[Fraction, ...], tuple[Fraction, ...]]
    a_interval: tuple[Fraction, Fraction]
    exceptional: str | None = None
    flag_priority: tuple[str, ...] = ()
    description: str = ""
    citation: str = ""
    self_intersections: tuple[tuple[str, Fraction], ...] = field(default=(), compare=False)

    def __post_init__(self):
        n = len(self.basis)
        g = self.gram
        if len(g) != n or any(len(r) != n for r in g):
            raise RankMismatch(f"{self.id}: gram is not {n}x{n}")
        for i in range(n):
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise ValueError(f"{self.id}: gram not symmetric at ({i}, {j})")
        labels = [c.label for c in self.curves]
        if len(set(labels)) != len(labels):
            raise ValueError(f"{self.id}: duplicate curve labels")
        for c in self.curves:
            if len(c.coords) != n:
                raise RankMismatch(f"{self.id}: curve {c.label} has wrong rank")
            if self.self_int(c.label) >= 0:
                raise ValueError(f"{self.id}: catalog curve {c.label} is not negative")
        for lab, expected in self.self_intersections:
            if self.self_int(lab) != expected:
                raise ValueError(
                    f"{self.id}: {lab}^2 = {self.self_int(lab)} disagrees with declared {expected}"
                )
        if self.exceptional is not None and self.exceptional not in labels:
            raise ValueError(f"{self.id}: exceptional curve {self.exceptional} missing")
        for lab in self.flag_priority:
            if lab not in labels:
                raise ValueError(f"{self.id}: flag {lab} not in catalog")

    # -- basic lattice operations ------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(c.label for c in self.curves)

    def curve(self, label: str) -> Curve:
        for c in self.curves:
            if c.label == label:
                return c
        raise KeyError(f"{self.id}: no curve {label!r}")

    def has_curve(self, label: str) -> bool:
        return label in self.labels

    def pairing(self, x: Sequence, y: Sequence):
        """Bilinear form on coordinate vectors (rationals, BiPolys or a mix)."""
        if len(x) != self.rank or len(y) != self.rank:
            raise RankMismatch(f"{self.id}: expected rank {self.rank}")
        acc = Fraction(0)
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                gij = self.gram[i][j]
                if gij and yj:
                    acc = xi * yj * gij + acc
        return acc

    def self_int(self, label: str) -> Fraction:
        c = self.curve(label).coords
        return self.pairing(c, c)

    def curve_product(self, x: str, y: str) -> Fraction:
        return self.pairing(self.curve(x).coords, self.curve(y).coords)

    def polarization_class(self) -> DivisorClass:
        d0, d1 = self.polarization
        return DivisorClass(tuple(BiPoly.affine(c0, c1, 0) for c0, c1 in zip(d0, d1)))

    def polarization_at(self, a) -> tuple[Fraction, ...]:
        d0, d1 = self.polarization
        a = _f(a)
        return tuple(c0 + a * c1 for c0, c1 in zip(d0, d1))

    def volume_poly(self) -> UniPoly:
        """``D(a)^2`` as a polynomial in ``a``."""
        d = self.polarization_class()
        return intersect(self, d, d).as_a_poly()

    def can_share_smooth_point(self, x: str, y: str) -> bool:
        """Two catalog curves can pass through a common smooth point only if they meet with multiplicity >= 1."""
        return x == y or self.curve_product(x, y) >= 1

    def cliques(self, on: frozenset[str], off: frozenset[str], pool=None) -> list[frozenset[str]]:
        """All sets of catalog curves that contain ``on``, avoid ``off`` and can share a smooth point."""
        if any(not self.can_share_smooth_point(x, y) for x, y in combinations(sorted(on), 2)):
            return []
        pool = [c for c in (pool or self.labels) if c not in on and c not in off]
        pool = [c for c in pool if all(self.can_share_smooth_point(c, x) for x in on)]
        out = []
        for k in range(len(pool) + 1):
            for extra in combinations(pool, k):
                if all(self.can_share_smooth_point(x, y) for x, y in combinations(extra, 2)):
                    out.append(frozenset(on) | frozenset(extra))
        return out

    # -- certification -----------------------------------------------------
    def certify_polarization(self) -> list[str]:
        """Problems with the polarization on ``(a_lo, a_hi]``; empty when it is ample (or nef and big
        with only the exceptional curve orthogonal, for blowup models)."""
        lo, hi = self.a_interval
        d = self.polarization_class()
        problems = []
        vol = intersect(self, d, d).as_a_poly()
        if not positive_on(vol, lo, hi) or vol(hi) <= 0:
            problems.append(f"D^2 = {vol} is not positive on ({fmt(lo)}, {fmt(hi)}]")
        for c in self.curves:
            p = intersect(self, d, c.divisor()).as_a_poly()
            if c.label == self.exceptional:
                if not p.is_zero():
                    problems.append(f"D.{c.label} = {p}, expected 0 for the exceptional curve")
                continue
            if not (positive_on(p, lo, hi) and p(hi) > 0):
                problems.append(f"D.{c.label} = {p} is not positive on ({fmt(lo)}, {fmt(hi)}]")
        return problems

    def intersection_table(self) -> list[list[Fraction]]:
        return [[self.curve_product(x, y) for y in self.labels] for x in self.labels]


def intersect(m: SurfaceModel, x: DivisorClass, y: DivisorClass) -> BiPoly:
    """Intersection number of two classes, as a polynomial in ``(a, v)``."""
    if x.rank != m.rank or y.rank != m.rank:
        raise RankMismatch(f"{m.id}: expected rank {m.rank}, got {x.rank} and {y.rank}")
    out = m.pairing(x.coords, y.coords)
    return out if isinstance(out, BiPoly) else BiPoly.const(out)


def nonnegative_affine_on_box(f: BiPoly, a_lo, a_hi, v_lo: UniPoly, v_hi: UniPoly) -> bool:
    """An affine function of ``(a, v)`` is >= 0 on the trapezoid between two affine walls
    iff it is >= 0 at the four corners."""
    if f.deg_a > 1 or f.deg_v > 1 or f.coeff(1, 1):
        raise ValueError(f"{f} is not affine in (a, v)")
    for a in (a_lo, a_hi):
        for wall in (v_lo, v_hi):
            if f(a, wall(a)) < 0:
                return False
    return True
