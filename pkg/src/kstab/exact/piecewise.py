"""Piecewise rational functions of one parameter with quadratic-irrational breakpoints."""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .numbers import QuadExt, Scalar, fmt, rational_between, sign, simplify
from .poly import RationalFn, UniPoly
from .roots import real_roots
from .sturm import count_roots_open


class DomainMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Piece:
    lo: Scalar
    hi: Scalar
    fn: RationalFn
    label: str = ""

    def contains(self, x: Scalar) -> bool:
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class BoundFunction:
    """Ordered contiguous pieces ``[lo, hi) -> fn`` in the variable ``var``."""

    pieces: tuple[Piece, ...]
    var: str = "a"

    def __post_init__(self):
        ps = tuple(self.pieces)
        object.__setattr__(self, "pieces", ps)
        if not ps:
            raise ValueError("a bound needs at least one piece")
        for p in ps:
            if not p.lo < p.hi:
                raise ValueError(f"empty piece [{fmt(p.lo)}, {fmt(p.hi)}]")
            if p.fn.den.degree > 0 and count_roots_open(p.fn.den, p.lo, p.hi):
                raise ValueError(f"pole of {p.fn.format(self.var)} inside ({fmt(p.lo)}, {fmt(p.hi)})")
        for p, q in zip(ps, ps[1:]):
            if p.hi != q.lo:
                raise ValueError(f"pieces not contiguous at {fmt(p.hi)} / {fmt(q.lo)}")

    @classmethod
    def single(cls, lo, hi, fn, label: str = "", var: str = "a") -> "BoundFunction":
        return cls((Piece(simplify(lo), simplify(hi), _as_fn(fn), label),), var)

    @classmethod
    def from_parts(cls, parts, var: str = "a") -> "BoundFunction":
        """``parts`` is ``[lo, fn0, b1, fn1, ..., hi]``, alternately endpoints and functions."""
        ends = [simplify(x) for x in parts[0::2]]
        fns = [_as_fn(f) for f in parts[1::2]]
        return cls(tuple(Piece(l, h, f) for l, h, f in zip(ends, ends[1:], fns)), var)

    @property
    def lo(self) -> Scalar:
        return self.pieces[0].lo

    @property
    def hi(self) -> Scalar:
        return self.pieces[-1].hi

    @property
    def breakpoints(self) -> list[Scalar]:
        return [p.hi for p in self.pieces[:-1]]

    def piece_at(self, x: Scalar) -> Piece:
        if not self.lo <= x <= self.hi:
            raise ValueError(f"{fmt(x)} outside [{fmt(self.lo)}, {fmt(self.hi)}]")
        for p in self.pieces:
            if x < p.hi:
                return p
        return self.pieces[-1]

    def __call__(self, x: Scalar):
        return simplify(self.piece_at(x).fn(x))

    def canonical(self) -> "BoundFunction":
        """Merge neighbours carrying the same function."""
        out: list[Piece] = []
        for p in self.pieces:
            if out and out[-1].fn == p.fn:
                out[-1] = replace(out[-1], hi=p.hi)
            else:
                out.append(p)
        return BoundFunction(tuple(out), self.var)

    def same_as(self, other: "BoundFunction") -> bool:
        a, b = self.canonical(), other.canonical()
        if len(a.pieces) != len(b.pieces) or a.lo != b.lo or a.hi != b.hi:
            return False
        return all(p.hi == q.hi and p.fn == q.fn for p, q in zip(a.pieces, b.pieces))

    def differences(self, other: "BoundFunction") -> list[str]:
        """Human-readable list of where two bounds disagree; empty when equal."""
        a, b = self.canonical(), other.canonical()
        out = []
        if a.lo != b.lo or a.hi != b.hi:
            out.append(f"domain [{fmt(a.lo)}, {fmt(a.hi)}] vs [{fmt(b.lo)}, {fmt(b.hi)}]")
        if out:
            return out
        for lo, hi, p, q in _common_refinement(a, b):
            if p.fn != q.fn:
                out.append(f"on [{fmt(lo)}, {fmt(hi)}]: {p.fn.format(a.var)} vs {q.fn.format(b.var)}")
        return out

    def map_fn(self, op) -> "BoundFunction":
        return BoundFunction(tuple(replace(p, fn=op(p.fn)) for p in self.pieces), self.var)

    def restrict(self, lo: Scalar, hi: Scalar) -> "BoundFunction":
        out = []
        for p in self.pieces:
            l, h = max(p.lo, lo, key=_key), min(p.hi, hi, key=_key)
            if l < h:
                out.append(replace(p, lo=l, hi=h))
        return BoundFunction(tuple(out), self.var)

    def split_at(self, points) -> "BoundFunction":
        """Same function, with extra breakpoints inserted."""
        out = []
        for p in self.pieces:
            cuts = sorted((x for x in points if p.lo < x < p.hi), key=_key)
            ends = [p.lo, *cuts, p.hi]
            out.extend(replace(p, lo=l, hi=h) for l, h in zip(ends, ends[1:]))
        return BoundFunction(tuple(out), self.var)

    def sample_points(self, per_piece: int = 3) -> list[Fraction]:
        """Rational points strictly inside each piece."""
        out = []
        for p in self.pieces:
            lo = p.lo
            for _ in range(per_piece):
                x = rational_between(lo, p.hi)
                out.append(x)
                lo = x
        return out

    def format(self) -> str:
        parts = []
        for p in self.pieces:
            tag = f"  [{p.label}]" if p.label else ""
            parts.append(f"{p.fn.format(self.var)} on [{fmt(p.lo)}, {fmt(p.hi)}]{tag}")
        return "; ".join(parts)

    def __str__(self):
        return self.format()

    def to_json(self) -> dict:
        return {
            "var": self.var,
            "pieces": [
                {
                    "lo": fmt(p.lo),
                    "hi": fmt(p.hi),
                    "num": [str(c) for c in p.fn.num.coeffs],
                    "den": [str(c) for c in p.fn.den.coeffs],
                    "text": p.fn.format(self.var),
                    **({"label": p.label} if p.label else {}),
                }
                for p in self.pieces
            ],
        }


def _key(x: Scalar):
    return x if isinstance(x, QuadExt) else QuadExt(x)


def _as_fn(f) -> RationalFn:
    if isinstance(f, RationalFn):
        return f
    return RationalFn._coerce(f)


def _common_refinement(b1: BoundFunction, b2: BoundFunction) -> list[tuple[Scalar, Scalar, Piece, Piece]]:
    if b1.lo != b2.lo or b1.hi != b2.hi:
        raise DomainMismatch(
            f"domains differ: [{fmt(b1.lo)}, {fmt(b1.hi)}] vs [{fmt(b2.lo)}, {fmt(b2.hi)}]"
        )
    pts = sorted({*b1.breakpoints, *b2.breakpoints}, key=_key)
    ends = [b1.lo, *pts, b1.hi]
    out = []
    for l, h in zip(ends, ends[1:]):
        mid = rational_between(l, h)
        out.append((l, h, b1.piece_at(mid), b2.piece_at(mid)))
    return out


def piecewise_min(b1: BoundFunction, b2: BoundFunction) -> BoundFunction:
    """Exact pointwise minimum; new breakpoints are the crossings of the two functions."""
    if b1.var != b2.var:
        raise DomainMismatch(f"variables differ: {b1.var} vs {b2.var}")
    out: list[Piece] = []
    for l, h, p1, p2 in _common_refinement(b1, b2):
        diff = p1.fn - p2.fn
        if diff.num.is_zero():
            out.append(Piece(l, h, p1.fn, p1.label))
            continue
        cuts = [r for r, m in real_roots(diff.num, l, h) if m % 2]
        ends = [l, *cuts, h]
        for a, b in zip(ends, ends[1:]):
            x = rational_between(a, b)
            s = sign(diff.num(x)) * sign(diff.den(x))
            pick = p1 if s <= 0 else p2
            out.append(Piece(a, b, pick.fn, pick.label))
    merged: list[Piece] = []
    for p in out:
        if merged and merged[-1].fn == p.fn:
            merged[-1] = replace(merged[-1], hi=p.hi)
        else:
            merged.append(p)
    return BoundFunction(tuple(merged), b1.var)


def piecewise_min_all(bounds) -> BoundFunction:
    bounds = list(bounds)
    acc = bounds[0]
    for b in bounds[1:]:
        acc = piecewise_min(acc, b)
    return acc


@dataclass(frozen=True)
class AffineMap:
    """``src = shift + scale * dst``; for example ``a = 4 - u`` is ``AffineMap(4, -1)``."""

    shift: Fraction
    scale: Fraction
    src: str = "a"
    dst: str = "u"

    def __post_init__(self):
        object.__setattr__(self, "shift", Fraction(self.shift))
        object.__setattr__(self, "scale", Fraction(self.scale))
        if self.scale == 0:
            raise ValueError("degenerate affine map")

    def forward(self, dst_value: Scalar) -> Scalar:
        return simplify(self.shift + self.scale * dst_value)

    def backward(self, src_value: Scalar) -> Scalar:
        return simplify((src_value - self.shift) / self.scale)

    def inverse(self) -> "AffineMap":
        return AffineMap(-self.shift / self.scale, 1 / self.scale, self.dst, self.src)

    def __str__(self):
        s = f"{self.shift}"
        c = self.scale
        term = self.dst if abs(c) == 1 else f"{abs(c)}*{self.dst}"
        return f"{self.src} = {s} {'-' if c < 0 else '+'} {term}"


def substitute(bound: BoundFunction, m: AffineMap) -> BoundFunction:
    """Rewrite a bound in ``m.src`` as a bound in ``m.dst``."""
    if bound.var != m.src:
        raise DomainMismatch(f"bound is in {bound.var}, map expects {m.src}")
    inner = UniPoly([m.shift, m.scale])
    pieces = []
    for p in bound.pieces:
        lo, hi = m.backward(p.lo), m.backward(p.hi)
        if m.scale < 0:
            lo, hi = hi, lo
        pieces.append(Piece(lo, hi, p.fn.compose(inner), p.label))
    if m.scale < 0:
        pieces.reverse()
    return BoundFunction(tuple(pieces), m.dst)


def is_positive(bound: BoundFunction, closed_left: bool = True) -> tuple[bool, Scalar | None]:
    """``(True, None)`` if the bound is positive on its domain, else ``(False, witness)``."""
    from .sturm import sturm_sign_on_interval

    for i, p in enumerate(bound.pieces):
        for poly in (p.fn.num, p.fn.den):
            if poly.is_zero():
                return False, p.lo
            rep = sturm_sign_on_interval(poly, p.lo, p.hi)
            if rep.witness is not None:
                return False, rep.witness[0]
        x = rational_between(p.lo, p.hi)
        if sign(p.fn(x)) <= 0:
            return False, x
        if i == 0 and closed_left:
            if p.fn.den(p.lo) == 0 or sign(p.fn(p.lo)) <= 0:
                return False, p.lo
    return True, None
