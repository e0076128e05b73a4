"""Sturm sequences: exact real-root counting and sign certificates on intervals."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .numbers import Scalar, rational_between, sign
from .poly import UniPoly


class IntervalSign(Enum):
    ALL_POSITIVE = "AllPositive"
    ALL_NEGATIVE = "AllNegative"
    HAS_ZERO = "HasZero"


@dataclass(frozen=True)
class SignReport:
    sign: IntervalSign
    # for HAS_ZERO: an interval (lo, hi) holding exactly one root, closed
    # at both ends only when lo == hi (an exact rational root)
    witness: tuple | None = None

    @property
    def positive(self) -> bool:
        return self.sign is IntervalSign.ALL_POSITIVE

    @property
    def negative(self) -> bool:
        return self.sign is IntervalSign.ALL_NEGATIVE

    def __str__(self):
        if self.witness is None:
            return self.sign.value
        lo, hi = self.witness
        return f"{self.sign.value}({lo}, {hi})"


def sturm_sequence(p: UniPoly) -> list[UniPoly]:
    if p.is_zero():
        raise ValueError("identically zero")
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    seq.pop()
    return seq


def _variations(seq: list[UniPoly], x: Scalar) -> int:
    signs = [s for s in (sign(q(x)) for q in seq) if s]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def count_roots(p: UniPoly, lo: Scalar, hi: Scalar, seq=None) -> int:
    """Number of distinct real roots of ``p`` in ``(lo, hi]``."""
    if not lo < hi:
        return 0
    seq = seq or sturm_sequence(p)
    return _variations(seq, lo) - _variations(seq, hi)


def count_roots_open(p: UniPoly, lo: Scalar, hi: Scalar, seq=None) -> int:
    """Number of distinct real roots of ``p`` in ``(lo, hi)``."""
    n = count_roots(p, lo, hi, seq)
    return n - 1 if n and p(hi) == 0 else n


def isolate_root(p: UniPoly, lo: Scalar, hi: Scalar, seq=None) -> tuple:
    """Shrink ``(lo, hi)`` around one root of ``p`` it contains."""
    seq = seq or sturm_sequence(p)
    if count_roots_open(p, lo, hi, seq) == 0:
        raise ValueError("no root in interval")
    while True:
        mid = rational_between(lo, hi)
        if p(mid) == 0:
            return mid, mid
        if count_roots_open(p, lo, mid, seq):
            hi = mid
        else:
            lo = mid
        if count_roots_open(p, lo, hi, seq) == 1:
            return lo, hi


def isolate_all(p: UniPoly, lo: Scalar, hi: Scalar) -> list[tuple]:
    """Disjoint isolating intervals for every root in ``(lo, hi)``, left to right."""
    seq = sturm_sequence(p)
    out = []
    stack = [(lo, hi)]
    while stack:
        l, h = stack.pop()
        n = count_roots_open(p, l, h, seq)
        if n == 0:
            continue
        if n == 1:
            out.append((l, h))
            continue
        mid = rational_between(l, h)
        if p(mid) == 0:
            out.append((mid, mid))
        stack.append((l, mid))
        stack.append((mid, h))
    out.sort(key=lambda iv: iv[0])
    return out


def sturm_sign_on_interval(p: UniPoly, lo: Scalar, hi: Scalar) -> SignReport:
    """Exact sign of ``p`` on the open interval ``(lo, hi)``."""
    if p.is_zero():
        raise ValueError("identically zero")
    if not lo < hi:
        raise ValueError("empty interval")
    if p.degree == 0:
        return SignReport(IntervalSign.ALL_POSITIVE if p.lc > 0 else IntervalSign.ALL_NEGATIVE)
    seq = sturm_sequence(p)
    if count_roots_open(p, lo, hi, seq):
        return SignReport(IntervalSign.HAS_ZERO, isolate_root(p, lo, hi, seq))
    s = sign(p(rational_between(lo, hi)))
    return SignReport(IntervalSign.ALL_POSITIVE if s > 0 else IntervalSign.ALL_NEGATIVE)


def nonnegative_on(p: UniPoly, lo: Scalar, hi: Scalar) -> bool:
    """``p >= 0`` on ``[lo, hi]`` (roots allowed, sign changes not)."""
    if p.is_zero():
        return True
    if sign(p(lo)) < 0 or sign(p(hi)) < 0:
        return False
    if p.degree == 0:
        return p.lc > 0
    seq = sturm_sequence(p)
    roots = isolate_all(p, lo, hi) if count_roots_open(p, lo, hi, seq) else []
    probes = [lo] + [r for iv in roots for r in iv] + [hi]
    for a, b in zip(probes, probes[1:]):
        if a < b and sign(p(rational_between(a, b))) < 0:
            return False
    return all(sign(p(x)) >= 0 for x in probes)


def positive_on(p: UniPoly, lo: Scalar, hi: Scalar, closed: bool = False) -> bool:
    """``p > 0`` on ``(lo, hi)``, or on ``[lo, hi]`` when ``closed``."""
    if p.is_zero():
        return False
    if closed and (sign(p(lo)) <= 0 or sign(p(hi)) <= 0):
        return False
    return sturm_sign_on_interval(p, lo, hi).positive


__all__ = [
    "IntervalSign",
    "SignReport",
    "sturm_sequence",
    "count_roots",
    "count_roots_open",
    "isolate_root",
    "isolate_all",
    "sturm_sign_on_interval",
    "nonnegative_on",
    "positive_on",
]
