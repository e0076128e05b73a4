"""Zariski decomposition on a surface model, at a fixed class and along D(a) - vC."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from ..exact import BiPoly, UniPoly, fmt, isolate_all, nonnegative_on, sign
from .model import DivisorClass, SurfaceModel, intersect, nonnegative_affine_on_box


class ZariskiError(ValueError):
    pass


class NotPseudoEffective(ZariskiError):
    pass


class CatalogIncomplete(ZariskiError):
    pass


class ChamberSplitError(ZariskiError):
    """A wall ordering changes inside the parameter interval; split the interval at ``at``."""

    def __init__(self, msg: str, at=None):
        super().__init__(msg)
        self.at = at


# -- exact linear algebra over Q -------------------------------------------

def det(m: Sequence[Sequence[Fraction]]) -> Fraction:
    a = [list(map(Fraction, r)) for r in m]
    n = len(a)
    out = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            out = -out
        out *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
    return out


def inverse(m: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    a = [list(map(Fraction, r)) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [r[n:] for r in a]


def negative_definite(m: Sequence[Sequence[Fraction]]) -> bool:
    """Leading principal minors alternate in sign, starting negative."""
    for k in range(1, len(m) + 1):
        d = det([r[:k] for r in m[:k]])
        if sign(d) != (-1) ** k:
            return False
    return True


def _support_gram(m: SurfaceModel, support: Sequence[str]) -> list[list[Fraction]]:
    return [[m.curve_product(x, y) for y in support] for x in support]


def _check_support(m: SurfaceModel, support: Sequence[str]) -> list[list[Fraction]]:
    # every curve collected so far lies in the negative part of a pseudo-effective class,
    # whose support is negative definite; so a singular or indefinite Gram rules the class out
    g = _support_gram(m, support)
    if det(g) == 0:
        raise NotPseudoEffective(
            f"{m.id}: outside effective cone, singular system on {{{', '.join(support)}}}"
        )
    if not negative_definite(g):
        raise NotPseudoEffective(
            f"{m.id}: outside effective cone, support {{{', '.join(support)}}} is not negative definite"
        )
    return inverse(g)


# -- fixed class ------------------------------------------------------------

@dataclass(frozen=True)
class ZariskiFixed:
    P: tuple[Fraction, ...]
    N: tuple[tuple[str, Fraction], ...]

    def n_dict(self) -> dict[str, Fraction]:
        return dict(self.N)


def zariski_fixed(m: SurfaceModel, d: Sequence) -> ZariskiFixed:
    """Zariski decomposition of a rational class by support growing."""
    d = tuple(Fraction(x) for x in d)
    if len(d) != m.rank:
        raise ValueError(f"{m.id}: expected {m.rank} coordinates")
    support: list[str] = []
    while True:
        if support:
            ginv = _check_support(m, support)
            rhs = [m.pairing(d, m.curve(c).coords) for c in support]
            x = [sum(ginv[i][j] * rhs[j] for j in range(len(support))) for i in range(len(support))]
        else:
            x = []
        p = list(d)
        for coef, lab in zip(x, support):
            for k, ck in enumerate(m.curve(lab).coords):
                p[k] -= coef * ck
        neg = [c.label for c in m.curves if c.label not in support and m.pairing(p, c.coords) < 0]
        if not neg:
            break
        support.extend(neg)
    if any(c < 0 for c in x):
        raise NotPseudoEffective(f"{m.id}: outside effective cone, negative multiplicity in N")
    if m.pairing(p, p) < 0:
        raise NotPseudoEffective(f"{m.id}: outside effective cone, P^2 < 0")
    if m.pairing(p, m.polarization_at(m.a_interval[1])) < 0:
        raise NotPseudoEffective(f"{m.id}: outside effective cone, P.D < 0")
    n = tuple((lab, c) for lab, c in zip(support, x) if c)
    return ZariskiFixed(tuple(p), n)


# -- parametric family D(a) - vC ---------------------------------------------

@dataclass(frozen=True)
class Chamber:
    lo: UniPoly
    hi: UniPoly
    P: DivisorClass
    N: tuple[tuple[str, BiPoly], ...]

    @property
    def support(self) -> tuple[str, ...]:
        return tuple(lab for lab, _ in self.N)


@dataclass(frozen=True)
class PiecewiseDecomposition:
    model_id: str
    curve: str
    a_interval: tuple[Fraction, Fraction]
    chambers: tuple[Chamber, ...]
    tau: UniPoly

    def chamber_at(self, a, v) -> Chamber:
        a, v = Fraction(a), Fraction(v)
        if not (v >= 0 and v <= self.tau(a)):
            raise NotPseudoEffective(f"v = {v} outside [0, {self.tau(a)}] at a = {a}")
        for ch in self.chambers:
            if v <= ch.hi(a):
                return ch
        return self.chambers[-1]

    def evaluate(self, a, v) -> ZariskiFixed:
        ch = self.chamber_at(a, v)
        a, v = Fraction(a), Fraction(v)
        p = tuple(Fraction(c(a, v)) for c in ch.P.coords)
        n = tuple((lab, Fraction(c(a, v))) for lab, c in ch.N if c(a, v))
        return ZariskiFixed(p, n)

    def format(self, m: SurfaceModel) -> str:
        lines = [f"{m.id}, C = {self.curve}, tau = {self.tau}"]
        for ch in self.chambers:
            nn = " + ".join(f"({c})*{lab}" for lab, c in ch.N) or "0"
            lines.append(f"  {ch.lo} <= v <= {ch.hi}: P = {ch.P.format(m.basis)}; N = {nn}")
        return "\n".join(lines)


def _affine_in_a(p: UniPoly) -> UniPoly:
    if p.degree > 1:
        raise ZariskiError(f"wall {p} is not affine in a")
    return p


def _affine_root(p: UniPoly, lo, hi):
    """The root of an affine polynomial strictly inside ``(lo, hi)``, if any."""
    if p.degree == 1:
        r = -p[0] / p[1]
        if lo < r < hi:
            return r
    elif p.degree > 1:
        roots = isolate_all(p, lo, hi)
        if roots:
            raise ZariskiError(f"{p} changes sign at an irrational parameter")
    return None


def _first_wall(cands: list[tuple[UniPoly, object]], lo, hi):
    """The candidate that is <= every other on [lo, hi], with the tags of all identical to it."""
    for w, _ in cands:
        if all(nonnegative_on(o - w, lo, hi) for o, _ in cands):
            return w, [t for o, t in cands if o == w]
    # report where two walls cross
    for i, (w1, _) in enumerate(cands):
        for w2, _ in cands[i + 1 :]:
            diff = w1 - w2
            if not diff.is_zero():
                r = _affine_root(diff, lo, hi)
                if r is not None:
                    raise ChamberSplitError(f"walls {w1} and {w2} cross inside ({fmt(lo)}, {fmt(hi)})", r)
    raise ChamberSplitError("wall order is ambiguous")


def _tau_candidates(p2: BiPoly) -> list[UniPoly]:
    """Roots in v of ``P(v)^2``, which is quadratic in v with constant leading coefficient."""
    cs = p2.in_v() + [UniPoly()] * 3
    c0, c1, c2 = cs[0], cs[1], cs[2]
    if p2.deg_v > 2 or c2.degree > 0:
        raise ZariskiError(f"P^2 = {p2} is not quadratic in v with constant leading term")
    if c2.is_zero():
        if c1.is_zero():
            return []
        q, r = divmod(-c0, c1)
        if not r.is_zero():
            raise ZariskiError(f"threshold {-c0}/{c1} is not polynomial in a")
        return [q]
    A = c2.lc
    disc = c1 * c1 - c0 * (4 * A)
    root = disc.sqrt()
    if root is None:
        raise ZariskiError(f"discriminant {disc} of P^2 is not a square in Q[a]")
    return [(-c1 - root) / (2 * A), (-c1 + root) / (2 * A)]


def _solve_support(m: SurfaceModel, target: DivisorClass, support: list[str]):
    if not support:
        return target, []
    ginv = _check_support(m, support)
    rhs = [intersect(m, target, m.curve(c).divisor()) for c in support]
    x = []
    for i in range(len(support)):
        acc = BiPoly()
        for j in range(len(support)):
            if ginv[i][j]:
                acc = acc + rhs[j] * ginv[i][j]
        x.append(acc)
    p = target
    for coef, lab in zip(x, support):
        p = p - m.curve(lab).divisor().scale(coef)
    return p, x


def zariski_family(m: SurfaceModel, c: str, a_interval: tuple | None = None) -> PiecewiseDecomposition:
    """Chamber decomposition of ``D(a) - vC`` for ``v`` in ``[0, tau(a)]``."""
    return _zariski_family(m, c, tuple(a_interval) if a_interval else m.a_interval)


@lru_cache(maxsize=None)
def _zariski_family(m: SurfaceModel, c: str, a_interval: tuple) -> PiecewiseDecomposition:
    lo, hi = a_interval
    curve = m.curve(c).divisor()
    target = m.polarization_class() - curve.scale(BiPoly.V)
    start = UniPoly()
    support: list[str] = []
    chambers: list[Chamber] = []
    for _ in range(4 * len(m.curves) + 4):
        # absorb curves that turn negative exactly at the chamber start
        while True:
            p, x = _solve_support(m, target, support)
            entering = []
            for cv in m.curves:
                if cv.label in support:
                    continue
                f = intersect(m, p, cv.divisor())
                at_start = f.subs_v(start)
                if at_start.is_zero():
                    if f.coeff(0, 1) < 0:
                        entering.append(cv.label)
                elif not nonnegative_on(at_start, lo, hi):
                    raise ChamberSplitError(
                        f"P.{cv.label} = {at_start} changes sign at the wall v = {start}",
                        _affine_root(at_start, lo, hi),
                    )
            if not entering:
                break
            support.extend(entering)
        # candidate walls where a curve outside the support becomes negative
        cands: list[tuple[UniPoly, object]] = []
        for cv in m.curves:
            if cv.label in support:
                continue
            f = intersect(m, p, cv.divisor())
            slope = f.coeff(0, 1)
            if slope < 0:
                w = _affine_in_a(f.subs_v(UniPoly()) / -slope)
                cands.append((w, cv.label))
        p2 = intersect(m, p, p)
        # P^2 is nonincreasing in v, so it stays positive up to the first curve wall
        # unless it already vanishes there
        wall = tags = None
        if cands:
            wall, tags = _first_wall(cands, lo, hi)
            at_wall = p2.subs_v(wall)
            if at_wall.is_zero():
                tags = tags + ["tau"]
            elif not nonnegative_on(at_wall, lo, hi):
                wall = None
        if wall is None:
            roots = [r for r in _tau_candidates(p2) if r != start and nonnegative_on(r - start, lo, hi)]
            if not roots:
                raise CatalogIncomplete(f"{m.id}: no wall or threshold found after v = {start}")
            wall, _ = _first_wall([(r, "tau") for r in roots], lo, hi)
            tags = ["tau"]
        n = tuple((lab, coef) for lab, coef in zip(support, x))
        chambers.append(Chamber(start, wall, p, n))
        if "tau" in tags:
            return PiecewiseDecomposition(m.id, c, (lo, hi), tuple(chambers), wall)
        support.extend(t for t in tags if t != "tau")
        start = wall
    raise ZariskiError(f"{m.id}: too many chambers for {c}")


def zariski_family_split(m: SurfaceModel, c: str, a_interval: tuple | None = None) -> list[PiecewiseDecomposition]:
    """Like ``zariski_family``, but cut the parameter interval where two walls cross."""
    lo, hi = tuple(a_interval) if a_interval else m.a_interval
    try:
        return [zariski_family(m, c, (lo, hi))]
    except ChamberSplitError as exc:
        if exc.at is None or not lo < exc.at < hi:
            raise
        return zariski_family_split(m, c, (lo, exc.at)) + zariski_family_split(m, c, (exc.at, hi))


def pseff_threshold(m: SurfaceModel, c: str) -> UniPoly:
    return zariski_family(m, c).tau


# -- invariants ----------------------------------------------------------------

def certify_family(m: SurfaceModel, dec: PiecewiseDecomposition) -> list[str]:
    """Check the decomposition invariants symbolically; returns a list of problems."""
    lo, hi = dec.a_interval
    problems = []
    chs = dec.chambers
    if not chs[0].lo.is_zero():
        problems.append("first chamber does not start at v = 0")
    # on a blowup the exceptional curve is orthogonal to D and may be absorbed at once
    if chs[0].N and m.exceptional is None:
        problems.append("N is not zero on the first chamber")
    if chs[-1].hi != dec.tau:
        problems.append("last chamber does not end at tau")
    curve = m.curve(dec.curve).divisor()
    for i, ch in enumerate(chs):
        if i and ch.lo != chs[i - 1].hi:
            problems.append(f"chamber {i} not contiguous")
        if not nonnegative_on(ch.hi - ch.lo, lo, hi):
            problems.append(f"chamber {i} has hi < lo somewhere")
        p2 = intersect(m, ch.P, ch.P)
        pc = intersect(m, ch.P, curve)
        if p2.diff_v() != pc * -2:
            problems.append(f"chamber {i}: d/dv P^2 != -2 P.C")
        if ch.N and not negative_definite(_support_gram(m, ch.support)):
            problems.append(f"chamber {i}: support not negative definite")
        for lab, mult in ch.N:
            if not intersect(m, ch.P, m.curve(lab).divisor()).is_zero():
                problems.append(f"chamber {i}: P.{lab} != 0")
            if not nonnegative_affine_on_box(mult, lo, hi, ch.lo, ch.hi):
                problems.append(f"chamber {i}: multiplicity of {lab} negative")
        for cv in m.curves:
            f = intersect(m, ch.P, cv.divisor())
            if not nonnegative_affine_on_box(f, lo, hi, ch.lo, ch.hi):
                problems.append(f"chamber {i}: P.{cv.label} negative, P not nef")
        recon = ch.P
        for lab, mult in ch.N:
            recon = recon + m.curve(lab).divisor().scale(mult)
        if recon != m.polarization_class() - curve.scale(BiPoly.V):
            problems.append(f"chamber {i}: P + N != D - vC")
        if i:
            prev = chs[i - 1]
            s1 = intersect(m, prev.P, prev.P).subs_v(ch.lo)
            s2 = p2.subs_v(ch.lo)
            if s1 != s2:
                problems.append(f"P^2 discontinuous at v = {ch.lo}")
        if not nonnegative_affine_on_box(pc, lo, hi, ch.lo, ch.hi):
            problems.append(f"chamber {i}: P.C negative")
    last = chs[-1]
    if not intersect(m, last.P, last.P).subs_v(dec.tau).is_zero():
        problems.append("P(tau)^2 != 0")
    return problems
