"""Flag invariants S_D, S(W; point) and the resulting lower bounds for delta at a point."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .exact import BiPoly, BoundFunction, RationalFn, piecewise_min_all
from .exact.integrate import integrate_poly_in_v
from .lattice import BLOWUP_OF, SurfaceModel, get_model, intersect, zariski_family
from .lattice.zariski import PiecewiseDecomposition

# log discrepancy of a curve on the surface and of the exceptional divisor of a point blowup
A_CURVE = 1
A_BLOWUP = 2


class StratumError(ValueError):
    pass


@dataclass(frozen=True)
class PointStratum:
    """A set of points described by catalog curves they lie on (``on``) and avoid (``off``).

    ``surface`` names the model.  For a point off every catalog curve leave ``on`` empty;
    the bound is then taken on the blowup at that point.
    """

    surface: str
    on: frozenset[str] = frozenset()
    off: frozenset[str] = frozenset()

    @classmethod
    def of(cls, surface: str, on=(), off=()) -> "PointStratum":
        return cls(surface, frozenset(on), frozenset(off))

    def model(self) -> SurfaceModel:
        return get_model(self.surface)

    def validate(self) -> SurfaceModel:
        m = self.model()
        for lab in self.on | self.off:
            if not m.has_curve(lab):
                raise StratumError(f"{m.id}: no curve {lab!r}")
        if self.on & self.off:
            raise StratumError(f"{sorted(self.on & self.off)} both on and off")
        on = sorted(self.on)
        for i, x in enumerate(on):
            for y in on[i + 1 :]:
                if not m.can_share_smooth_point(x, y):
                    raise StratumError(
                        f"{m.id}: {x} and {y} have product {m.curve_product(x, y)}, "
                        "so they share no smooth point"
                    )
        return m

    def refinements(self) -> list[frozenset[str]]:
        """Every possible exact set of catalog curves through a point of the stratum."""
        return self.validate().cliques(self.on, self.off)

    def label(self) -> str:
        parts = [f"on {{{', '.join(sorted(self.on))}}}"] if self.on else ["on no curve"]
        if self.off:
            parts.append(f"off {{{', '.join(sorted(self.off))}}}")
        return f"{self.surface}: " + ", ".join(parts)

    def to_json(self) -> dict:
        return {"surface": self.surface, "on": sorted(self.on), "off": sorted(self.off)}


def _volume(m: SurfaceModel) -> RationalFn:
    return RationalFn(m.volume_poly())


def _family(m: SurfaceModel, c: str) -> PiecewiseDecomposition:
    return zariski_family(m, c)


@lru_cache(maxsize=None)
def s_d(m: SurfaceModel, c: str) -> RationalFn:
    """Expected vanishing order of ``D`` along ``c``: the integral of vol(D - vC) over ``D^2``."""
    dec = _family(m, c)
    total = RationalFn(0)
    for ch in dec.chambers:
        total = total + integrate_poly_in_v(intersect(m, ch.P, ch.P), ch.lo, ch.hi, dec.a_interval)
    return total / _volume(m)


def ord_along(m: SurfaceModel, c: str, n: tuple[tuple[str, BiPoly], ...], through: frozenset[str]) -> BiPoly:
    """Local order at the point of ``N|_C``, summed over the components of ``N`` through it."""
    out = BiPoly()
    for lab, mult in n:
        if lab != c and lab in through:
            out = out + mult * m.curve_product(lab, c)
    return out


@lru_cache(maxsize=None)
def s_flag(m: SurfaceModel, c: str, through: frozenset[str]) -> RationalFn:
    """``S(W^C; P)`` for a point ``P`` on ``c`` whose catalog curves are exactly ``through``."""
    if c not in through:
        raise StratumError(f"the point must lie on {c}")
    dec = _family(m, c)
    curve = m.curve(c).divisor()
    first = RationalFn(0)
    second = RationalFn(0)
    for ch in dec.chambers:
        pc = intersect(m, ch.P, curve)
        ordp = ord_along(m, c, ch.N, through)
        if ordp:
            first = first + integrate_poly_in_v(ordp * pc, ch.lo, ch.hi, dec.a_interval)
        second = second + integrate_poly_in_v(pc * pc, ch.lo, ch.hi, dec.a_interval)
    return (first * 2 + second) / _volume(m)


def s_flag_curve_point(m: SurfaceModel, c: str, stratum: PointStratum) -> RationalFn:
    """Flag value for a stratum that pins down the curves through the point exactly."""
    refs = stratum.refinements()
    if len(refs) != 1:
        raise StratumError(f"{stratum.label()} does not fix the curves through the point: {len(refs)} cases")
    return s_flag(m, c, refs[0])


def blowup_o_strata(m_bl: SurfaceModel) -> list[frozenset[str]]:
    """Curve sets through a point ``O`` of the exceptional curve, ``E`` included."""
    e = m_bl.exceptional
    pool = [x for x in m_bl.labels if x != e and m_bl.can_share_smooth_point(x, e)]
    return m_bl.cliques(frozenset({e}), frozenset(), pool)


def s_flag_blowup(m_bl: SurfaceModel, through: frozenset[str] = frozenset()) -> tuple[RationalFn, RationalFn]:
    """``(S_D(E), S(W^E; O))`` on a blowup model for a point ``O`` of ``E`` on the curves ``through``."""
    e = m_bl.exceptional
    if e is None:
        raise StratumError(f"{m_bl.id} is not a blowup model")
    return s_d(m_bl, e), s_flag(m_bl, e, frozenset(through) | {e})


@dataclass(frozen=True)
class FlagTerm:
    """One ``A/S`` term entering a bound, with the data that produced it."""

    kind: str
    curve: str
    through: tuple[str, ...]
    value: RationalFn

    def describe(self) -> str:
        where = f" at a point on {{{', '.join(self.through)}}}" if self.through else ""
        return f"{self.kind}({self.curve}){where} = {self.value.format('a')}"


def flag_curve(m: SurfaceModel, stratum: PointStratum) -> str:
    for lab in m.flag_priority:
        if lab in stratum.on:
            return lab
    return sorted(stratum.on)[0]


def flag_terms(stratum: PointStratum) -> list[FlagTerm]:
    """The reciprocal terms whose minimum bounds delta on the stratum."""
    m = stratum.validate()
    if stratum.on:
        c = flag_curve(m, stratum)
        terms = [FlagTerm("A/S_D", c, (), s_d(m, c).reciprocal() * A_CURVE)]
        refs = stratum.refinements()
        if not refs:
            raise StratumError(f"{stratum.label()} is empty")
        for k in refs:
            terms.append(FlagTerm("1/S_W", c, tuple(sorted(k)), s_flag(m, c, k).reciprocal()))
        return terms
    if m.id not in BLOWUP_OF:
        raise StratumError(f"{m.id}: no blowup model for a point off every curve")
    bl = get_model(BLOWUP_OF[m.id])
    e = bl.exceptional
    terms = [FlagTerm("A/S_D", e, (), s_d(bl, e).reciprocal() * A_BLOWUP)]
    for k in blowup_o_strata(bl):
        terms.append(FlagTerm("1/S_W", e, tuple(sorted(k)), s_flag(bl, e, k).reciprocal()))
    return terms


def _dedupe(fns: list[RationalFn]) -> list[RationalFn]:
    out: list[RationalFn] = []
    for f in fns:
        if f not in out:
            out.append(f)
    return out


def delta_lower_bound(stratum: PointStratum) -> BoundFunction:
    """Piecewise minimum of the flag terms over the model's parameter interval."""
    m = stratum.validate()
    lo, hi = m.a_interval
    fns = _dedupe([t.value for t in flag_terms(stratum)])
    return piecewise_min_all([BoundFunction.single(lo, hi, f) for f in fns]).canonical()
