"""Triple intersections on the 3-fold with basis (H, E, R), and the two del Pezzo pencils."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from ..exact import UniPoly

BASIS = ("H", "E", "R")


@dataclass(frozen=True)
class XRing:
    """Symmetric trilinear form given by its values on sorted index triples; missing ones are 0."""

    values: tuple[tuple[tuple[int, int, int], Fraction], ...]

    @classmethod
    def standard(cls, **overrides) -> "XRing":
        """``H^3 = 1``, ``H.E^2 = -4``, ``H.R^2 = -1``, ``E^3 = -16``, ``R^3 = -2``.

        Keyword overrides such as ``EEE=-15`` replace single entries.
        """
        base = {"HHH": 1, "HEE": -4, "HRR": -1, "EEE": -16, "RRR": -2}
        base.update(overrides)
        return cls.from_names(base)

    @classmethod
    def from_names(cls, named: dict[str, object]) -> "XRing":
        vals = {}
        for name, v in named.items():
            if len(name) != 3 or any(ch not in BASIS for ch in name):
                raise ValueError(f"bad monomial {name!r}")
            key = tuple(sorted(BASIS.index(ch) for ch in name))
            vals[key] = Fraction(v)
        return cls(tuple(sorted((k, v) for k, v in vals.items() if v)))

    def entry(self, i: int, j: int, k: int) -> Fraction:
        key = tuple(sorted((i, j, k)))
        for kk, v in self.values:
            if kk == key:
                return v
        return Fraction(0)

    def triple(self, x: Sequence, y: Sequence, z: Sequence):
        """``x.y.z`` for classes given by coordinates in (H, E, R); entries may be polynomials."""
        acc = Fraction(0)
        for i, j, k in product(range(3), repeat=3):
            if x[i] and y[j] and z[k]:
                t = self.entry(i, j, k)
                if t:
                    acc = x[i] * y[j] * z[k] * t + acc
        return acc

    def cube(self, x: Sequence):
        return self.triple(x, x, x)

    def table(self) -> dict[str, Fraction]:
        return {"".join(BASIS[i] for i in k): v for k, v in self.values}


def cls(h=0, e=0, r=0) -> tuple[Fraction, Fraction, Fraction]:
    return (Fraction(h), Fraction(e), Fraction(r))


ANTICANONICAL = cls(4, -1, -1)


def _lin(c0, c1) -> UniPoly:
    """``c0 + c1*u``."""
    return UniPoly([Fraction(c0), Fraction(c1)])


@dataclass(frozen=True)
class PencilChamber:
    lo: Fraction
    hi: Fraction
    P: tuple[UniPoly, UniPoly, UniPoly]
    N: tuple[UniPoly, UniPoly, UniPoly]


@dataclass(frozen=True)
class PencilCase:
    """Zariski data of ``-K_X - uS`` for ``S`` in one pencil, ``u`` in ``[0, tau]``."""

    name: str
    surface: tuple[Fraction, Fraction, Fraction]
    tau: Fraction
    chambers: tuple[PencilChamber, ...]
    surface_model: str
    citation: str

    def P(self, u) -> tuple:
        u = Fraction(u)
        for ch in self.chambers:
            if ch.lo <= u <= ch.hi:
                return tuple(c(u) for c in ch.P)
        raise ValueError(f"u = {u} outside [0, {self.tau}]")


H_MINUS_R = PencilCase(
    name="HminusR",
    surface=cls(1, 0, -1),
    tau=Fraction(2),
    chambers=(
        PencilChamber(Fraction(0), Fraction(1), (_lin(4, -1), _lin(-1, 0), _lin(-1, 1)), (_lin(0, 0),) * 3),
        PencilChamber(
            Fraction(1), Fraction(2), (_lin(4, -1), _lin(-1, 0), _lin(0, 0)), (_lin(0, 0), _lin(0, 0), _lin(-1, 1))
        ),
    ),
    surface_model="dp5",
    citation="section:proof, the pencil |H-R|",
)

TWO_H_MINUS_E = PencilCase(
    name="2HminusE",
    surface=cls(2, -1, 0),
    tau=Fraction(3, 2),
    chambers=(
        PencilChamber(Fraction(0), Fraction(1), (_lin(4, -2), _lin(-1, 1), _lin(-1, 0)), (_lin(0, 0),) * 3),
        PencilChamber(
            Fraction(1), Fraction(3, 2), (_lin(4, -2), _lin(0, 0), _lin(-1, 0)), (_lin(0, 0), _lin(-1, 1), _lin(0, 0))
        ),
    ),
    surface_model="dp6",
    citation="section:proof, the pencil |2H-E|",
)

PENCILS = {"HminusR": H_MINUS_R, "2HminusE": TWO_H_MINUS_E}
PENCIL_ALIASES = {"h-r": "HminusR", "hminusr": "HminusR", "2h-e": "2HminusE", "2hminuse": "2HminusE"}


def get_pencil(name: str) -> PencilCase:
    key = PENCIL_ALIASES.get(name.strip().lower(), name)
    if key not in PENCILS:
        raise KeyError(f"unknown pencil {name!r}; known: h-r, 2h-e")
    return PENCILS[key]


def _integrate(p: UniPoly, lo, hi) -> Fraction:
    prim = p.antiderivative()
    return prim(Fraction(hi)) - prim(Fraction(lo))


def s_x(pencil: PencilCase, ring: XRing | None = None) -> Fraction:
    """``(1/(-K_X)^3) * integral of P(u)^3`` over ``[0, tau]``."""
    ring = ring or XRing.standard()
    total = Fraction(0)
    for ch in pencil.chambers:
        total += _integrate(UniPoly.const(0) + ring.cube(ch.P), ch.lo, ch.hi)
    return total / ring.cube(ANTICANONICAL)


def restricted_volume(pencil: PencilCase, chamber: int, ring: XRing | None = None) -> UniPoly:
    """``(P(u)|_S)^2 = P(u)^2 . S`` on one chamber, as a polynomial in ``u``."""
    ring = ring or XRing.standard()
    ch = pencil.chambers[chamber]
    return UniPoly.const(0) + ring.triple(ch.P, ch.P, pencil.surface)


def pencil_problems(pencil: PencilCase, ring: XRing | None = None) -> list[str]:
    """Consistency of the transcribed chamber data: P + N = -K_X - uS, seams and P(tau)^3 = 0."""
    ring = ring or XRing.standard()
    out = []
    u = UniPoly.x()
    for i, ch in enumerate(pencil.chambers):
        for k in range(3):
            if ch.P[k] + ch.N[k] != ANTICANONICAL[k] - u * pencil.surface[k]:
                out.append(f"chamber {i}: P + N differs from -K_X - uS in {BASIS[k]}")
        if i:
            prev = pencil.chambers[i - 1]
            if prev.hi != ch.lo:
                out.append(f"chamber {i} not contiguous")
            seam = ch.lo
            if ring.cube(tuple(c(seam) for c in prev.P)) != ring.cube(tuple(c(seam) for c in ch.P)):
                out.append(f"P^3 jumps at u = {seam}")
    if pencil.chambers[0].lo != 0 or pencil.chambers[-1].hi != pencil.tau:
        out.append("chambers do not cover [0, tau]")
    if ring.cube(pencil.P(pencil.tau)) != 0:
        out.append("P(tau)^3 != 0")
    return out
