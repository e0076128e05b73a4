"""Transcribed delta lower bounds, one record per lemma or corollary, and their verification.

Each record stores the bound exactly as stated (pieces and breakpoints as formula strings)
next to either a point stratum or, for corollaries, the records whose minimum it claims.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from functools import lru_cache

from .delta import PointStratum, delta_lower_bound, flag_terms
from .exact import BoundFunction, parse_rational_fn, parse_scalar, piecewise_min_all
from .exact.numbers import fmt
from .lattice import get_model, model_from_dict, register_model

PASS = "Pass"
FAIL = "Fail"
NOTED = "Mismatch-with-note"

C5 = "3*(a+2)/(a^2+2*a-2)"
GEN5 = ["2", "2*(a+2)/(a^2-2*a+4)", "5-sqrt(5)", "2*(2*a+4)/(a^2+6*a-12)", "3"]
A2_ON = ["2", "6*(a+2)/(a^2+2*a+4)", "(1+sqrt(17))/2", "6*(a+2)/((7*a+10)*(a-2))", "3"]
A2_OFF = [
    "2", "2*(a+2)/(a^2-2*a+4)", "5-sqrt(5)", "2*(2*a+4)/(a^2+6*a-12)",
    "(19-sqrt(21))/5", "6*(a+2)/((a-2)*(26-a))", "3",
]

BUILTIN_RECORDS: list[dict] = [
    {"id": "dP5-exc", "surface": "dp5", "citation": "lemma:dP5-e1-e2-e3-e4",
     "on": ["e1"], "expected": ["2", C5, "3"]},
    {"id": "dP5-lines", "surface": "dp5", "citation": "lemma:dP5-lines",
     "on": ["l12"], "off": ["e1", "e2", "e3", "e4"], "expected": ["2", C5, "3"]},
    {"id": "dP5-general", "surface": "dp5", "citation": "lemma:dP5-general-point",
     "off": "all", "expected": GEN5},
    {"id": "dP5-cor", "surface": "dp5", "citation": "corollary:dP5",
     "min_of": ["dP5-exc", "dP5-lines", "dP5-general"], "expected": ["2", C5, "3"]},
    {"id": "A1-e3", "surface": "dp5_a1", "citation": "lemma:dP5-A1-e3",
     "on": ["e3"], "expected": ["2", C5, "(1+sqrt(21))/2", "1/(a-2)", "3"]},
    {"id": "A1-e1e2", "surface": "dp5_a1", "citation": "lemma:dP5-A1-e1-e2",
     "on": ["e1"], "off": ["l1", "l2"], "expected": ["2", C5, "3"]},
    {"id": "A1-l3", "surface": "dp5_a1", "citation": "lemma:dP5-A1-L3",
     "on": ["l3"], "off": ["e3"], "expected": ["2", C5, "3"]},
    {"id": "A1-l4", "surface": "dp5_a1", "citation": "lemma:dP5-A1-L4",
     "on": ["l4"], "off": ["e1", "e2", "l3"], "expected": ["2", C5, "3"]},
    {"id": "A1-general", "surface": "dp5_a1", "citation": "lemma:dP5-A1-general-point",
     "off": "all", "expected": GEN5,
     "note": "the second case is printed with the condition on u where a is meant"},
    {"id": "A1-cor-on-exc", "surface": "dp5_a1", "citation": "corollary:dP5-A1 (first case)",
     "min_of": ["A1-e3", "A1-e1e2"], "expected": ["2", C5, "(1+sqrt(21))/2", "1/(a-2)", "3"],
     "note": "the second case is printed with the condition on u where a is meant"},
    {"id": "A1-cor-off-exc", "surface": "dp5_a1", "citation": "corollary:dP5-A1 (second case)",
     "min_of": ["A1-l3", "A1-l4", "A1-general"], "expected": ["2", C5, "3"]},
    {"id": "A2-e2", "surface": "dp5_a2", "citation": "lemma:dP5-A2-e2",
     "on": ["e2"], "expected": A2_ON},
    {"id": "A2-e1", "surface": "dp5_a2", "citation": "lemma:dP5-A2-e1-e2",
     "on": ["e1"], "off": ["l2"],
     "expected": ["2", "3*(a+2)/(2*a^2-5*a+8)", "(13+sqrt(57))/2", "3*(a+2)/((a+10)*(a-2))", "3"],
     "documented_mismatch": "the printed breakpoint (13+sqrt(57))/2 lies beyond a = 3, so the second "
     "piece never applies as printed; the two pieces cross at (13-sqrt(57))/2 inside (2, 3]"},
    {"id": "A2-general", "surface": "dp5_a2", "citation": "lemma:dP5-A2-general-point",
     "off": "all", "expected": A2_OFF},
    {"id": "A2-cor-on-exc", "surface": "dp5_a2", "citation": "corollary:dP5-A2 (first case)",
     "min_of": ["A2-e2", "A2-e1"], "expected": A2_ON},
    {"id": "A2-cor-off-exc", "surface": "dp5_a2", "citation": "corollary:dP5-A2 (second case)",
     "min_of": ["A2-general"], "expected": A2_OFF},
    {"id": "dP6-e1e2-on-lines", "surface": "dp6", "citation": "lemma:dP6-e1-e2 (first case)",
     "on": ["e1", "l1"], "expected": ["1", "2/a", "2"]},
    {"id": "dP6-e1e2-off-lines", "surface": "dp6", "citation": "lemma:dP6-e1-e2 (second case)",
     "on": ["e1"], "off": ["l1", "l2", "l3", "l4"],
     "expected": ["1", "3*(a+1)/(a^2+a+1)", "(1+sqrt(33))/4", "1/(a-1)", "2"]},
    {"id": "dP6-lines", "surface": "dp6", "citation": "lemma:dP6-lines",
     "on": ["l1"], "off": ["e1", "e2"], "expected": ["1", "2/a", "2"]},
    {"id": "dP6-general", "surface": "dp6", "citation": "lemma:dP6-general-point",
     "off": "all", "expected": ["1", "3*(a+1)/(a^2+a+1)", "(sqrt(21)-1)/2", "2*(a+1)/(a^2+a-1)", "2"]},
]


class RegistryError(ValueError):
    pass


def expected_bound(parts: list[str], lo, hi) -> tuple[BoundFunction, list[str]]:
    """Build the stated bound on ``[lo, hi]`` from ``[start, fn, break, fn, ..., end]``.

    Pieces whose stated range falls outside the model interval are dropped and reported.
    """
    if len(parts) < 3 or len(parts) % 2 == 0:
        raise RegistryError(f"expected [start, fn, break, ..., fn, end], got {parts}")
    ends = [parse_scalar(x) for x in parts[0::2]]
    fns = [parse_rational_fn(x, "a") for x in parts[1::2]]
    if ends[0] != lo or ends[-1] != hi:
        raise RegistryError(f"stated range [{fmt(ends[0])}, {fmt(ends[-1])}] is not [{fmt(lo)}, {fmt(hi)}]")
    notes = []
    parts_out: list = [lo]
    for fn, l, h in zip(fns, ends, ends[1:]):
        if h <= l or l >= hi:
            notes.append(f"piece {fn.format('a')} stated on [{fmt(l)}, {fmt(h)}] is empty inside [{fmt(lo)}, {fmt(hi)}]")
            continue
        parts_out += [fn, min(h, hi)]
    parts_out[-1] = hi
    return BoundFunction.from_parts(parts_out, "a").canonical(), notes


@dataclass(frozen=True)
class LemmaRecord:
    id: str
    surface: str
    citation: str
    expected_parts: tuple[str, ...]
    on: tuple[str, ...] = ()
    off: tuple[str, ...] = ()
    min_of: tuple[str, ...] = ()
    note: str = ""
    documented_mismatch: str = ""

    @classmethod
    def from_dict(cls, d: dict) -> "LemmaRecord":
        try:
            off = d.get("off", ())
            if off == "all":
                off = get_model(d["surface"]).labels
            return cls(
                id=d["id"],
                surface=d["surface"],
                citation=d.get("citation", ""),
                expected_parts=tuple(d["expected"]),
                on=tuple(d.get("on", ())),
                off=tuple(off),
                min_of=tuple(d.get("min_of", ())),
                note=d.get("note", ""),
                documented_mismatch=d.get("documented_mismatch", ""),
            )
        except KeyError as exc:
            raise RegistryError(f"record {d.get('id', '?')}: missing field {exc}") from exc

    @property
    def is_corollary(self) -> bool:
        return bool(self.min_of)

    def stratum(self) -> PointStratum:
        return PointStratum.of(self.surface, self.on, self.off)

    def stratum_json(self):
        if self.is_corollary:
            return {"surface": self.surface, "min_of": list(self.min_of)}
        return self.stratum().to_json()

    def expected(self) -> tuple[BoundFunction, list[str]]:
        lo, hi = get_model(self.surface).a_interval
        return expected_bound(list(self.expected_parts), lo, hi)


@dataclass
class LemmaResult:
    record: LemmaRecord
    expected: BoundFunction
    computed: BoundFunction
    status: str
    differences: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    terms: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        r = self.record
        out = {
            "id": r.id,
            "citation": r.citation,
            "stratum": r.stratum_json(),
            "expected": self.expected.to_json(),
            "computed": self.computed.to_json(),
            "status": self.status,
        }
        if self.differences:
            out["differences"] = self.differences
        if self.notes:
            out["notes"] = self.notes
        return out


class Registry:
    def __init__(self, records: list[LemmaRecord]):
        ids = [r.id for r in records]
        if len(set(ids)) != len(ids):
            raise RegistryError("duplicate record ids")
        self.records = {r.id: r for r in records}
        for r in records:
            for dep in r.min_of:
                if dep not in self.records:
                    raise RegistryError(f"{r.id}: unknown constituent {dep}")
        self._computed: dict[str, BoundFunction] = {}

    @property
    def ids(self) -> list[str]:
        return list(self.records)

    def get(self, rid: str) -> LemmaRecord:
        if rid not in self.records:
            raise KeyError(f"unknown record {rid!r}; known: {', '.join(self.records)}")
        return self.records[rid]

    def computed(self, rid: str, _seen: tuple = ()) -> BoundFunction:
        if rid in _seen:
            raise RegistryError(f"cycle through {rid}")
        if rid not in self._computed:
            r = self.get(rid)
            if r.is_corollary:
                parts = [self.computed(dep, _seen + (rid,)) for dep in r.min_of]
                self._computed[rid] = piecewise_min_all(parts).canonical()
            else:
                self._computed[rid] = delta_lower_bound(r.stratum())
        return self._computed[rid]

    def verify(self, rid: str, strict: bool = False) -> LemmaResult:
        r = self.get(rid)
        expected, notes = r.expected()
        computed = self.computed(rid)
        diffs = [] if computed.same_as(expected) else computed.differences(expected)
        if not diffs:
            status = PASS
        elif r.documented_mismatch and not strict:
            status = NOTED
        else:
            status = FAIL
        if r.note:
            notes.append(r.note)
        if diffs and r.documented_mismatch:
            notes.append(r.documented_mismatch)
        terms = []
        if not r.is_corollary:
            terms = [t.describe() for t in flag_terms(r.stratum())]
        return LemmaResult(r, expected, computed, status, diffs, notes, terms)


def load_bundle(path: str) -> list[LemmaRecord]:
    """Read a JSON bundle ``{"models": [...], "lemmas": [...]}``; models are registered first."""
    with open(path) as fh:
        doc = json.load(fh)
    for md in doc.get("models", ()):
        register_model(model_from_dict(md), md.get("blowup_of"))
    return [LemmaRecord.from_dict(d) for d in doc.get("lemmas", ())]


@lru_cache(maxsize=None)
def _builtin_registry() -> Registry:
    return Registry([LemmaRecord.from_dict(d) for d in BUILTIN_RECORDS])


def default_registry(bundle: str | None = None) -> Registry:
    """Built-in records, or the bundle named by ``bundle`` or the ``KSTAB_REGISTRY`` variable."""
    path = bundle or os.environ.get("KSTAB_REGISTRY")
    if path:
        return Registry(load_bundle(path))
    return _builtin_registry()


def verify_lemma(rid: str, strict: bool = False) -> LemmaResult:
    return default_registry().verify(rid, strict)


def verify_all(strict: bool = False, registry: Registry | None = None) -> list[LemmaResult]:
    reg = registry or default_registry()
    return [reg.verify(rid, strict) for rid in reg.ids]
