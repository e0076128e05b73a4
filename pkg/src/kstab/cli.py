"""``kstab`` command line: full verification report and single-value queries.

Exit status is 0 when every machine-checked item passes, 1 when one fails, and 2 for usage
errors, unknown ids and internal errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import __version__
from .exact import BoundFunction, fmt, simplify
from .lattice import get_model, zariski_family_split, zariski_fixed
from .registry import FAIL, NOTED, PASS, default_registry

MACHINE = "machine-checked"


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not an exact rational: {text!r}") from None


def _rationals(text: str) -> list[Fraction]:
    return [_rational(x) for x in text.split(",")]


def _labels(text: str | None) -> list[str]:
    return [x.strip() for x in text.split(",") if x.strip()] if text else []


# -- verify-all ----------------------------------------------------------------

def _samples(bound: BoundFunction, n: int) -> list[list[str]]:
    """``n + 1`` evenly spaced rational points with exact values; endpoints must be rational."""
    lo, hi = simplify(bound.lo), simplify(bound.hi)
    out = []
    for k in range(n + 1):
        x = lo + (hi - lo) * Fraction(k, n)
        out.append([fmt(x), fmt(bound(x))])
    return out


def _lemma_record(rid: str, strict: bool, samples: int) -> dict:
    res = default_registry().verify(rid, strict)
    d = res.to_json()
    rec = {
        "id": d["id"],
        "citation": d["citation"],
        "category": MACHINE,
        "expected": res.expected.format(),
        "computed": res.computed.format(),
        "status": d["status"],
        "stratum": d["stratum"],
    }
    for key in ("differences", "notes"):
        if key in d:
            rec[key] = d[key]
    if res.terms:
        rec["terms"] = res.terms
    if samples:
        rec["samples"] = _samples(res.computed, samples)
    return rec


def _lemma_records(strict: bool, parallel: int, samples: int) -> list[dict]:
    ids = default_registry().ids
    if parallel <= 1:
        return [_lemma_record(rid, strict, samples) for rid in ids]
    with ProcessPoolExecutor(max_workers=parallel) as pool:
        # map preserves input order, so the report does not depend on scheduling
        return list(pool.map(_lemma_record, ids, [strict] * len(ids), [samples] * len(ids)))


def build_report(strict: bool = False, parallel: int = 1, samples: int = 0, command: str = "") -> dict:
    from .threefold import run_certificate

    lemmas = _lemma_records(strict, parallel, samples)
    cert = run_certificate()
    checks = [{"kind": "lemma", **r} for r in lemmas]
    for c in cert.checks:
        checks.append({
            "kind": "certificate",
            "id": c.id,
            "step": c.step,
            "citation": c.citation,
            "category": c.category,
            "expected": c.expected,
            "computed": c.computed,
            "status": c.status,
            **({"notes": [c.detail]} if c.detail else {}),
        })
    summary: dict[str, int] = {}
    for r in checks:
        summary[r["status"]] = summary.get(r["status"], 0) + 1
    failed = any(r["category"] == MACHINE and r["status"] == FAIL for r in checks)
    return {
        "tool": "kstab",
        "version": __version__,
        "command": command,
        "records": checks,
        "summary": {"total": len(checks), **dict(sorted(summary.items())), "ok": not failed},
    }


def _cell(text) -> str:
    return str(text).replace("|", "\\|").replace("\n", " ")


def report_markdown(doc: dict) -> str:
    s = doc["summary"]
    lines = [
        f"# kstab {doc['version']} verification report",
        "",
        f"Command: `{doc['command']}`",
        "",
        "Result: " + ("all machine-checked items pass" if s["ok"] else "machine-checked failures present"),
        "",
        "| status | count |",
        "|---|---|",
    ]
    lines += [f"| {k} | {v} |" for k, v in s.items() if k not in ("ok",)]
    for kind, title in (("lemma", "Surface bounds"), ("certificate", "Certificate")):
        lines += ["", f"## {title}", "", "| id | citation | category | status | expected | computed |",
                  "|---|---|---|---|---|---|"]
        for r in doc["records"]:
            if r["kind"] == kind:
                cells = (r["id"], f"`{r['citation']}`", r["category"], r["status"], r["expected"], r["computed"])
                lines.append("| " + " | ".join(_cell(x) for x in cells) + " |")
    notes = [r for r in doc["records"] if r.get("notes") or r.get("differences")]
    if notes:
        lines += ["", "## Notes", ""]
        for r in notes:
            for n in r.get("differences", []):
                lines.append(f"- **{r['id']}** differs {n}")
            for n in r.get("notes", []):
                lines.append(f"- **{r['id']}**: {n}")
    samples = [r for r in doc["records"] if r.get("samples")]
    if samples:
        lines += ["", "## Samples", ""]
        for r in samples:
            lines.append(f"- **{r['id']}**: " + ", ".join(f"({a}, {v})" for a, v in r["samples"]))
    return "\n".join(lines) + "\n"


def cmd_verify_all(args) -> int:
    echo = "kstab verify-all --format " + args.format
    if args.strict:
        echo += " --strict"
    if args.emit_samples:
        echo += f" --emit-samples {args.emit_samples}"
    doc = build_report(args.strict, args.parallel, args.emit_samples, echo)
    if args.format == "json":
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        sys.stdout.write(report_markdown(doc))
    return 0 if doc["summary"]["ok"] else 1


def cmd_certificate(args) -> int:
    from .threefold import run_certificate

    rep = run_certificate()
    sys.stdout.write(rep.dumps() + "\n" if args.format == "json" else rep.to_markdown())
    return 0 if rep.passed else 1


def cmd_verify(args) -> int:
    res = default_registry().verify(args.id, args.strict)
    if args.format == "json":
        print(json.dumps(res.to_json(), indent=2))
    else:
        print(f"{res.record.id} [{res.record.citation}]: {res.status}")
        print(f"  expected: {res.expected.format()}")
        print(f"  computed: {res.computed.format()}")
        for d in res.differences:
            print(f"  differs {d}")
        for n in res.notes:
            print(f"  note: {n}")
    return 1 if res.status == FAIL else 0


# -- queries -------------------------------------------------------------------

def _vector(labels, coords) -> str:
    terms = [f"{fmt(c)}*{lab}" for lab, c in zip(labels, coords) if c]
    return " + ".join(terms).replace("+ -", "- ") or "0"


def cmd_zariski(args) -> int:
    m = get_model(args.surface)
    if not m.has_curve(args.curve):
        raise UsageError(f"{m.id}: no curve {args.curve!r}")
    decs = zariski_family_split(m, args.curve)
    if args.a is None:
        for dec in decs:
            print(dec.format(m))
        return 0
    a = _rational(args.a)
    lo, hi = m.a_interval
    if not lo <= a <= hi:
        raise UsageError(f"a = {a} outside [{fmt(lo)}, {fmt(hi)}]")
    dec = next(d for d in decs if d.a_interval[0] <= a <= d.a_interval[1])
    if args.v is None:
        print(f"tau({fmt(a)}) = {fmt(dec.tau(a))}")
        return 0
    v = _rational(args.v)
    z = dec.evaluate(a, v)
    d = tuple(p - v * c for p, c in zip(m.polarization_at(a), m.curve(args.curve).coords))
    check = zariski_fixed(m, d)
    print(f"P = {_vector(m.labels, z.P)}")
    print("N = " + (" + ".join(f"{fmt(c)}*{lab}" for lab, c in z.N) or "0"))
    print(f"P^2 = {fmt(m.pairing(z.P, z.P))}")
    if check.P != z.P or check.n_dict() != z.n_dict():
        print("warning: direct decomposition of the fixed class disagrees", file=sys.stderr)
        return 1
    return 0


def cmd_sd(args) -> int:
    from .delta import s_d

    m = get_model(args.surface)
    if not m.has_curve(args.curve):
        raise UsageError(f"{m.id}: no curve {args.curve!r}")
    f = s_d(m, args.curve)
    if args.a is None:
        lo, hi = m.a_interval
        print(f"S_D({args.curve}) = {f.format('a')} for a in [{fmt(lo)}, {fmt(hi)}]")
    else:
        print(fmt(f(_rational(args.a))))
    return 0


def _record_for(stratum):
    reg = default_registry()
    for rid in reg.ids:
        r = reg.get(rid)
        if not r.is_corollary and r.stratum() == stratum:
            return r
    return None


def cmd_delta(args) -> int:
    from .delta import PointStratum, delta_lower_bound, flag_terms

    reg = default_registry()
    if args.record:
        r = reg.get(args.record)
        bound, citation = reg.computed(r.id), r.citation
        terms = [] if r.is_corollary else flag_terms(r.stratum())
    else:
        if not args.surface:
            raise UsageError("give --record or --surface")
        m = get_model(args.surface)
        on = _labels(args.stratum)
        if args.off == "all":
            off = [c.label for c in m.curves if c.label not in on]
        else:
            off = _labels(args.off)
        st = PointStratum.of(m.id, on, off)
        bound = delta_lower_bound(st)
        rec = _record_for(st)
        citation = rec.citation if rec else "computed"
        terms = flag_terms(st)
    print(f"{bound.format()}  [{citation}]")
    if args.terms:
        for t in terms:
            print("  " + t.describe())
    if args.emit_samples:
        for a, v in _samples(bound, args.emit_samples):
            print(f"{a}\t{v}")
    return 0


def cmd_sx(args) -> int:
    from .threefold import get_pencil, s_x

    print(fmt(s_x(get_pencil(args.pencil))))
    return 0


def cmd_nemuro(args) -> int:
    from .threefold import derived_bound, get_case, get_surface_bound, nemuro

    case = get_case(args.case)
    b = get_surface_bound(args.f)
    f = derived_bound(b) if args.derived else b.stated()
    print(fmt(nemuro(case, f)))
    return 0


def cmd_disc(args) -> int:
    from .discriminant import kstable_verdict

    v = kstable_verdict(_rational(args.lam), _rationals(args.a), _rationals(args.b))
    if args.format == "json":
        print(v.dumps())
    else:
        print(v.report.verdict)
        print(v.verdict)
        w = v.report.witness()
        if w:
            print(f"witness: {json.dumps(w)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kstab", description="exact delta-invariant and K-stability checks")
    p.add_argument("--version", action="version", version=f"kstab {__version__}")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("verify-all", help="every surface bound and the certificate")
    s.add_argument("--format", choices=("json", "md"), default="md")
    s.add_argument("--parallel", type=int, default=1, metavar="N")
    s.add_argument("--strict", action="store_true", help="count documented mismatches as failures")
    s.add_argument("--emit-samples", type=int, default=0, metavar="N",
                   help="add N+1 exact (a, value) samples of each computed bound")
    s.set_defaults(func=cmd_verify_all)

    s = sub.add_parser("certificate", help="only the 3-fold certificate")
    s.add_argument("--format", choices=("json", "md"), default="md")
    s.set_defaults(func=cmd_certificate)

    s = sub.add_parser("verify", help="one registry record")
    s.add_argument("id")
    s.add_argument("--format", choices=("json", "text"), default="text")
    s.add_argument("--strict", action="store_true")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("zariski", help="Zariski decomposition of D(a) - vC")
    s.add_argument("--surface", required=True)
    s.add_argument("--curve", required=True)
    s.add_argument("--a")
    s.add_argument("--v")
    s.set_defaults(func=cmd_zariski)

    s = sub.add_parser("sd", help="S(D; C) as a function of a")
    s.add_argument("--surface", required=True)
    s.add_argument("--curve", required=True)
    s.add_argument("--a")
    s.set_defaults(func=cmd_sd)

    s = sub.add_parser("delta", help="lower bound of delta on a point stratum")
    s.add_argument("--record")
    s.add_argument("--surface")
    s.add_argument("--stratum", help="comma-separated curves through the point")
    s.add_argument("--off", help="comma-separated curves avoided, or 'all'")
    s.add_argument("--terms", action="store_true", help="list the flag terms")
    s.add_argument("--emit-samples", type=int, default=0, metavar="N")
    s.set_defaults(func=cmd_delta)

    s = sub.add_parser("sx", help="S_X of a pencil surface")
    s.add_argument("--pencil", required=True)
    s.set_defaults(func=cmd_sx)

    s = sub.add_parser("nemuro", help="flag bound from a surface bound f(u)")
    s.add_argument("--case", required=True)
    s.add_argument("--f", required=True)
    s.add_argument("--derived", action="store_true", help="use the machine-derived f instead of the stated one")
    s.set_defaults(func=cmd_nemuro)

    s = sub.add_parser("disc", help="smoothness of the discriminant curve")
    s.add_argument("--lambda", dest="lam", required=True)
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.add_argument("--format", choices=("json", "text"), default="text")
    s.set_defaults(func=cmd_disc)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "parallel", 1) < 1:
        parser.error("--parallel must be at least 1")
    try:
        return args.func(args)
    except (UsageError, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"kstab: error: {msg}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"kstab: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
