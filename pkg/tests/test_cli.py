import json
import re

import pytest

from kstab.cli import main

FLOAT = re.compile(r"(?<![\w/.])\d+\.\d+(?!\.)")


def _no_floats(text):
    from kstab import __version__

    return not FLOAT.search(text.replace(__version__, ""))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_sx(capsys):
    assert run(capsys, "sx", "--pencil", "h-r")[:2] == (0, "67/88\n")
    assert run(capsys, "sx", "--pencil", "2h-e")[:2] == (0, "109/176\n")


def test_nemuro(capsys):
    assert run(capsys, "nemuro", "--case", "hr-in-r", "--f", "prop2.5")[:2] == (0, "44/41\n")
    assert run(capsys, "nemuro", "--case", "he-in-e", "--f", "prop2.8-on-curve")[:2] == (0, "1\n")


def test_disc(capsys):
    code, out, _ = run(capsys, "disc", "--lambda", "2", "--a", "1,0,-1", "--b", "1,0,-1")
    assert code == 0 and out.split() == ["Smooth", "KStableByCorollary"]
    code, out, _ = run(capsys, "disc", "--lambda", "2", "--a", "1,0,-1", "--b", "1,0,-1", "--format", "json")
    d = json.loads(out)
    assert d["lambda"] == "2" and d["a"] == ["1", "0", "-1"] and d["smooth"] is True
    assert d["verdict"] == "KStableByCorollary"


def test_zariski(capsys):
    code, out, _ = run(capsys, "zariski", "--surface", "dp6", "--curve", "l1", "--a", "3/2", "--v", "5/4")
    assert code == 0
    assert "N = 3/4*l4 + 1/4*e1" in out
    assert "P^2 = 5/16" in out


def test_sd_and_delta(capsys):
    code, out, _ = run(capsys, "sd", "--surface", "dp6", "--curve", "l1", "--a", "3/2")
    assert (code, out) == (0, "3/4\n")
    code, out, _ = run(capsys, "delta", "--surface", "dp5", "--stratum", "e1")
    assert code == 0 and "3*(a + 2)/(a^2 + 2*a - 2) on [2, 3]" in out
    assert "lemma:dP5-e1-e2-e3-e4" in out
    code, out, _ = run(capsys, "delta", "--surface", "dp5", "--off", "all", "--emit-samples", "2")
    assert code == 0 and out.splitlines()[1:] == ["2\t2", "5/2\t12/7", "3\t4/3"]


@pytest.mark.parametrize("argv", [
    ["sx", "--pencil", "nope"],
    ["nemuro", "--case", "hr-in-r", "--f", "nope"],
    ["zariski", "--surface", "dp7", "--curve", "l1"],
    ["zariski", "--surface", "dp6", "--curve", "l1", "--a", "0.5"],
    ["disc", "--lambda", "1", "--a", "1,0,0", "--b", "1,0,0"],
    ["delta", "--record", "missing"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_argparse_usage_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify-all", "--format", "xml"])
    assert exc.value.code == 2


def _report(capsys, *extra):
    code, out, _ = run(capsys, "verify-all", "--format", "json", *extra)
    return code, out


def test_verify_all_report(capsys):
    code, out = _report(capsys)
    doc = json.loads(out)
    assert set(doc) == {"tool", "version", "command", "records", "summary"}
    for r in doc["records"]:
        assert {"id", "citation", "expected", "computed", "status", "category"} <= set(r)
        assert r["category"] in ("machine-checked", "assumed-from-paper")
    tallies = {}
    for r in doc["records"]:
        tallies[r["status"]] = tallies.get(r["status"], 0) + 1
    s = doc["summary"]
    assert s["total"] == len(doc["records"])
    assert all(s[k] == v for k, v in tallies.items())
    failed = any(r["status"] == "Fail" and r["category"] == "machine-checked" for r in doc["records"])
    assert s["ok"] is (not failed)
    assert code == (1 if failed else 0)
    noted = [r["id"] for r in doc["records"] if r["status"] == "Mismatch-with-note"]
    assert noted == ["A2-e1"]
    assert _no_floats(out)


def test_parallel_report_is_identical(capsys):
    _, one = _report(capsys, "--parallel", "1")
    _, four = _report(capsys, "--parallel", "4")
    assert one == four


def test_strict_counts_the_mismatch(capsys):
    _, out = _report(capsys, "--strict")
    doc = json.loads(out)
    assert next(r for r in doc["records"] if r["id"] == "A2-e1")["status"] == "Fail"


def test_markdown_report(capsys):
    code, out, _ = run(capsys, "verify-all", "--format", "md", "--emit-samples", "2")
    assert out.startswith("# kstab")
    assert "`lemma:dP5-A2-e1-e2`" in out
    assert "assumed-from-paper" in out
    assert "## Samples" in out
    assert _no_floats(out)


def test_alternate_registry(capsys, tmp_path, monkeypatch):
    bundle = {"lemmas": [{"id": "lines", "surface": "dp6", "citation": "lemma:dP6-lines",
                          "on": ["l1"], "off": ["e1", "e2"], "expected": ["1", "2/a", "2"]}]}
    path = tmp_path / "b.json"
    path.write_text(json.dumps(bundle))
    monkeypatch.setenv("KSTAB_REGISTRY", str(path))
    code, out, _ = run(capsys, "verify", "lines")
    assert code == 0 and "Pass" in out
