from __future__ import annotations

import json
import subprocess
import sys

import pytest

from hypetruth.cli import main

from conftest import ROOT
from golden_cases import CASES, GOLDENS, run


@pytest.mark.parametrize("name", sorted(CASES))
def test_machine_output_matches_golden(name):
    code, out = run(CASES[name])
    assert code == 0
    assert out == (GOLDENS / f"{name}.txt").read_text(encoding="utf-8")


def test_check_exit_codes(tmp_path, capsys):
    assert main(["check", str(ROOT / "proofs" / "identity_lem.kfl")]) == 0
    bad = tmp_path / "bad.kfl"
    bad.write_text("theory: G1h\n1: p => q ; axiom:ID\n")
    assert main(["check", str(bad)]) == 1
    garbled = tmp_path / "garbled.kfl"
    garbled.write_text("this is not a proof\n")
    assert main(["check", str(garbled)]) == 1
    assert main(["check", str(tmp_path / "missing.kfl")]) == 2
    assert main(["check", "--lang", "nonsense", str(ROOT / "proofs" / "identity_lem.kfl")]) == 2


def test_language_tag_restricts(capsys):
    path = str(ROOT / "proofs" / "imp_recapture.kfl")
    assert main(["check", path]) == 0
    assert main(["check", "--lang", "L_T", path]) == 1  # uses the conditional


def test_usage_errors(capsys):
    assert main([]) == 2
    assert main(["bogus"]) == 2
    assert main(["ord", "cmp", "w"]) == 2
    assert main(["ord", "cmp", "w", "(("]) == 2
    assert main(["derive", "ti", "--formula", "v0=v0"]) == 2
    assert main(["translate", "--formula", "0=0"]) == 2
    assert main(["models", "find", "--sequent", "=> p | q | r", "--max-atoms", "2"]) == 2


def test_ord_command(capsys):
    assert main(["ord", "cmp", "phi(w,0)", "w^w"]) == 0
    assert "Greater" in capsys.readouterr().out


def test_derive_writes_checkable_script(tmp_path, capsys):
    out = tmp_path / "ti.kfl"
    assert main(["derive", "ti", "--formula", "v0. Tr(v0)", "--tower", "1", "--out", str(out)]) == 0
    assert main(["check", str(out)]) == 0
    out2 = tmp_path / "lem.kfl"
    assert main(["derive", "recapture", "--formula", "all v0. v0=0 | !(v0=0)", "--out", str(out2)]) == 0
    assert main(["check", str(out2)]) == 0
    assert main(["derive", "recapture", "--formula", "Tr(0)"]) == 1


def test_fixpoint_then_audit(tmp_path, capsys):
    model = tmp_path / "model.json"
    uni = ROOT / "universes" / "arith.toml"
    assert main(["fixpoint", "--universe", str(uni), "--emit", str(model)]) == 0
    assert main(["audit", "--model", str(model)]) == 0
    data = json.loads(model.read_text())
    data["extensions"]["Tr"][0] = data["extensions"]["Tr"][0][:-1]
    model.write_text(json.dumps(data))
    assert main(["audit", "--model", str(model)]) == 1
    model.write_text("{")
    assert main(["audit", "--model", str(model)]) == 2


def test_translate_commands(capsys):
    assert main(["translate", "--tau", "--formula", "!!(0=0)"]) == 0
    assert capsys.readouterr().out.strip().endswith("result: 0=0")
    assert main(["translate", "--sigma", "--formula", "Tr(0) -> 0=1"]) == 0
    assert main(["translate", "--tau", "--formula", "0=0 -> 0=0"]) == 1


def test_machine_format_has_no_timings(capsys):
    main(["--format", "machine", "check", str(ROOT / "proofs" / "identity_lem.kfl")])
    out = capsys.readouterr().out
    assert "time" not in out and out.startswith("report=")


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "hypetruth", "ord", "cmp", "w", "1"],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0 and "Greater" in r.stdout


def test_regress_deterministic():
    a = run(CASES["regress"])
    b = run(CASES["regress"])
    assert a == b and a[0] == 0
