from __future__ import annotations

import csv
import json
import subprocess
import sys
from pathlib import Path

import pytest

from lfkernel.cli import main

SCRIPTS = Path(__file__).resolve().parents[1] / "src/lfkernel/scripts"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_expand_top(capsys):
    code, out, _ = run(capsys, "expand", "⊤")
    assert code == 0 and out.strip() == "(λp^t.p) ⊆_t (λp^t.p)"


def test_typecheck_inclusion(capsys):
    code, out, _ = run(capsys, "typecheck", "⊆_e")
    assert code == 0 and out.strip() == "⟨⟨et⟩⟨⟨et⟩t⟩⟩"
    code, out, _ = run(capsys, "typecheck", "⊆_e", "--ascii")
    assert out.strip() == "<<et><<et>t>>"


def test_parse_echoes_full_decorations(capsys):
    code, out, _ = run(capsys, "parse", "λx^e.ffx")
    assert code == 0 and out.strip() == "λx^e. f^{ee} (f^{ee} x^e)"


def test_inspect_errors(capsys):
    assert run(capsys, "parse", "p ∧")[0] == 1
    assert run(capsys, "parse", "λx.x")[0] == 2
    assert run(capsys, "parse", "@p")[0] == 0
    assert run(capsys, "parse", "@p", "--guard", "core")[0] == 2


def test_systems(capsys):
    code, out, _ = run(capsys, "systems")
    names = [line.split()[0] for line in out.splitlines()]
    for want in ["LF", "LF_ι", "LF_ε", "Church-1940", "Henkin-1950", "HFE", "Classicism"]:
        assert want in names
    assert [f"LF−R.{n}" in names for n in range(1, 10)] == [True] * 9


def test_library(capsys):
    code, out, _ = run(capsys, "library", "--json")
    rows = json.loads(out)
    assert code == 0
    assert {r["name"] for r in rows} >= {"s5_axiom", "refute_extensionality", "class_comprehension_ι"}
    assert all(r["theory"] for r in rows)


def test_check_mp_demo(capsys):
    code, out, _ = run(capsys, "check", str(SCRIPTS / "modus_ponens.lf"))
    assert code == 0 and "∀p. ∀q. (p → q) → p → q" in out


def test_check_json_and_jobs(capsys):
    files = [str(p) for p in sorted(SCRIPTS.glob("*.lf"))]
    code, out, _ = run(capsys, "check", *files, "--json", "--jobs", "2")
    doc = json.loads(out)
    assert [Path(r["file"]).name for r in doc["reports"]] == [Path(f).name for f in files]
    assert doc["exit_code"] == code


def test_check_disable_flag(capsys):
    code, out, _ = run(capsys, "check", str(SCRIPTS / "modus_ponens.lf"), "--disable", "R.4")
    assert code == 5 and "RuleDisabled" in out


def test_check_missing_file(capsys):
    assert run(capsys, "check", "/nonexistent/script.lf")[0] == 1


def test_report_directory(capsys, tmp_path):
    code, _, _ = run(capsys, "check", str(SCRIPTS / "modus_ponens.lf"), "--report", str(tmp_path))
    assert code == 0
    rows = list(csv.DictReader((tmp_path / "modus_ponens.csv").open(encoding="utf-8")))
    assert [r["step"] for r in rows] == list("abcdefg")
    assert (tmp_path / "modus_ponens.png").read_bytes()[:4] == b"\x89PNG"
    assert (tmp_path / "summary.csv").exists() and (tmp_path / "summary.png").exists()


def test_library_report(capsys, tmp_path):
    run(capsys, "library", "--report", str(tmp_path))
    rows = list(csv.DictReader((tmp_path / "library.csv").open(encoding="utf-8")))
    assert len(rows) >= 16
    assert (tmp_path / "library.png").stat().st_size > 0


@pytest.mark.parametrize("setting, colored", [("1", True), ("0", False)])
def test_color_setting(capsys, monkeypatch, setting, colored):
    monkeypatch.setenv("LF_COLOR", setting)
    _, out, _ = run(capsys, "check", str(SCRIPTS / "modus_ponens.lf"))
    assert ("\x1b[" in out) is colored


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lfkernel.cli", "typecheck", "p → q"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "t"
