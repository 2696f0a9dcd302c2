from __future__ import annotations

import json
from pathlib import Path

import jsonschema
import pytest

from lfkernel.script import (
    EXIT_DISABLED,
    EXIT_ELAB,
    EXIT_RULE,
    EXIT_SYNTAX,
    EXIT_UNDISCHARGED,
    ScriptSyntaxError,
    check_file,
    check_script,
    parse_script,
)

SCHEMA = json.loads((Path(__file__).resolve().parents[1] / "src/lfkernel/schemas/check-report.schema.json").read_text())


def _doc(*reports):
    code = next((r.exit_code for r in reports if r.exit_code), 0)
    return {"version": 1, "exit_code": code, "reports": [r.to_json() for r in reports]}


def test_parse_header_and_steps():
    s = parse_script(
        "theory LF_ι\ndisable R.8, R.9\naxiom p\nvar x y : e\n"
        "a: hyp(; p)   p ⊢ p\nb: cp(a; p)\nqed b\n"
    )
    assert s.theory == "LF_ι" and s.disabled == ["R.8", "R.9"] and s.axioms == ["p"]
    assert s.variables == {"x": "e", "y": "e"}
    assert [st.label for st in s.steps] == ["a", "b"]
    assert s.steps[0].expected == "p ⊢ p"
    assert s.steps[1].refs == ["a"] and s.steps[1].args == ["p"]
    assert s.qed == "b"


def test_arguments_split_only_at_top_level():
    s = parse_script("a: hyp(; f(p; q); r)\nqed a\n")
    assert s.steps[0].args == ["f(p; q)", "r"]


@pytest.mark.parametrize(
    "text",
    [
        "a: hyp(; p)\n",  # no qed
        "a: hyp(; p)\nqed b\n",  # unknown qed label
        "a: hyp(; p)\na: hyp(; q)\nqed a\n",  # duplicate label
        "a: cp(b)\nb: hyp(; p)\nqed a\n",  # forward reference
        "a: hyp(; p\nqed a\n",  # unbalanced
        "what is this\nqed a\n",
    ],
)
def test_syntax_errors(text):
    with pytest.raises(ScriptSyntaxError):
        parse_script(text)
    assert check_script(text).exit_code == EXIT_SYNTAX


def test_exit_codes():
    assert check_script("a: hyp(; p ∧)\nqed a\n").exit_code == EXIT_SYNTAX
    assert check_script("a: hyp(; λx.x)\nqed a\n").exit_code == EXIT_ELAB
    assert check_script("a: hyp(; p)\nb: intensionality(a, a)\nc: beta(b; q)\nqed c\n").exit_code == EXIT_RULE
    assert check_script("a: hyp(; p)\nqed a\n").exit_code == EXIT_UNDISCHARGED
    assert check_script("theory LF-R.6\na: hyp(; p)\nb: intensionality(a, a)\nqed b\n").exit_code == EXIT_DISABLED


def test_failure_names_step_and_rule():
    r = check_script("a: hyp(; p)\nb: hyp(; q)\nc: cut(a, b)\nqed c\n")
    assert r.exit_code == EXIT_RULE
    assert r.error["step"] == "c" and r.error["rule"] == "cut" and r.error["code"] == "ShapeMismatch"
    assert r.error["line"] == 3


def test_expected_sequent_is_checked():
    ok = check_script("a: hyp(; p)  p ⊢ p\nb: cp(a)  ⊢ p → p\nqed b\n")
    assert ok.ok and ok.theorem == "p → p"
    bad = check_script("a: hyp(; p)  p ⊢ q\nqed a\n")
    assert bad.exit_code == EXIT_RULE and bad.error["code"] == "ExpectedMismatch"
    ascii_ok = check_script("a: hyp(; p)  p |- p\nb: cp(a) |- p -> p\nqed b\n")
    assert ascii_ok.ok


def test_axioms_in_header():
    r = check_script("axiom p\na: hyp(; p)\nqed a\n")
    assert r.ok


def test_disable_from_caller():
    r = check_file(str(_script("modus_ponens.lf")), disable=["R.3"])
    assert r.exit_code == EXIT_DISABLED and r.error["step"] == "c"


def test_theory_override():
    r = check_file(str(_script("henkin_inconsistency.lf")), theory="LF+HenkinExt")
    assert r.ok and r.theorem == "⊥"


def test_iota_script_under_plain_lf_leaves_the_axiom_undischarged():
    r = check_file(str(_script("alpha_iff_top.lf")), theory="LF")
    assert r.exit_code == EXIT_UNDISCHARGED and r.error["code"] == "UndischargedAssumption"
    assert "ι" in r.error["message"]


def test_json_report_matches_schema():
    reports = [check_file(str(p)) for p in sorted(_script("").parent.glob("*.lf"))]
    doc = _doc(*reports)
    jsonschema.validate(doc, SCHEMA)
    jsonschema.validate(_doc(check_script("a: hyp(; p ∧)\nqed a\n")), SCHEMA)


def test_step_records():
    r = check_file(str(_script("modus_ponens.lf")))
    assert [s.label for s in r.steps] == list("abcdefg")
    assert r.steps[-1].sequent == "⊢ ∀p. ∀q. (p → q) → p → q"
    assert r.nodes == r.steps[-1].nodes


def _script(name: str) -> Path:
    return Path(__file__).resolve().parents[1] / "src/lfkernel/scripts" / name
