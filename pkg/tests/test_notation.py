from __future__ import annotations

import pytest

from lfkernel import definitions as D
from lfkernel.errors import AmbiguousTypes, GuardViolation, NoCompletion, NotationSyntaxError, UnknownNotation
from lfkernel.library import catalog, library_theorem
from lfkernel.notation import expand_all, parse, parse_type, read
from lfkernel.printer import format_type, print_term
from lfkernel.terms import E, T, Fun, Var, Variable, fun, pred


# ---- the three worked examples on omitted brackets and decorations

def test_parenthesis_restoration():
    t = read("λp.fp → q")
    assert print_term(t, parens="full", compact=True) == "(λp.((fp)→q))"


def test_ttt_abbreviates_right_nested_type():
    assert parse_type("ttt") == fun(T, T, T)
    assert format_type(parse_type("ttt"), style="full") == "⟨t⟨tt⟩⟩"


def test_decoration_inference_ffx():
    t = read("λx^e.ffx")
    assert print_term(t, decorations="full", compact=True, elide_apps=True) == "λx^e.f^{ee}f^{ee}x^e"


# ---- precedence tiers

@pytest.mark.parametrize(
    "text, reading",
    [
        ("p ∧ q → r", "(p ∧ q) → r"),
        ("p → q → r", "p → (q → r)"),
        ("¬p ∧ q", "(¬p) ∧ q"),
        ("p ∨ q ∧ r", "p ∨ (q ∧ r)"),
        ("p ↔ q → r", "p ↔ (q → r)"),
        ("x^e = y → p", "(x^e = y) → p"),
        ("∀x^e.F x → G x", "∀x^e.((F x) → (G x))"),
        ("□p → p", "(□p) → p"),
    ],
)
def test_precedence(text, reading):
    assert read(text) == read(reading)


def test_type_directed_bracketing_of_numerals():
    # 1+1+1 associates to the right
    assert read("1_e + 1 + 1") == D.numeral(3, E)


def test_binders_take_widest_scope():
    t = read("λp.p ∧ q")
    assert t.type == Fun(T, T)


# ---- decorations

def test_same_binder_same_type():
    assert read("λx^e.x") == read("λx.x^e")


def test_p_and_q_default_to_t():
    assert read("p").type == T
    assert read("λq.q").type == Fun(T, T)


def test_ambiguity_is_reported():
    with pytest.raises(AmbiguousTypes):
        read("λx.x")


def test_conflicting_decorations():
    with pytest.raises(NoCompletion):
        read("x^e = p")


def test_expected_type_disambiguates():
    assert read("λx.x", expected=Fun(E, E)).type == Fun(E, E)


def test_context_supplies_free_variable_types():
    t = read("x = y", context={"x": E})
    assert t == D.eq(Var(Variable("x", E)), Var(Variable("y", E)))


# ---- syntax, guards and aliases

def test_syntax_error_carries_span():
    with pytest.raises(NotationSyntaxError) as info:
        parse("p ∧")
    assert info.value.span == (3, 3)


def test_unknown_character():
    with pytest.raises(NotationSyntaxError):
        parse("p $ q")


def test_guard_rejects_iota_in_core():
    with pytest.raises(GuardViolation):
        read("ιx^e.F x")
    assert read("ιx^e.F x", guard="iota").type == E


def test_ascii_aliases():
    assert read("forall x^e. x = x") == read("∀x^e.x = x")
    assert read("p -> q /\\ ~p") == read("p → q ∧ ¬p")
    assert read("p <-> q") == read("p ↔ q")
    assert parse_type("<et>t") == parse_type("⟨et⟩t")


def test_bare_operator_is_its_section():
    assert read("⊆_e").type == fun(pred(E), pred(E), T)
    assert read("(→)").type == fun(T, T, T)


def test_unknown_definition():
    with pytest.raises(UnknownNotation):
        D.instantiate_def("frobnicate")


# ---- unfolding

@pytest.mark.parametrize(
    "text, expansion",
    [
        ("⊤", "(λp^t.p) ⊆_t (λp^t.p)"),
        ("→", "λp^t. λq^t. (λr^t.p) ⊆_t (λr^t.q)"),
        ("∀_e", "λX^{et}. (λy^e. (λp^t.p) ⊆_t (λp^t.p)) ⊆_e X"),
        ("=_e", "λx^e. λy^e. (λZ^{et}. Z x) ⊆_{et} (λZ^{et}. Z y)"),
    ],
)
def test_expand_all(text, expansion):
    assert print_term(expand_all(read(text)), decorations="binders", fold=False) == expansion


def test_expansions_are_beta_equal_to_folded_forms():
    from lfkernel.terms import beta_equivalent

    for text in ["p ∨ q", "p ∧ q", "p ↔ q", "¬p", "∃x^e.F x", "□p", "◇p", "0_e", "1_e", "ℕ_e"]:
        t = read(text)
        assert beta_equivalent(t, expand_all(t))


# ---- round trip over the corpus

def _corpus():
    seen = {}
    for entry in catalog():
        for node in library_theorem(entry.name).nodes():
            for f in node.sequent.assumptions + (node.sequent.conclusion,):
                seen.setdefault(f.skel, f)
    return list(seen.values())


def test_round_trip_full_decorations():
    forms = _corpus()
    assert len(forms) > 1000
    for f in forms:
        assert read(print_term(f, decorations="full"), guard="eps") == f


def test_round_trip_minimal_decorations():
    for f in _corpus():
        assert read(print_term(f, decorations="auto"), guard="eps") == f


def test_ascii_printing_round_trips():
    for f in _corpus()[:300]:
        assert read(print_term(f, decorations="full", ascii=True), guard="eps") == f
