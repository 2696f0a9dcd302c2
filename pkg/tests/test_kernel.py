from __future__ import annotations

import pytest

from lfkernel import definitions as D
from lfkernel.errors import (
    ContextMismatch,
    FreshnessViolation,
    GuardViolation,
    NonEmptyContext,
    NotBetaEquivalent,
    RuleDisabled,
    ShapeMismatch,
    TypeMismatch,
    TypeRestriction,
    UndischargedAssumption,
)
from lfkernel.kernel import (
    CORE_RULES,
    Derivation,
    RuleId,
    Sequent,
    beta_rule,
    check_theorem,
    choice,
    contraction,
    cut,
    exchange,
    function_extensionality,
    hypothesis,
    intensionality,
    negation_elimination,
    potential_infinity,
    universal_generalization,
    universal_instantiation,
    variant_rule,
    weakening,
)
from lfkernel.library import logic as L
from lfkernel.library.numerals import nat_by_closure
from lfkernel.notation import read
from lfkernel.terms import App, E, Fun, T, Var, Variable, pred
from lfkernel.theories import builtin_theories, get_theory

P, Q, R = read("p"), read("q"), read("r^t")
LF = get_theory("LF")
x = Variable("x", E)
F, G = Variable("F", pred(E)), Variable("G", pred(E))
Fx, Gx = App(Var(F), Var(x)), App(Var(G), Var(x))


def test_hypothesis():
    d = hypothesis([Q], P)
    assert d.sequent == Sequent((Q, P), P)
    assert d.rules_used() == {RuleId.R1_Structural}


def test_structural_rules():
    d = weakening(hypothesis([], P), Q)
    assert d.assumptions == (P, Q)
    assert exchange(d, 0).assumptions == (Q, P)
    dd = weakening(hypothesis([], P), P)
    assert contraction(dd).assumptions == (P,)
    assert cut(hypothesis([], P), hypothesis([Q], P)).assumptions == (P, Q)


def test_beta_rule():
    d = hypothesis([], read("(λq.q) p"))
    assert beta_rule(d, P).conclusion == P


def test_universal_instantiation_and_generalization():
    inc = universal_generalization(hypothesis([], Fx), x)
    assert inc.conclusion == D.subset(Var(F), Var(F))
    got = universal_instantiation(weakening(inc, Fx), hypothesis([], Fx))
    assert got.conclusion == Fx


def test_negation_elimination():
    gamma = (D.neg(D.neg(P)), D.neg(P))
    bot = L.neg_elim(L.assume(gamma, D.neg(P)), L.assume(gamma, D.neg(D.neg(P))))
    got = L.by_contradiction(bot)
    assert got.sequent == Sequent((D.neg(D.neg(P)),), P)
    assert RuleId.R5_NegElim in got.rules_used()


def test_intensionality():
    d = intensionality(hypothesis([], P), hypothesis([], P))
    assert d.sequent == Sequent((), D.eq(P, P))


def test_function_extensionality():
    f = Variable("f", Fun(E, E))
    eq = L.eq_refl(App(Var(f), Var(x)))
    assert function_extensionality(eq, x).conclusion == D.eq(Var(f), Var(f))


def test_choice():
    rel = Variable("R", Fun(E, pred(E)))
    y = Variable("y", E)
    stmt = D.forall(x, D.exists(y, App(App(Var(rel), Var(x)), Var(y))))
    f = Variable("f", Fun(E, E))
    d = choice(hypothesis([], stmt), f)
    assert d.conclusion == D.exists(f, D.forall(x, App(App(Var(rel), Var(x)), App(Var(f), Var(x)))))


def test_potential_infinity():
    d = potential_infinity(nat_by_closure(2, E))
    assert d.conclusion == D.neq(D.BOT(), App(D.EXISTS(pred(E)), read("(0_e + 1) + 1")))


def test_derivations_cannot_be_forged():
    with pytest.raises(TypeError):
        Derivation(object(), RuleId.R1_Structural, None, (), (), Sequent((), P))
    d = hypothesis([], P)
    with pytest.raises(AttributeError):
        d.sequent = Sequent((), Q)


def test_sequents_require_formulae():
    with pytest.raises(TypeMismatch):
        Sequent((), Var(x))


# ---- negative suite: one malformed application per rule family

def _bad_ug_freshness():
    # x free in the remaining assumptions
    d = hypothesis([Gx], Fx)
    return universal_generalization(d, x)


def _bad_ug_shape():
    return universal_generalization(hypothesis([], P), x)


def _bad_funext_freshness():
    f = Variable("f", Fun(E, E))
    fx = App(Var(f), Var(x))
    d = hypothesis([D.eq(Var(x), Var(x))], D.eq(fx, fx))
    return function_extensionality(d, x)


def _bad_intensionality_context():
    return intensionality(hypothesis([Q], P), hypothesis([], P))


def _bad_intensionality_shape():
    return intensionality(hypothesis([], P), hypothesis([], Q))


def _bad_potinf_type():
    return potential_infinity(nat_by_closure(1, pred(E)))


def _bad_potinf_shape():
    return potential_infinity(hypothesis([], P))


def _bad_ui_context():
    inc = universal_generalization(hypothesis([], Fx), x)
    return universal_instantiation(inc, hypothesis([], Fx))


def _bad_ui_shape():
    return universal_instantiation(hypothesis([], P), hypothesis([], P))


def _bad_cut():
    return cut(hypothesis([], P), hypothesis([], Q))


def _bad_contraction():
    return contraction(hypothesis([Q], P))


def _bad_exchange():
    return exchange(hypothesis([], P), 0)


def _bad_beta():
    return beta_rule(hypothesis([], P), Q)


def _bad_negation_elimination():
    return negation_elimination(hypothesis([], P))


def _bad_choice_freshness():
    rel = Variable("R", Fun(E, pred(E)))
    y = Variable("y", E)
    f = Variable("f", Fun(E, E))
    stmt = D.forall(x, D.exists(y, App(App(Var(rel), Var(x)), Var(y))))
    side = D.eq(Var(f), Var(f))
    return choice(hypothesis([side], stmt), f)


def _bad_choice_type():
    rel = Variable("R", Fun(E, pred(E)))
    y = Variable("y", E)
    stmt = D.forall(x, D.exists(y, App(App(Var(rel), Var(x)), Var(y))))
    return choice(hypothesis([], stmt), Variable("f", Fun(E, T)))


def _bad_henkin_context():
    th = get_theory("LF+HenkinExt")
    return variant_rule(RuleId.V_HenkinExt, hypothesis([R, P], Q), hypothesis([Q], P), theory=th)


def _bad_variant_disabled():
    return variant_rule(RuleId.V_HenkinExt, hypothesis([], P), hypothesis([], P))


def _bad_classicism_position():
    th = get_theory("Classicism")
    return variant_rule(RuleId.V_ClassicismSubst, hypothesis([], P), hypothesis([], P), D.conj(Q, R), (1,),
                        theory=th)


NEGATIVE = [
    ("ug-freshness", _bad_ug_freshness, FreshnessViolation),
    ("ug-shape", _bad_ug_shape, ShapeMismatch),
    ("funext-freshness", _bad_funext_freshness, FreshnessViolation),
    ("intensionality-context", _bad_intensionality_context, NonEmptyContext),
    ("intensionality-shape", _bad_intensionality_shape, ShapeMismatch),
    ("potinf-type", _bad_potinf_type, TypeRestriction),
    ("potinf-shape", _bad_potinf_shape, ShapeMismatch),
    ("ui-context", _bad_ui_context, ContextMismatch),
    ("ui-shape", _bad_ui_shape, ShapeMismatch),
    ("cut-shape", _bad_cut, ShapeMismatch),
    ("contraction-shape", _bad_contraction, ShapeMismatch),
    ("exchange-position", _bad_exchange, ShapeMismatch),
    ("beta-target", _bad_beta, NotBetaEquivalent),
    ("negelim-shape", _bad_negation_elimination, ShapeMismatch),
    ("choice-freshness", _bad_choice_freshness, FreshnessViolation),
    ("choice-type", _bad_choice_type, TypeMismatch),
    ("henkin-context", _bad_henkin_context, ContextMismatch),
    ("variant-disabled", _bad_variant_disabled, RuleDisabled),
    ("classicism-position", _bad_classicism_position, ShapeMismatch),
]


@pytest.mark.parametrize("name, build, error", NEGATIVE, ids=[n for n, _, _ in NEGATIVE])
def test_malformed_application_rejected(name, build, error):
    with pytest.raises(error) as info:
        build()
    assert info.value.code == error.code


# ---- theories

def test_check_theorem_report():
    d = L.top_thm()
    rep = check_theorem(LF, d)
    assert rep.ok and rep.rules == ["R.1", "R.4"] and rep.nodes == 2
    assert str(rep) == "⊤"


def test_check_theorem_rejects_open_assumptions():
    with pytest.raises(UndischargedAssumption):
        check_theorem(LF, hypothesis([], P))


def test_check_theorem_rejects_disabled_rule():
    with pytest.raises(RuleDisabled) as info:
        check_theorem(LF.minus(RuleId.R4_UG), L.top_thm())
    assert info.value.info["rule"] == "R.4"


def test_axioms_discharge_assumptions():
    th = LF.plus(P)
    assert check_theorem(th, hypothesis([], P)).discharged == [P]


def test_guard_rejects_iota_constants():
    d = hypothesis([], read("F (ιx^e.F x)", guard="iota"))
    th = LF.plus(d.conclusion)
    with pytest.raises(GuardViolation):
        check_theorem(th, d)
    assert check_theorem(get_theory("LF_ι").plus(d.conclusion), d).ok


def test_theory_algebra():
    assert get_theory("LF−R.8").rules == CORE_RULES - {RuleId.R8_Choice}
    assert get_theory("LF-R.8") == get_theory("LF−R.8")
    th = LF.minus(RuleId.R6_Intensionality).plus(RuleId.R6_Intensionality)
    assert th.rules == LF.rules
    assert get_theory("LF_iota") == get_theory("LF_ι")
    assert not get_theory("Church-1940").enables(RuleId.R6_Intensionality)
    assert get_theory("Henkin-1950").enables(RuleId.V_HenkinExt)


def test_builtin_theories_listed():
    names = [t.name for t in builtin_theories()]
    for want in ["LF", "LF_ι", "LF_ε", "Church-1940", "Henkin-1950", "HFE", "Classicism"]:
        assert want in names
    assert all(f"LF−R.{n}" in names for n in range(1, 10))


def test_rule_ids_parse():
    assert RuleId.parse("R.6") is RuleId.R6_Intensionality
    assert RuleId.parse("R6") is RuleId.R6_Intensionality
    assert RuleId.parse("HenkinExt") is RuleId.V_HenkinExt
    with pytest.raises(ValueError):
        RuleId.parse("R.10")
