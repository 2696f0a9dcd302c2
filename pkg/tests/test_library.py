from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lfkernel import definitions as D
from lfkernel.errors import ContextMismatch, NonEmptyContext, RuleDisabled, ShapeMismatch, UnknownRule, UnknownTheorem
from lfkernel.kernel import RuleId, check_theorem, hypothesis
from lfkernel.library import (
    CATALOG,
    DERIVED_RULES,
    conditional_proof,
    derived_rule,
    library_theorem,
    minimal_theory,
    modus_ponens,
    nat_by_closure,
    numeral_is_nat,
    slingshot_attempt,
    subst_equiv,
)
from lfkernel.library import logic as L
from lfkernel.notation import read
from lfkernel.terms import E, T, App, Var, Variable, pred
from lfkernel.theories import get_theory

P, Q = read("p"), read("q")
x = Variable("x", E)
F, G = Variable("F", pred(E)), Variable("G", pred(E))
Fx, Gx = App(Var(F), Var(x)), App(Var(G), Var(x))


@pytest.mark.parametrize("name", list(CATALOG))
def test_catalog_entry_checks(name):
    entry = CATALOG[name]
    d = library_theorem(name)
    assert check_theorem(get_theory(entry.theory), d).ok
    assert d.conclusion == read(entry.statement, guard="iota")
    used = d.rules_used()
    assert used <= set(entry.allowed_rules)
    th = minimal_theory(name)
    assert th.rules == used
    for rule in used:
        with pytest.raises(RuleDisabled):
            check_theorem(th.minus(rule), d)


def test_unknown_theorem():
    with pytest.raises(UnknownTheorem):
        library_theorem("fermat")


def test_aliases():
    assert library_theorem("alpha_iff_top_iota") is library_theorem("alpha_iff_top_ι")


def test_modus_ponens_follows_the_tree():
    gamma = (P, D.imp(P, Q))
    d = modus_ponens(L.assume(gamma, P), L.assume(gamma, D.imp(P, Q)))
    assert d.assumptions == gamma and d.conclusion == Q
    assert d.rules_used() <= {RuleId.R1_Structural, RuleId.R2_Beta, RuleId.R3_UI}


def test_modus_ponens_needs_matching_contexts():
    with pytest.raises(ContextMismatch):
        modus_ponens(hypothesis([Q], P), hypothesis([], D.imp(P, Q)))


def test_conditional_proof():
    d = conditional_proof(hypothesis([], P))
    assert d.assumptions == () and d.conclusion == D.imp(P, P)


def test_derived_rule_dispatch():
    assert "and_intro" in DERIVED_RULES
    both = derived_rule("and_intro", [hypothesis([], P), L.assume((P,), P)])
    assert both.conclusion == D.conj(P, P)
    assert derived_rule("and_elim_l", [both]).conclusion == P
    assert derived_rule("eq_refl", [E]).conclusion == read("∀x^e.x = x")
    assert derived_rule("eq_refl", [P]).conclusion == D.eq(P, P)
    nec = derived_rule("necessitation", [L.top_thm()])
    assert nec.conclusion == D.box(D.TOP())


def test_derived_rule_errors():
    with pytest.raises(UnknownRule):
        derived_rule("magic", [])
    with pytest.raises(ShapeMismatch):
        derived_rule("and_intro", [hypothesis([], P)])
    with pytest.raises(ShapeMismatch):
        derived_rule("necessitation", [hypothesis([], P)])


def test_quantifier_rules():
    d = L.forall_intro(L.cp(hypothesis([], Fx)), x)
    assert d.conclusion == D.forall(x, D.imp(Fx, Fx))
    a = Variable("a", E)
    assert L.forall_elim(d, Var(a)).conclusion == D.imp(App(Var(F), Var(a)), App(Var(F), Var(a)))
    ex = L.exists_intro(hypothesis([], Fx), x, Fx, Var(x))
    assert ex.conclusion == D.exists(x, Fx)


def test_slingshot_is_blocked():
    with pytest.raises(NonEmptyContext):
        slingshot_attempt()


def test_henkin_inconsistency_under_the_extended_system():
    from lfkernel.library import henkin_inconsistency

    th = get_theory("LF+HenkinExt")
    d = henkin_inconsistency(th)
    assert d.conclusion == D.BOT() and check_theorem(th, d).ok
    with pytest.raises(RuleDisabled):
        henkin_inconsistency("LF")


# ---- substitution of provable equivalents

def _swap_pair(a, b):
    """a ∧ b ⊢ b ∧ a and back."""
    h1 = hypothesis([], D.conj(a, b))
    d1 = L.and_intro(L.and_elim_r(h1), L.and_elim_l(h1))
    h2 = hypothesis([], D.conj(b, a))
    d2 = L.and_intro(L.and_elim_r(h2), L.and_elim_l(h2))
    return d1, d2


def test_subst_equiv_under_a_capturing_binder():
    d1, d2 = _swap_pair(Fx, Gx)
    h = Variable("h", T)
    ctx = D.forall(x, D.box(Var(h)))
    got = subst_equiv(d1, d2, (ctx, h))
    assert got.assumptions == (read("∀x^e.□(F x ∧ G x)"),)
    assert got.conclusion == read("∀x^e.□(G x ∧ F x)")
    assert check_theorem(get_theory("LF").plus(got.assumptions[0]), got).ok


_WRAPPERS = ["neg", "box", "and_l", "or_r", "imp_l", "imp_r", "forall", "exists"]


def _wrap(kind, c):
    q = Var(Variable("q", T))
    return {
        "neg": lambda t: D.neg(c(t)),
        "box": lambda t: D.box(c(t)),
        "and_l": lambda t: D.conj(c(t), q),
        "or_r": lambda t: D.disj(q, c(t)),
        "imp_l": lambda t: D.imp(c(t), q),
        "imp_r": lambda t: D.imp(q, c(t)),
        "forall": lambda t: D.forall(x, c(t)),
        "exists": lambda t: D.exists(x, c(t)),
    }[kind]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from(_WRAPPERS), min_size=1, max_size=4))
def test_subst_equiv_random_contexts(kinds):
    ctx = lambda t: t  # noqa: E731
    for k in kinds:
        ctx = _wrap(k, ctx)
    d1, d2 = _swap_pair(Fx, Gx)
    got = subst_equiv(d1, d2, ctx)
    assert got.assumptions == (ctx(D.conj(Fx, Gx)),)
    assert got.conclusion == ctx(D.conj(Gx, Fx))
    hole = Variable("h", T)
    assert subst_equiv(d1, d2, (ctx(Var(hole)), hole)).sequent == got.sequent


# ---- numerals

@pytest.mark.parametrize("sigma", [E, T], ids=["e", "t"])
@pytest.mark.parametrize("k", range(5))
def test_numeral_is_nat(k, sigma):
    d = numeral_is_nat(k, sigma)
    assert d.assumptions == ()
    assert d.conclusion == D.nat(D.numeral(k, sigma))
    assert check_theorem(get_theory("LF"), d).ok


def test_nat_by_closure_uses_only_basic_rules():
    d = nat_by_closure(3, T)
    assert d.rules_used() <= {RuleId.R1_Structural, RuleId.R2_Beta, RuleId.R3_UI, RuleId.R4_UG}
