from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from conftest import to_term
from lfkernel.errors import FuelExhausted, IllTypedApplication, TypeMismatch
from lfkernel.terms import (
    Abs,
    App,
    Con,
    E,
    Fun,
    Include,
    T,
    Var,
    Variable,
    alpha_equal,
    beta_equivalent,
    beta_normal_form,
    fun,
    is_normal,
    lam,
    pred,
    substitute,
)

x, y, z = (Variable(c, E) for c in "xyz")
f = Variable("f", fun(E, E))
p, q = Variable("p", T), Variable("q", T)


def test_fun_associates_right():
    assert fun(T, T, T) == Fun(T, Fun(T, T))
    assert pred(E) == Fun(E, T)
    assert Include(E).type == fun(pred(E), pred(E), T)


def test_type_depth():
    assert E.depth == 0
    assert fun(E, T).depth == 1
    assert Fun(pred(E), T).depth == 2


def test_application_checks_types():
    with pytest.raises(IllTypedApplication):
        App(Var(x), Var(y))
    with pytest.raises(IllTypedApplication):
        App(Var(f), Var(p))


def test_alpha_equivalence_ignores_binder_names():
    assert lam(x, Var(x)) == lam(y, Var(y))
    assert lam(x, Var(y)) != lam(y, Var(y))
    assert hash(lam([x, y], App(Var(f), Var(x)))) == hash(lam([z, y], App(Var(f), Var(z))))


def test_free_variables():
    t = lam(x, App(Var(f), Var(y)))
    assert t.fv == {f, y}


def test_named_view_primes_on_clash():
    t = substitute(lam(y, App(Var(f), Var(x))), x, Var(y))
    v, body = t.split()
    assert v == y.prime()
    assert body == App(Var(f), Var(y))
    assert lam(x, Var(x)).bound == x


def test_substitution_avoids_capture():
    # (λy.f x)[y/x] must not capture y
    t = lam(y, App(Var(f), Var(x)))
    s = substitute(t, x, Var(y))
    assert s.fv == {f, y}
    assert s != lam(y, App(Var(f), Var(y)))
    assert s == lam(z, App(Var(f), Var(y)))


def test_substitution_type_mismatch():
    with pytest.raises(TypeMismatch):
        substitute(Var(x), x, Var(p))


def test_beta_normal_form():
    redex = App(lam(x, App(Var(f), Var(x))), Var(y))
    assert beta_normal_form(redex) == App(Var(f), Var(y))
    assert is_normal(App(Var(f), Var(y)))
    assert not is_normal(redex)
    assert beta_equivalent(redex, App(Var(f), Var(y)))


def test_beta_equivalent_requires_same_type():
    with pytest.raises(TypeMismatch):
        beta_equivalent(Var(x), Var(p))


def test_fuel_is_reported():
    # a long chain of nested redexes exceeds a tiny budget
    t = Var(y)
    for _ in range(8):
        t = App(lam(x, App(Var(f), Var(x))), t)
    with pytest.raises(FuelExhausted):
        beta_normal_form(t, fuel=3)
    assert beta_normal_form(t).type == E


def test_constants_are_terms():
    sub = Con(Include(E))
    assert sub.type == fun(pred(E), pred(E), T)
    assert sub.fv == frozenset()


_seeds = st.integers(min_value=0, max_value=10**6)


@settings(max_examples=80, deadline=None)
@given(_seeds)
def test_normal_form_is_idempotent(seed):
    t = to_term(oracle.Generator(seed).sample())
    nf = beta_normal_form(t)
    assert beta_normal_form(nf) == nf
    assert beta_equivalent(t, nf)


@settings(max_examples=80, deadline=None)
@given(_seeds)
def test_alpha_renaming_is_invisible(seed):
    gen = oracle.Generator(seed)
    a = gen.sample()
    renamed = _rename(a, {})
    assert to_term(a) == to_term(renamed)
    assert alpha_equal(to_term(a), to_term(renamed))


@settings(max_examples=60, deadline=None)
@given(_seeds, st.sampled_from("xyz"))
def test_substitution_commutes_with_normalisation(seed, letter):
    t = to_term(oracle.Generator(seed).sample())
    v = Variable(letter, E)
    s = App(Var(f), Var(Variable("w", E, 99)))
    lhs = beta_normal_form(substitute(t, v, s))
    rhs = beta_normal_form(substitute(beta_normal_form(t), v, s))
    assert lhs == rhs


def _rename(t, env):
    if t[0] == "var":
        return ("var", env.get(t[1], t[1]), t[2])
    if t[0] == "lam":
        new = t[1] + "_r"
        return ("lam", new, t[2], _rename(t[3], {**env, t[1]: new}))
    return ("app", _rename(t[1], env), _rename(t[2], env))
