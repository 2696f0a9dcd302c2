"""β-equivalence against the breadth-first oracle, plus subject reduction."""
from __future__ import annotations

import pytest

import oracle
from conftest import to_term, to_type
from lfkernel.terms import beta_equivalent, beta_normal_form, contract_at, redex_positions

N_PAIRS = 600


def _pairs(seed=20261016):
    gen = oracle.Generator(seed)
    for _ in range(N_PAIRS):
        t = gen.sample()
        yield t, gen.partner(t)


PAIRS = list(_pairs())


def test_sample_shape():
    assert len(PAIRS) >= 500
    for a, b in PAIRS:
        assert oracle.size(a) <= 12
        assert oracle.type_of(a) == oracle.type_of(b)
        assert all(oracle.ty_depth(x) <= 3 for x in oracle._types_in(a))
    verdicts = [oracle.convertible(a, b) for a, b in PAIRS]
    # both outcomes must be well represented for the agreement to mean anything
    assert 0.2 < sum(verdicts) / len(verdicts) < 0.9


def test_agrees_with_oracle():
    disagreements = []
    for a, b in PAIRS:
        want = oracle.convertible(a, b)
        got = beta_equivalent(to_term(a), to_term(b))
        if want != got:
            disagreements.append((a, b, want))
    assert not disagreements, disagreements[:3]


def test_subject_reduction():
    for a, _ in PAIRS:
        k = to_term(a)
        ty = to_type(oracle.type_of(a))
        assert k.type == ty
        for path in redex_positions(k):
            assert contract_at(k, path).type == ty
        assert beta_normal_form(k).type == ty
        for step in oracle.one_step(oracle.to_db(a)):
            assert oracle.db_type(step) == oracle.type_of(a)


def test_normal_form_is_oracle_sink():
    for a, _ in PAIRS[:200]:
        sinks = [r for r in oracle.reducts(oracle.to_db(a)) if not oracle.one_step(r)]
        assert len(sinks) == 1
        nf = beta_normal_form(to_term(a))
        assert not redex_positions(nf)
