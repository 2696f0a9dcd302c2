from __future__ import annotations

import pytest

from lfkernel import definitions as D
from lfkernel.errors import GuardViolation, NoExtension
from lfkernel.extensions import (
    C_EPS,
    D_IOTA,
    actuality,
    c_eps_1,
    d_iota_1,
    d_iota_2,
    dagger,
    extension_axioms,
    iota_eps_reduction,
)
from lfkernel.kernel import check_theorem, hypothesis
from lfkernel.notation import read
from lfkernel.printer import print_term
from lfkernel.terms import E, T, Fun, fun, pred
from lfkernel.theories import get_theory


def test_dagger_by_type_recursion():
    assert dagger(T) == D.BOT()
    assert dagger(E) == read("ιx^e.⊥", guard="iota")
    assert dagger(Fun(E, T)) == read("λy^e.⊥")
    assert dagger(fun(E, E, E)).type == fun(E, E, E)


def test_axiom_schemas_print_as_expected():
    assert print_term(d_iota_1(E), decorations="auto") == "∀X^{et}. 1_e X → X (ι_e X)"
    assert d_iota_2(T).type == T
    assert c_eps_1(E).type == T


def test_schema_matching():
    ax = d_iota_1(pred(E))
    assert D_IOTA[0].matches(ax)
    assert not D_IOTA[1].matches(ax)
    assert not C_EPS[0].matches(ax)
    assert D_IOTA[0].instance_type(ax) == pred(E)


def test_schema_instances_discharge_in_lf_iota():
    d = hypothesis([], d_iota_1(fun(E, E)))
    assert check_theorem(get_theory("LF_ι"), d).ok
    assert check_theorem(get_theory("LF_ε"), hypothesis([], c_eps_1(T))).ok


def test_lf_iota_lacks_choice_axioms():
    from lfkernel.errors import UndischargedAssumption

    with pytest.raises((UndischargedAssumption, GuardViolation)):
        check_theorem(get_theory("LF_ι"), hypothesis([], c_eps_1(T)))


def test_extension_axioms():
    assert extension_axioms("LF_ι") == D_IOTA
    assert extension_axioms(get_theory("LF_ε")) == D_IOTA + C_EPS
    with pytest.raises(NoExtension):
        extension_axioms("LF")


def test_guarded_notation():
    with pytest.raises(GuardViolation):
        read("@p")
    with pytest.raises(GuardViolation):
        read("εx^e.F x", guard="iota")
    assert read("@p", guard="iota") == actuality(read("p"))
    assert read("α", guard="iota") == D.ALPHA()
    assert read("{x^e : F x}", guard="iota").type == pred(E)


def test_iota_from_epsilon_is_well_typed():
    assert iota_eps_reduction(E).type == Fun(pred(E), E)
    assert not D.DEFAULT_TABLE.lookup("ιε").enabled
