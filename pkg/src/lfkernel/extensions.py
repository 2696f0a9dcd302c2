"""Description and choice: †, the D_ι and C_ε axiom schemas, guarded notation."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import definitions as D
from .errors import NoExtension
from .terms import T, Abs, App, Con, Epsilon, Fun, Iota, Term, Type, Var, Variable, pred


def dagger(sigma: Type) -> Term:
    """The default value †_σ: ι λx.⊥ at e, ⊥ at t, λx.†_τ at στ."""
    return D.DAGGER(sigma)


def _schema_var(sigma: Type) -> Var:
    return Var(Variable("X", pred(sigma)))


def d_iota_1(sigma: Type) -> Term:
    """∀X^{σt}.(∃!X → X(ιX))."""
    X = _schema_var(sigma)
    i = App(Con(Iota(sigma)), X)
    return D.forall(X, D.imp(App(D.EXISTS1(sigma), X), App(X, i)))


def d_iota_2(sigma: Type) -> Term:
    """∀X^{σt}.(¬∃!X → ιX = †)."""
    X = _schema_var(sigma)
    i = App(Con(Iota(sigma)), X)
    return D.forall(X, D.imp(D.neg(App(D.EXISTS1(sigma), X)), D.eq(i, dagger(sigma))))


def c_eps_1(sigma: Type) -> Term:
    """∀X^{σt}.(∃X → X(εX))."""
    X = _schema_var(sigma)
    e = App(Con(Epsilon(sigma)), X)
    return D.forall(X, D.imp(App(D.EXISTS(sigma), X), App(X, e)))


def c_eps_2(sigma: Type) -> Term:
    """∀X^{σt}.(¬∃X → εX = †)."""
    X = _schema_var(sigma)
    e = App(Con(Epsilon(sigma)), X)
    return D.forall(X, D.imp(D.neg(App(D.EXISTS(sigma), X)), D.eq(e, dagger(sigma))))


@dataclass(frozen=True)
class AxiomSchema:
    """A family of sentences indexed by a type σ; matched on demand."""

    name: str
    generator: Callable[[Type], Term]

    def __call__(self, sigma: Type) -> Term:
        return self.generator(sigma)

    def instance_type(self, formula: Term) -> Type | None:
        # every schema here is ∀_σ applied to an abstraction over X^{σt}
        if isinstance(formula, App) and isinstance(formula.arg, Abs):
            ty = formula.arg.type.dom
            if isinstance(ty, Fun) and ty.cod == T:
                return ty.dom
        return None

    def matches(self, formula: Term) -> bool:
        sigma = self.instance_type(formula)
        return sigma is not None and self.generator(sigma) == formula


D_IOTA = (AxiomSchema("D_ι.1", d_iota_1), AxiomSchema("D_ι.2", d_iota_2))
C_EPS = (AxiomSchema("C_ε.1", c_eps_1), AxiomSchema("C_ε.2", c_eps_2))


def extension_axioms(theory) -> tuple:
    """The schemas LF_ι or LF_ε adds to LF."""
    name = theory if isinstance(theory, str) else theory.name
    key = name.replace("_", "").replace("ι", "iota").replace("ε", "eps")
    if key in ("LFiota",):
        return D_IOTA
    if key in ("LFeps",):
        return D_IOTA + C_EPS
    if not isinstance(theory, str):
        schemas = tuple(a for a in theory.axioms if isinstance(a, AxiomSchema))
        if schemas:
            return schemas
    raise NoExtension(f"{name} has no description or choice axioms")


def extension_definitions() -> tuple:
    """The guarded notation entries (†, class abstraction, @, α, class, ∃!, bounded and ι/ε binders)."""
    return D.EXTENSION_DEFINITIONS


def actuality(p: Term) -> Term:
    return App(D.ACTUALITY(), p)


def iota_eps_reduction(sigma: Type) -> Term:
    """ι_σ defined from ε (the reduction entry; off by default)."""
    return D.IOTA_EPS(sigma)
