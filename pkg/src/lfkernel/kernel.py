"""The trusted kernel.

A :class:`Derivation` can only be produced by the rule functions below; each
one validates its premises through :func:`_apply`, the same pure function that
:func:`check_theorem` replays node by node.  Rule shapes are matched up to α
only; β adjustments need an explicit :func:`beta_rule` step.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable

from . import definitions as D
from .errors import (
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
from .terms import (
    E,
    T,
    Abs,
    App,
    Base,
    Con,
    Epsilon,
    Fun,
    Include,
    Iota,
    Term,
    Var,
    Variable,
    beta_equivalent,
    constants,
)


class RuleId(enum.Enum):
    R1_Structural = "R.1"
    R2_Beta = "R.2"
    R3_UI = "R.3"
    R4_UG = "R.4"
    R5_NegElim = "R.5"
    R6_Intensionality = "R.6"
    R7_FunExt = "R.7"
    R8_Choice = "R.8"
    R9_PotInf = "R.9"
    V_ActualInfinityE = "ActualInfinityE"
    V_HenkinExt = "HenkinExt"
    V_ClassicismSubst = "ClassicismSubst"
    V_ModalFunExt = "ModalFunExt"

    @property
    def label(self) -> str:
        return self.value

    @classmethod
    def parse(cls, text: str) -> "RuleId":
        key = text.strip().replace("−", "-")
        for r in cls:
            if key in (r.value, r.name, r.value.replace(".", "")):
                return r
            if r.name.startswith("V_") and key in (r.name[2:], "V." + r.value):
                return r
        raise ValueError(f"unknown rule {text!r}")


CORE_RULES = frozenset(r for r in RuleId if r.name.startswith("R"))
VARIANT_RULES = frozenset(RuleId) - CORE_RULES


# ---------------------------------------------------------------- sequents

def _require_formula(a: Term, role: str) -> None:
    if not isinstance(a, Term):
        raise TypeMismatch(f"{role} is not a term: {a!r}")
    if a.type != T:
        raise TypeMismatch(f"{role} has type {a.type}, not t")


@dataclass(frozen=True)
class Sequent:
    """``Γ ⊢ P`` with Γ an ordered tuple; formulae compare up to α."""

    assumptions: tuple
    conclusion: Term

    def __post_init__(self):
        object.__setattr__(self, "assumptions", tuple(self.assumptions))
        for i, a in enumerate(self.assumptions):
            _require_formula(a, f"assumption {i + 1}")
        _require_formula(self.conclusion, "conclusion")

    @property
    def free_vars(self) -> frozenset:
        out = set(self.conclusion.fv)
        for a in self.assumptions:
            out |= a.fv
        return frozenset(out)

    def __str__(self):
        from .printer import print_term

        left = ", ".join(print_term(a) for a in self.assumptions)
        return f"{left} ⊢ {print_term(self.conclusion)}" if left else f"⊢ {print_term(self.conclusion)}"


# ---------------------------------------------------------------- derivations

_TOKEN = object()


class Derivation:
    """A checked rule application.  Only the rule functions can build one."""

    __slots__ = ("rule", "kind", "params", "premises", "sequent")

    def __init__(self, token, rule: RuleId, kind: str | None, params: tuple, premises: tuple, sequent: Sequent):
        if token is not _TOKEN:
            raise TypeError("derivations are built by kernel rules only")
        self.rule = rule
        self.kind = kind
        self.params = params
        self.premises = premises
        self.sequent = sequent

    def __setattr__(self, name, value):
        if hasattr(self, "sequent"):
            raise AttributeError("derivations are immutable")
        object.__setattr__(self, name, value)

    @property
    def conclusion(self) -> Term:
        return self.sequent.conclusion

    @property
    def assumptions(self) -> tuple:
        return self.sequent.assumptions

    def nodes(self) -> list["Derivation"]:
        """Distinct nodes in post-order (premises before conclusions)."""
        order, seen, stack = [], set(), [(self, False)]
        while stack:
            node, done = stack.pop()
            if done:
                order.append(node)
                continue
            if id(node) in seen:
                continue
            seen.add(id(node))
            stack.append((node, True))
            for p in reversed(node.premises):
                if id(p) not in seen:
                    stack.append((p, False))
        return order

    def rules_used(self) -> set:
        return {n.rule for n in self.nodes()}

    def size(self) -> int:
        return len(self.nodes())

    def __repr__(self):
        tag = f"{self.rule.value}:{self.kind}" if self.kind else self.rule.value
        return f"<Derivation {tag} {self.sequent}>"


def _derive(rule: RuleId, kind, params: tuple, premises: tuple, theory=None) -> Derivation:
    if theory is not None and rule not in theory.rules:
        raise RuleDisabled(f"rule {rule.value} is not available in {theory.name}", rule=rule.value)
    for p in premises:
        if not isinstance(p, Derivation):
            raise ShapeMismatch(f"premise is not a derivation: {p!r}")
    seq = _apply(rule, kind, params, tuple(p.sequent for p in premises))
    return Derivation(_TOKEN, rule, kind, params, tuple(premises), seq)


# ---------------------------------------------------------------- matching helpers

def _binary(t: Term, head: Term):
    """``(a, b)`` when ``t`` is literally ``head a b``."""
    if isinstance(t, App) and isinstance(t.fun, App) and t.fun.fun == head:
        return t.fun.arg, t.arg
    return None


def _subset_parts(t: Term):
    if isinstance(t, App) and isinstance(t.fun, App):
        h = t.fun.fun
        if isinstance(h, Con) and isinstance(h.const, Include):
            return h.const.sigma, t.fun.arg, t.arg
    return None


def _eq_parts(t: Term):
    if isinstance(t, App) and isinstance(t.fun, App):
        sigma = t.fun.arg.type
        if t.fun.fun == D.EQ(sigma):
            return sigma, t.fun.arg, t.arg
    return None


def _fv_all(terms: Iterable[Term]) -> set:
    out = set()
    for t in terms:
        out |= t.fv
    return out


def _fresh_check(x: Variable, where: dict, rule: str) -> None:
    for role, terms in where.items():
        for t in terms:
            if x in t.fv:
                raise FreshnessViolation(
                    f"{rule}: variable {x.name} occurs free in {role}", variable=x.name, role=role
                )


def _binder_parts(t: Term, head_fn):
    """For ``Q_σ (λx.B)`` with ``Q_σ = head_fn(σ)`` return ``(x, B)`` (named view)."""
    if isinstance(t, App) and isinstance(t.arg, Abs):
        sigma = t.arg.type.dom
        if t.fun == head_fn(sigma):
            return t.arg.split()
    return None


def _nat_parts(t: Term):
    if isinstance(t, App):
        n = t.arg
        ty = n.type
        if isinstance(ty, Fun) and ty.cod == T and isinstance(ty.dom, Fun) and ty.dom.cod == T:
            sigma = ty.dom.dom
            if t.fun == D.NAT(sigma):
                return sigma, n
    return None


def _descend(t: Term, path: tuple):
    """Yield the subterm at ``path`` (0 = function/body, 1 = argument) in named view."""
    for step in path:
        if isinstance(t, App):
            t = t.fun if step == 0 else t.arg
        elif isinstance(t, Abs) and step == 0:
            t = t.split()[1]
        else:
            raise ShapeMismatch(f"path {path} leaves the term")
    return t


def _replace_at(t: Term, path: tuple, new: Term) -> Term:
    if not path:
        if new.type != t.type:
            raise TypeMismatch("replacement changes the type")
        return new
    step, rest = path[0], path[1:]
    if isinstance(t, App):
        if step == 0:
            return App(_replace_at(t.fun, rest, new), t.arg)
        return App(t.fun, _replace_at(t.arg, rest, new))
    if isinstance(t, Abs) and step == 0:
        x, body = t.split()
        return Abs(x, _replace_at(body, rest, new))
    raise ShapeMismatch(f"path {path} leaves the term")


# ---------------------------------------------------------------- the rules

def _apply(rule: RuleId, kind, params: tuple, prem: tuple) -> Sequent:
    """Conclusion of ``rule`` for the given parameters and premise sequents."""
    fn = _RULES[rule]
    return fn(kind, params, prem)


def _arity(prem, n, name):
    if len(prem) != n:
        raise ShapeMismatch(f"{name} takes {n} premise(s), got {len(prem)}")


def _r1(kind, params, prem) -> Sequent:
    if kind == "hypothesis":
        _arity(prem, 0, "hypothesis")
        gamma, p = params
        return Sequent(tuple(gamma) + (p,), p)
    if kind == "contraction":
        _arity(prem, 1, "contraction")
        (s,) = prem
        g = s.assumptions
        if len(g) < 2 or g[-1] != g[-2]:
            raise ShapeMismatch("contraction needs Γ,P,P ⊢ Q: the last two assumptions differ")
        return Sequent(g[:-1], s.conclusion)
    if kind == "weakening":
        _arity(prem, 1, "weakening")
        (s,) = prem
        (p,) = params
        return Sequent(s.assumptions + (p,), s.conclusion)
    if kind == "exchange":
        _arity(prem, 1, "exchange")
        (s,) = prem
        (i,) = params
        g = list(s.assumptions)
        if not isinstance(i, int) or i < 0 or i + 1 >= len(g):
            raise ShapeMismatch(f"exchange position {i} needs two adjacent assumptions")
        g[i], g[i + 1] = g[i + 1], g[i]
        return Sequent(tuple(g), s.conclusion)
    if kind == "cut":
        _arity(prem, 2, "cut")
        left, right = prem
        if not right.assumptions or right.assumptions[-1] != left.conclusion:
            raise ShapeMismatch("cut needs Γ ⊢ P and Δ,P ⊢ Q: the last assumption of the second premise is not P")
        return Sequent(left.assumptions + right.assumptions[:-1], right.conclusion)
    raise ShapeMismatch(f"unknown structural rule {kind!r}")


def _r2(kind, params, prem) -> Sequent:
    _arity(prem, 1, "β")
    (s,) = prem
    (q,) = params
    _require_formula(q, "β target")
    if not beta_equivalent(s.conclusion, q):
        raise NotBetaEquivalent("β: the target is not β-equivalent to the premise conclusion")
    return Sequent(s.assumptions, q)


def _r3(kind, params, prem) -> Sequent:
    _arity(prem, 2, "universal instantiation")
    inc, inst = prem
    parts = _subset_parts(inc.conclusion)
    if parts is None:
        raise ShapeMismatch("universal instantiation: first premise is not of the form F ⊆ G")
    sigma, f, g = parts
    if inc.assumptions != inst.assumptions:
        raise ContextMismatch("universal instantiation: the premises have different assumptions")
    c = inst.conclusion
    if not isinstance(c, App) or c.fun != f:
        raise ShapeMismatch("universal instantiation: second premise is not F applied to a term")
    return Sequent(inc.assumptions, App(g, c.arg))


def _r4(kind, params, prem) -> Sequent:
    _arity(prem, 1, "universal generalization")
    (s,) = prem
    (x,) = params
    if not s.assumptions:
        raise ShapeMismatch("universal generalization needs an assumption F x")
    *gamma, fx = s.assumptions
    gx = s.conclusion
    xv = Var(x)
    if not (isinstance(fx, App) and fx.arg == xv):
        raise ShapeMismatch(f"universal generalization: last assumption is not F {x.name}")
    if not (isinstance(gx, App) and gx.arg == xv):
        raise ShapeMismatch(f"universal generalization: conclusion is not G {x.name}")
    f, g = fx.fun, gx.fun
    _fresh_check(x, {"F": [f], "G": [g], "the assumptions": gamma}, "universal generalization")
    return Sequent(tuple(gamma), D.subset(f, g))


def _r5(kind, params, prem) -> Sequent:
    _arity(prem, 1, "negation elimination")
    (s,) = prem
    if not s.assumptions or s.assumptions[-1] != D.neg(s.conclusion):
        raise ShapeMismatch("negation elimination needs Γ,¬P ⊢ P")
    return Sequent(s.assumptions[:-1], s.conclusion)


def _singleton(s: Sequent, rule: str, which: str) -> Term:
    if len(s.assumptions) != 1:
        if len(s.assumptions) > 1:
            raise NonEmptyContext(
                f"{rule}: the {which} premise must have exactly one assumption, found {len(s.assumptions)}"
            )
        raise ShapeMismatch(f"{rule}: the {which} premise has no assumption")
    return s.assumptions[0]


def _r6(kind, params, prem) -> Sequent:
    _arity(prem, 2, "intensionality")
    a, b = prem
    p = _singleton(a, "intensionality", "first")
    q = _singleton(b, "intensionality", "second")
    if a.conclusion != q or b.conclusion != p:
        raise ShapeMismatch("intensionality needs P ⊢ Q and Q ⊢ P")
    return Sequent((), D.eq(p, q))


def _r7(kind, params, prem) -> Sequent:
    _arity(prem, 1, "function extensionality")
    (s,) = prem
    (x,) = params
    parts = _eq_parts(s.conclusion)
    xv = Var(x)
    if parts is None:
        raise ShapeMismatch("function extensionality needs f x = g x")
    _, fx, gx = parts
    if not (isinstance(fx, App) and fx.arg == xv and isinstance(gx, App) and gx.arg == xv):
        raise ShapeMismatch(f"function extensionality: sides are not applications to {x.name}")
    f, g = fx.fun, gx.fun
    _fresh_check(x, {"f": [f], "g": [g], "the assumptions": s.assumptions}, "function extensionality")
    return Sequent(s.assumptions, D.eq(f, g))


def _r8(kind, params, prem) -> Sequent:
    _arity(prem, 1, "choice")
    (s,) = prem
    (f,) = params
    outer = _binder_parts(s.conclusion, D.FORALL)
    if outer is None:
        raise ShapeMismatch("choice needs ∀x.∃y.R x y")
    x, body = outer
    inner = _binder_parts(body, D.EXISTS)
    if inner is None:
        raise ShapeMismatch("choice needs ∀x.∃y.R x y")
    y, rxy = inner
    pair = None
    if isinstance(rxy, App) and isinstance(rxy.fun, App) and rxy.arg == Var(y) and rxy.fun.arg == Var(x):
        pair = rxy.fun.fun
    if pair is None or x in pair.fv or y in pair.fv:
        raise ShapeMismatch("choice: the matrix is not a relation R applied to x and y")
    if f.type != Fun(x.type, y.type):
        raise TypeMismatch(f"choice: the function variable must have type {Fun(x.type, y.type)}")
    _fresh_check(f, {"R": [pair], "the assumptions": s.assumptions}, "choice")
    fx = App(Var(f), Var(x))
    return Sequent(s.assumptions, D.exists(f, D.forall(x, App(App(pair, Var(x)), fx))))


def _r9(kind, params, prem) -> Sequent:
    _arity(prem, 1, "potential infinity")
    (s,) = prem
    parts = _nat_parts(s.conclusion)
    if parts is None:
        raise ShapeMismatch("potential infinity needs ℕ_σ n")
    sigma, n = parts
    if sigma not in (E, T):
        raise TypeRestriction(f"potential infinity applies at types e and t only, not {sigma}")
    return Sequent(s.assumptions, D.neq(D.BOT(), App(D.EXISTS(Fun(sigma, T)), n)))


def _v_actual(kind, params, prem) -> Sequent:
    _arity(prem, 1, "actual infinity")
    (s,) = prem
    parts = _nat_parts(s.conclusion)
    if parts is None:
        raise ShapeMismatch("actual infinity needs ℕ_e n")
    sigma, n = parts
    if sigma != E:
        raise TypeRestriction(f"actual infinity applies at type e only, not {sigma}")
    return Sequent(s.assumptions, App(D.EXISTS(Fun(E, T)), n))


def _v_henkin(kind, params, prem) -> Sequent:
    _arity(prem, 2, "extensionality")
    a, b = prem
    if not a.assumptions or not b.assumptions:
        raise ShapeMismatch("extensionality needs Γ,P ⊢ Q and Γ,Q ⊢ P")
    p, q = a.assumptions[-1], b.assumptions[-1]
    if a.assumptions[:-1] != b.assumptions[:-1]:
        raise ContextMismatch("extensionality: the premises have different side assumptions")
    if a.conclusion != q or b.conclusion != p:
        raise ShapeMismatch("extensionality needs Γ,P ⊢ Q and Γ,Q ⊢ P")
    return Sequent(a.assumptions[:-1], D.eq(p, q))


def _v_classicism(kind, params, prem) -> Sequent:
    _arity(prem, 2, "substitution rule")
    a, b = prem
    r, path = params
    _require_formula(r, "context formula")
    p = _singleton(a, "substitution rule", "first")
    q = _singleton(b, "substitution rule", "second")
    if a.conclusion != q or b.conclusion != p:
        raise ShapeMismatch("substitution rule needs P ⊢ Q and Q ⊢ P")
    path = tuple(path)
    if _descend(r, path) != p:
        raise ShapeMismatch("substitution rule: the context has no occurrence of P at the given position")
    return Sequent((r,), _replace_at(r, path, q))


def _v_modal(kind, params, prem) -> Sequent:
    _arity(prem, 1, "modalised function extensionality")
    (s,) = prem
    c = s.conclusion
    if not (isinstance(c, App) and c.fun == D.BOX()):
        raise ShapeMismatch("modalised function extensionality needs □∀x.f x = g x")
    inner = _binder_parts(c.arg, D.FORALL)
    if inner is None:
        raise ShapeMismatch("modalised function extensionality needs □∀x.f x = g x")
    x, body = inner
    parts = _eq_parts(body)
    xv = Var(x)
    if parts is None:
        raise ShapeMismatch("modalised function extensionality needs □∀x.f x = g x")
    _, fx, gx = parts
    if not (isinstance(fx, App) and fx.arg == xv and isinstance(gx, App) and gx.arg == xv):
        raise ShapeMismatch("modalised function extensionality: sides are not applications to the bound variable")
    _fresh_check(x, {"f": [fx.fun], "g": [gx.fun]}, "modalised function extensionality")
    return Sequent(s.assumptions, D.eq(fx.fun, gx.fun))


_RULES = {
    RuleId.R1_Structural: _r1,
    RuleId.R2_Beta: _r2,
    RuleId.R3_UI: _r3,
    RuleId.R4_UG: _r4,
    RuleId.R5_NegElim: _r5,
    RuleId.R6_Intensionality: _r6,
    RuleId.R7_FunExt: _r7,
    RuleId.R8_Choice: _r8,
    RuleId.R9_PotInf: _r9,
    RuleId.V_ActualInfinityE: _v_actual,
    RuleId.V_HenkinExt: _v_henkin,
    RuleId.V_ClassicismSubst: _v_classicism,
    RuleId.V_ModalFunExt: _v_modal,
}


# ---------------------------------------------------------------- public rule API

def hypothesis(gamma, p: Term, theory=None) -> Derivation:
    """Γ, P ⊢ P."""
    return _derive(RuleId.R1_Structural, "hypothesis", (tuple(gamma), p), (), theory)


def contraction(d: Derivation, theory=None) -> Derivation:
    return _derive(RuleId.R1_Structural, "contraction", (), (d,), theory)


def weakening(d: Derivation, p: Term, theory=None) -> Derivation:
    return _derive(RuleId.R1_Structural, "weakening", (p,), (d,), theory)


def exchange(d: Derivation, i: int, theory=None) -> Derivation:
    """Swap assumptions ``i`` and ``i + 1``."""
    return _derive(RuleId.R1_Structural, "exchange", (i,), (d,), theory)


def cut(d1: Derivation, d2: Derivation, theory=None) -> Derivation:
    return _derive(RuleId.R1_Structural, "cut", (), (d1, d2), theory)


def structural(kind: str, *inputs, theory=None) -> Derivation:
    fn = {"hypothesis": hypothesis, "contraction": contraction, "weakening": weakening,
          "exchange": exchange, "cut": cut}.get(kind)
    if fn is None:
        raise ShapeMismatch(f"unknown structural rule {kind!r}")
    return fn(*inputs, theory=theory)


def beta_rule(d: Derivation, q: Term, theory=None) -> Derivation:
    return _derive(RuleId.R2_Beta, None, (q,), (d,), theory)


def universal_instantiation(d1: Derivation, d2: Derivation, theory=None) -> Derivation:
    return _derive(RuleId.R3_UI, None, (), (d1, d2), theory)


def universal_generalization(d: Derivation, x: Variable | Var, theory=None) -> Derivation:
    return _derive(RuleId.R4_UG, None, (_variable(x),), (d,), theory)


def negation_elimination(d: Derivation, theory=None) -> Derivation:
    return _derive(RuleId.R5_NegElim, None, (), (d,), theory)


def intensionality(d1: Derivation, d2: Derivation, theory=None) -> Derivation:
    return _derive(RuleId.R6_Intensionality, None, (), (d1, d2), theory)


def function_extensionality(d: Derivation, x: Variable | Var, theory=None) -> Derivation:
    return _derive(RuleId.R7_FunExt, None, (_variable(x),), (d,), theory)


def choice(d: Derivation, f: Variable | Var, theory=None) -> Derivation:
    return _derive(RuleId.R8_Choice, None, (_variable(f),), (d,), theory)


def potential_infinity(d: Derivation, theory=None) -> Derivation:
    return _derive(RuleId.R9_PotInf, None, (), (d,), theory)


def variant_rule(rule: RuleId, *inputs, theory=None) -> Derivation:
    """Apply one of the variant rules; the theory (default LF) must enable it."""
    if rule not in VARIANT_RULES:
        raise ShapeMismatch(f"{rule.value} is not a variant rule")
    if theory is None:
        from .theories import get_theory

        theory = get_theory("LF")
    derivs = tuple(i for i in inputs if isinstance(i, Derivation))
    extra = tuple(i for i in inputs if not isinstance(i, Derivation))
    if rule is RuleId.V_ClassicismSubst:
        if len(extra) != 2:
            raise ShapeMismatch("substitution rule takes a context formula and a position")
        params = (extra[0], tuple(extra[1]))
    else:
        params = ()
    return _derive(rule, None, params, derivs, theory)


def _variable(x) -> Variable:
    if isinstance(x, Var):
        return x.var
    if isinstance(x, Variable):
        return x
    raise TypeMismatch(f"expected a variable, got {x!r}")


# ---------------------------------------------------------------- theories

@dataclass(frozen=True)
class Theory:
    """A rule set, axioms X (sentences or schemas) and a notation guard."""

    name: str
    rules: frozenset
    axioms: tuple = ()
    guard: str = "core"
    description: str = ""

    def enables(self, rule: RuleId) -> bool:
        return rule in self.rules

    def is_axiom(self, formula: Term) -> bool:
        for ax in self.axioms:
            if isinstance(ax, Term):
                if ax == formula:
                    return True
            elif ax.matches(formula):
                return True
        return False

    def minus(self, *rules: RuleId, name: str | None = None) -> "Theory":
        label = name or self.name + "".join(f"−{r.value}" for r in rules)
        return Theory(label, self.rules - set(rules), self.axioms, self.guard, self.description)

    def plus(self, *items, name: str | None = None) -> "Theory":
        rules = set(self.rules)
        axioms = list(self.axioms)
        for it in items:
            if isinstance(it, RuleId):
                rules.add(it)
            else:
                axioms.append(it)
        label = name or self.name + "+" + "+".join(getattr(i, "value", getattr(i, "name", "X")) for i in items)
        return Theory(label, frozenset(rules), tuple(axioms), self.guard, self.description)

    def with_guard(self, guard: str) -> "Theory":
        return Theory(self.name, self.rules, self.axioms, guard, self.description)


@dataclass
class TheoremReport:
    ok: bool
    theory: str
    theorem: Term
    sequent: Sequent
    discharged: list = field(default_factory=list)
    rules: list = field(default_factory=list)
    nodes: int = 0

    def __str__(self):
        from .printer import print_term

        return print_term(self.theorem)


_GUARD_OF = {Iota: "iota", Epsilon: "eps"}


def check_theorem(theory: Theory, d: Derivation) -> TheoremReport:
    """Re-validate ``d`` node by node against ``theory``."""
    if not isinstance(d, Derivation):
        raise ShapeMismatch("not a derivation")
    nodes = d.nodes()
    seen_formulas: set = set()
    foreign = None  # a stray constant is reported after any undischarged assumption
    for node in nodes:
        if node.rule not in theory.rules:
            raise RuleDisabled(
                f"rule {node.rule.value} is not available in {theory.name}", rule=node.rule.value, node=repr(node)
            )
        seq = _apply(node.rule, node.kind, node.params, tuple(p.sequent for p in node.premises))
        if seq != node.sequent:
            raise ShapeMismatch(f"node {node!r} does not replay to its recorded sequent")
        for f in seq.assumptions + (seq.conclusion,):
            if f.skel in seen_formulas:
                continue
            seen_formulas.add(f.skel)
            for c in constants(f):
                need = _GUARD_OF.get(type(c))
                if need and not D.guard_allows(theory.guard, need) and foreign is None:
                    foreign = GuardViolation(f"{theory.name} does not admit the constant {type(c).__name__}")
    discharged = []
    for a in d.assumptions:
        if not theory.is_axiom(a):
            from .printer import print_term

            raise UndischargedAssumption(
                f"assumption {print_term(a)} is not an axiom of {theory.name}", formula=print_term(a)
            )
        discharged.append(a)
    if foreign is not None:
        raise foreign
    return TheoremReport(
        ok=True,
        theory=theory.name,
        theorem=d.conclusion,
        sequent=d.sequent,
        discharged=discharged,
        rules=sorted(r.value for r in d.rules_used()),
        nodes=len(nodes),
    )
