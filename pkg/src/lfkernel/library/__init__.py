"""Proof library: derived rules and a catalog of kernel-checked theorems."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from types import MappingProxyType
from typing import Callable

from .. import definitions as D
from ..errors import ShapeMismatch, UnknownRule, UnknownTheorem
from ..kernel import CORE_RULES, Derivation, RuleId, Theory, check_theorem
from ..terms import Abs, Term, Type, Var, Variable
from . import logic, theorems
from .logic import conditional_proof, modus_ponens, subst_equiv
from .numerals import nat_by_closure, numeral_is_nat

__all__ = [
    "CATALOG",
    "LibraryEntry",
    "catalog",
    "conditional_proof",
    "derived_rule",
    "henkin_inconsistency",
    "library_theorem",
    "minimal_theory",
    "modus_ponens",
    "nat_by_closure",
    "numeral_is_nat",
    "slingshot_attempt",
    "subst_equiv",
]

R = RuleId
_PROP = (R.R1_Structural, R.R2_Beta, R.R3_UI, R.R4_UG)
_CLASSICAL = _PROP + (R.R5_NegElim,)
_S5 = _CLASSICAL + (R.R6_Intensionality, R.R7_FunExt, R.R8_Choice)
_MODAL = _CLASSICAL + (R.R6_Intensionality, R.R7_FunExt)


@dataclass(frozen=True)
class LibraryEntry:
    """A named theorem, the theory it lives in and the rules it may use."""

    name: str
    theory: str
    statement: str
    builder: Callable[[], Derivation] = field(repr=False, compare=False)
    allowed_rules: tuple = ()
    note: str = ""


def _e(name, theory, statement, builder, allowed_rules, note=""):
    return name, LibraryEntry(name, theory, statement, builder, tuple(allowed_rules), note)


CATALOG = MappingProxyType(dict([
    _e("s4_K", "LF", "∀p q.(□(p → q) → □p → □q)", theorems.s4_k, _S5),
    _e("s4_T", "LF", "∀p.(□p → p)", theorems.s4_t, _S5),
    _e("s4_4", "LF", "∀p.(□p → □□p)", theorems.s4_4, _S5),
    _e("s5_axiom", "LF", "∀p.(¬□p → □¬□p)", theorems.s5_axiom, _S5),
    _e("nec_identity", "LF", "∀x^e y.(x = y → □(x = y))", theorems.nec_identity, _PROP + (R.R6_Intensionality,)),
    _e("nec_distinctness", "LF", "∀x^e y.(x ≠ y → □(x ≠ y))", theorems.nec_distinctness,
       _CLASSICAL + (R.R6_Intensionality, R.R8_Choice)),
    _e("barcan_len1", "LF", "∀X^{et}.((∀z.□X z) → □∀z.X z)", theorems.barcan, _MODAL, "one argument place"),
    _e("converse_barcan_len1", "LF", "∀X^{et}.(□(∀z.X z) → ∀z.□X z)", theorems.converse_barcan, _MODAL,
       "one argument place"),
    _e("prop_intensionalism", "LF", "∀p q.(□(p ↔ q) → p = q)", theorems.prop_intensionalism, _MODAL),
    _e("property_intensionalism_len1", "LF", "∀F^{et} G.(□(F ≡ G) → F = G)", theorems.property_intensionalism,
       _MODAL, "one argument place"),
    _e("refute_extensionality", "LF", "∃p q.((p ↔ q) ∧ p ≠ q)", theorems.refute_extensionality,
       _CLASSICAL + (R.R9_PotInf,), "Potential Infinity is applied to (0+1)+1+1"),
    _e("class_comprehension_ι", "LF_ι", "∀X^{et}.∃Y.(class Y ∧ X ≡ Y)", theorems.class_comprehension_iota, _S5,
       "witness λy.ιp.((X y → p = ⊤) ∧ (¬X y → p = ⊥))"),
    _e("class_extensionality", "LF", "∀X^{et}.(class X → ∀Y^{et}.(class Y → (X ≡ Y → X = Y)))",
       theorems.class_extensionality, _S5),
    _e("peirce", "LF", "∀p q.(((p → q) → p) → p)", theorems.peirce, _CLASSICAL),
    _e("double_neg_elim", "LF", "∀p.(¬¬p → p)", theorems.double_negation, _CLASSICAL),
    _e("alpha_iff_top_ι", "LF_ι", "α ↔ ⊤", theorems.alpha_iff_top, _CLASSICAL),
    _e("excluded_middle", "LF", "∀p.(p ∨ ¬p)", theorems.excluded_middle, _CLASSICAL),
    _e("de_morgan", "LF", "∀p q.(¬(p ∧ q) → ¬p ∨ ¬q)", theorems.de_morgan, _CLASSICAL),
    _e("distribution", "LF", "∀p q r.(p ∧ (q ∨ r) → p ∧ q ∨ p ∧ r)", theorems.distribution, _CLASSICAL),
    _e("leibniz_law", "LF", "∀F^{et} x y.(x = y → F x → F y)", theorems.leibniz_law, _PROP),
    _e("eq_reflexivity", "LF", "∀x^e.x = x", theorems.reflexivity, _PROP),
]))


def catalog() -> list[LibraryEntry]:
    return list(CATALOG.values())


def _entry(name: str) -> LibraryEntry:
    aliases = {"class_comprehension_iota": "class_comprehension_ι", "alpha_iff_top_iota": "alpha_iff_top_ι"}
    name = aliases.get(name, name)
    try:
        return CATALOG[name]
    except KeyError:
        raise UnknownTheorem(f"no library theorem named {name!r}", name=name) from None


def library_theorem(name: str) -> Derivation:
    """Build the named catalog theorem (cached; derivations are immutable)."""
    return _build(_entry(name).name)


@lru_cache(maxsize=None)
def _build(name: str) -> Derivation:
    return CATALOG[name].builder()


def minimal_theory(name: str) -> Theory:
    """The entry's theory cut down to the rules its derivation uses."""
    from ..theories import get_theory

    entry = _entry(name)
    base = get_theory(entry.theory)
    used = library_theorem(name).rules_used()
    label = f"{entry.theory}[{','.join(r.value for r in sorted(used, key=lambda r: list(RuleId).index(r)))}]"
    return Theory(label, frozenset(used), base.axioms, base.guard, base.description)


def henkin_inconsistency(theory: Theory | str = "Henkin-1950") -> Derivation:
    """⊢ ⊥ from non-extensionality plus Henkin's rule (built under ``theory``)."""
    from ..theories import get_theory

    if isinstance(theory, str):
        theory = get_theory(theory)
    return theorems.henkin_inconsistency(theory)


def slingshot_attempt() -> Derivation:
    """Attempt ⊢ p = @p by Intensionality with the ι axiom in context."""
    return theorems.slingshot_attempt()


# ---------------------------------------------------------------- derived rules

def _d(x, what="a derivation") -> Derivation:
    if not isinstance(x, Derivation):
        raise ShapeMismatch(f"expected {what}")
    return x


def _as_var(x) -> Variable:
    if isinstance(x, Var):
        return x.var
    if isinstance(x, Variable):
        return x
    raise ShapeMismatch("expected a variable")


def _exists_intro(d, *rest):
    if len(rest) == 2:  # target ∃x.P and witness a
        target, a = rest
        parts = logic._quant_parts(target, D.EXISTS)
        if parts is None or not isinstance(parts[1], Abs):
            raise ShapeMismatch("exists_intro needs a target ∃x.P")
        x, body = parts[1].split()
        return logic.exists_intro(_d(d), x, body, a)
    x, body, a = rest
    return logic.exists_intro(_d(d), _as_var(x), body, a)


def _exists_elim(d_ex, d_body, y):
    parts = logic._quant_parts(_d(d_ex).conclusion, D.EXISTS)
    if parts is None:
        raise ShapeMismatch("exists_elim needs Γ ⊢ ∃x.P")
    y = _as_var(y)
    return logic.exists_elim(d_ex, _d(d_body), logic.instance(parts[1], Var(y)), y)


def _eq_refl(arg):
    if isinstance(arg, Type):
        return theorems.reflexivity(arg)
    return logic.eq_refl(arg)


def _leibniz(d_eq, d_pa, motive, *rest):
    if rest:  # (variable, body) form
        motive = Abs(_as_var(motive), rest[0])
    return logic.leibniz(_d(d_eq), _d(d_pa), motive)


def _subst_equiv(d1, d2, context, hole=None):
    if hole is not None:
        context = (context, hole)
    return logic.subst_equiv(_d(d1), _d(d2), context)


def _necessitation(d):
    if _d(d).assumptions:
        raise ShapeMismatch("necessitation needs a closed theorem (empty context)")
    return logic.necessitation(d)


_RULES: dict[str, Callable[..., Derivation]] = {
    "and_intro": lambda a, b: logic.and_intro(_d(a), _d(b)),
    "and_elim_l": lambda d: logic.and_elim_l(_d(d)),
    "and_elim_r": lambda d: logic.and_elim_r(_d(d)),
    "or_intro_l": lambda d, q: logic.or_intro_l(_d(d), q),
    "or_intro_r": lambda d, p: logic.or_intro_r(_d(d), p),
    "or_elim": lambda d, l, r: logic.or_elim(_d(d), _d(l), _d(r)),
    "ex_falso": lambda d, p: logic.ex_falso(_d(d), p),
    "neg_intro": lambda d, *p: logic.neg_intro(_d(d), *p),
    "neg_elim": lambda a, b: logic.neg_elim(_d(a), _d(b)),
    "neg_elim_classical": lambda d, *p: logic.by_contradiction(_d(d), *p),
    "iff_intro": lambda a, b: logic.iff_intro(_d(a), _d(b)),
    "iff_elim": lambda a, b: logic.iff_elim(_d(a), _d(b)),
    "forall_intro": lambda d, x: logic.forall_intro(_d(d), _as_var(x)),
    "forall_elim": lambda d, a: logic.forall_elim(_d(d), a),
    "exists_intro": _exists_intro,
    "exists_elim": _exists_elim,
    "necessitation": _necessitation,
    "eq_refl": _eq_refl,
    "leibniz": _leibniz,
    "subst_equiv": _subst_equiv,
    "modus_ponens": lambda a, b: logic.mp(_d(a), _d(b)),
    "conditional_proof": lambda d, *p: logic.cp(_d(d), *p),
    "eq_sym": lambda d: logic.eq_sym(_d(d)),
    "eq_trans": lambda a, b: logic.eq_trans(_d(a), _d(b)),
    "k_rule": lambda a, b: logic.k_rule(_d(a), _d(b)),
}

DERIVED_RULES = tuple(_RULES)


def derived_rule(name: str, premises) -> Derivation:
    """Apply a derived rule by name to a list of premises (derivations, terms, variables)."""
    try:
        fn = _RULES[name]
    except KeyError:
        raise UnknownRule(f"no derived rule named {name!r}", name=name) from None
    premises = list(premises)
    try:
        return fn(*premises)
    except TypeError as exc:
        if "positional argument" in str(exc):
            raise ShapeMismatch(f"{name}: wrong number of premises ({len(premises)})") from None
        raise
