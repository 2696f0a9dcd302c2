"""Named systems: LF, its fragments, its extensions and the variant systems."""
from __future__ import annotations

import re

from .errors import UnknownTheory
from .extensions import C_EPS, D_IOTA
from .kernel import CORE_RULES, RuleId, Theory

R = RuleId

LF = Theory("LF", CORE_RULES, (), "core", "rules R.1–R.9")
LF_IOTA = Theory("LF_ι", CORE_RULES, D_IOTA, "iota", "LF + D_ι")
LF_EPS = Theory("LF_ε", CORE_RULES, D_IOTA + C_EPS, "eps", "LF + D_ι + C_ε")
CHURCH = Theory(
    "Church-1940",
    (CORE_RULES - {R.R6_Intensionality, R.R9_PotInf}) | {R.V_ActualInfinityE},
    D_IOTA + C_EPS,
    "eps",
    "LF_ε without Intensionality; actual infinity for ℕ_e replaces Potential Infinity",
)
HENKIN = Theory(
    "Henkin-1950",
    CHURCH.rules | {R.V_HenkinExt},
    CHURCH.axioms,
    "eps",
    "Church-1940 plus the extensionality rule with side assumptions",
)
HFE = Theory("HFE", CORE_RULES - {R.R8_Choice, R.R9_PotInf}, (), "core", "LF without Choice and Potential Infinity")
CLASSICISM = Theory(
    "Classicism",
    (HFE.rules - {R.R7_FunExt, R.R6_Intensionality}) | {R.V_ClassicismSubst},
    (),
    "core",
    "HFE without Function Extensionality; Intensionality strengthened to substitution in any context",
)
MODAL_FUNEXT = Theory(
    "ModalFunExt-LF",
    (CORE_RULES - {R.R7_FunExt}) | {R.V_ModalFunExt},
    (),
    "core",
    "LF with Function Extensionality replaced by its modalised form",
)
LF_HENKIN = Theory(
    "LF+HenkinExt",
    CORE_RULES | {R.V_HenkinExt},
    (),
    "core",
    "LF plus the extensionality rule with side assumptions (inconsistent)",
)

_NAMED = {t.name: t for t in (LF, LF_IOTA, LF_EPS, CHURCH, HENKIN, HFE, CLASSICISM, MODAL_FUNEXT, LF_HENKIN)}
_ALIASES = {"LF_iota": "LF_ι", "LFiota": "LF_ι", "LF_eps": "LF_ε", "LFeps": "LF_ε", "Church": "Church-1940",
            "Henkin": "Henkin-1950", "ModalFunExt": "ModalFunExt-LF"}


def get_theory(name: str) -> Theory:
    """Look up a theory by name; ``LF−R.n`` (or ``LF-R.n``) drops rule n."""
    text = name.strip().replace("−", "-")
    base_name, *minus = re.split(r"-(?=R\.?\d)", text)
    base_name = _ALIASES.get(base_name, base_name)
    base = _NAMED.get(base_name)
    if base is None:
        raise UnknownTheory(f"unknown theory {name!r}; try one of: {', '.join(_NAMED)}")
    rules = []
    for m in minus:
        try:
            rules.append(RuleId.parse(m if "." in m else "R." + m[1:]))
        except ValueError:
            raise UnknownTheory(f"unknown rule in {name!r}") from None
    if not rules:
        return base
    return base.minus(*rules)


def builtin_theories() -> list[Theory]:
    """LF, LF−R.n for n = 1..9, the extensions and the variant systems."""
    out = [LF]
    for n in range(1, 10):
        out.append(get_theory(f"LF−R.{n}"))
    out += [LF_IOTA, LF_EPS, CHURCH, HENKIN, HFE, CLASSICISM, MODAL_FUNEXT, LF_HENKIN]
    return out
