"""Proof scripts: a line-based format checked step by step through the kernel.

A script is a header followed by labelled steps and a closing ``qed``::

    theory LF
    disable R.8
    var x y : e
    axiom D_ι
    h: hyp(; p; p)                 p ⊢ p
    c: cp(h)                        ⊢ p → p
    qed c

Inside the parentheses, premise labels come first (comma separated), then
each further argument after a semicolon.  An expected sequent may follow
the closing parenthesis, with or without a leading ``⊢``/``|-`` turnstile.
"""
from __future__ import annotations

import re
import time
from dataclasses import dataclass, field

from . import definitions as D
from .errors import (
    AmbiguousTypes,
    ArityMismatch,
    GuardViolation,
    IllTypedApplication,
    LFError,
    NoCompletion,
    NotationSyntaxError,
    RuleDisabled,
    ShapeMismatch,
    TypeMismatch,
    UndischargedAssumption,
    UnknownNotation,
    UnknownRule,
    UnknownTheory,
)
from .kernel import RuleId, Theory, check_theorem, variant_rule
from . import kernel as K
from .library import derived_rule, library_theorem, numeral_is_nat
from .library import logic as L
from .notation import elaborate, parse, parse_type
from .parser import SVar
from .terms import Fun, Term, Type, Var, Variable

EXIT_OK, EXIT_SYNTAX, EXIT_ELAB, EXIT_RULE, EXIT_UNDISCHARGED, EXIT_DISABLED = 0, 1, 2, 3, 4, 5


class ScriptSyntaxError(LFError):
    code = "ScriptSyntaxError"


class ExpectedMismatch(LFError):
    code = "ExpectedMismatch"


def exit_code(err: BaseException) -> int:
    """The documented exit code for an error raised while checking."""
    if isinstance(err, (ScriptSyntaxError, NotationSyntaxError, UnknownTheory)):
        return EXIT_SYNTAX
    if isinstance(err, RuleDisabled):
        return EXIT_DISABLED
    if isinstance(err, UndischargedAssumption):
        return EXIT_UNDISCHARGED
    if isinstance(err, (AmbiguousTypes, NoCompletion, UnknownNotation, GuardViolation, TypeMismatch,
                        IllTypedApplication, ArityMismatch)):
        return EXIT_ELAB
    return EXIT_RULE


# ---------------------------------------------------------------- syntax

@dataclass
class Step:
    label: str
    rule: str
    refs: list[str]
    args: list[str]
    expected: str | None
    line: int


@dataclass
class ProofScript:
    theory: str | None = None
    disabled: list[str] = field(default_factory=list)
    axioms: list[str] = field(default_factory=list)
    variables: dict[str, str] = field(default_factory=dict)
    steps: list[Step] = field(default_factory=list)
    qed: str | None = None
    qed_line: int = 0


_STEP = re.compile(r"^([A-Za-z_][\w']*)\s*:\s*([A-Za-z_][\w]*)\s*\((.*)$")
_OPEN, _CLOSE = "([{⟨", ")]}⟩"


def _split_top(text: str, sep: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in _OPEN:
            depth += 1
        elif ch in _CLOSE:
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def _close_paren(text: str, line: int) -> int:
    depth = 1
    for i, ch in enumerate(text):
        if ch in _OPEN:
            depth += 1
        elif ch in _CLOSE:
            depth -= 1
            if depth == 0:
                return i
    raise ScriptSyntaxError(f"line {line}: unbalanced parentheses", line=line)


def parse_script(text: str) -> ProofScript:
    script = ProofScript()
    labels: set[str] = set()
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip() if not raw.lstrip().startswith("--") else ""
        if not line:
            continue
        word, _, rest = line.partition(" ")
        rest = rest.strip()
        if word == "theory":
            script.theory = rest
        elif word == "disable":
            script.disabled.extend(r.strip() for r in rest.replace(",", " ").split())
        elif word == "axiom":
            script.axioms.append(rest)
        elif word == "var":
            names, colon, ty = rest.partition(":")
            if not colon:
                raise ScriptSyntaxError(f"line {n}: expected 'var NAMES : TYPE'", line=n)
            for name in names.replace(",", " ").split():
                script.variables[name] = ty.strip()
        elif word == "qed":
            if rest not in labels:
                raise ScriptSyntaxError(f"line {n}: qed names unknown step {rest!r}", line=n)
            script.qed, script.qed_line = rest, n
        else:
            m = _STEP.match(line)
            if not m:
                raise ScriptSyntaxError(f"line {n}: cannot read {line!r}", line=n)
            label, rule, tail = m.groups()
            if label in labels:
                raise ScriptSyntaxError(f"line {n}: label {label!r} used twice", line=n)
            end = _close_paren(tail, n)
            inner, after = tail[:end], tail[end + 1:].strip()
            segments = _split_top(inner, ";")
            refs = [r.strip() for r in segments[0].split(",") if r.strip()]
            for r in refs:
                if r not in labels:
                    raise ScriptSyntaxError(f"line {n}: step {label!r} uses {r!r} before it is proved", line=n)
            args = [s.strip() for s in segments[1:]]
            script.steps.append(Step(label, rule, refs, args, after or None, n))
            labels.add(label)
    if script.qed is None:
        raise ScriptSyntaxError("the script has no qed line", line=0)
    return script


# ---------------------------------------------------------------- argument kinds

class _Env:
    def __init__(self, theory: Theory, variables: dict[str, Type], guard: str | None = None):
        self.theory = theory
        self.variables = variables
        self.guard = guard or theory.guard

    def context(self, premises) -> dict:
        ctx = dict(self.variables)
        for d in premises:
            for v in d.sequent.free_vars:
                ctx.setdefault(v.name, v.type)
        return ctx

    def term(self, text: str, premises, expected: Type | None = None) -> Term:
        return elaborate(parse(text), guard=self.guard, expected=expected, context=self.context(premises))

    def variable(self, text: str, premises, fallback: Type | None = None) -> Variable:
        st = parse(text)
        if not isinstance(st, SVar):
            raise ShapeMismatch(f"{text!r} is not a variable")
        if st.deco is not None:
            return Variable(st.letter, st.deco, st.primes)
        ty = self.context(premises).get(st.name) or fallback
        if ty is None:
            if st.letter in ("p", "q"):
                ty = D.T
            else:
                raise AmbiguousTypes(f"the type of variable {st.name} is unknown; decorate it", span=(0, len(text)))
        return Variable(st.letter, ty, st.primes)


def _choice_type(d) -> Type | None:
    c = d.conclusion
    try:
        sigma = c.arg.type.dom
        tau = c.arg.scope.arg.type.dom
        return Fun(sigma, tau)
    except AttributeError:
        return None


def _kernel(fn, refs: int, kinds: str = ""):
    return ("kernel", fn, refs, kinds)


def _derived(refs, kinds=""):
    return ("derived", None, refs, kinds)


# kinds: F formula/term, f optional formula, * remaining formulas, v variable, i integer,
# y type, n name, T term-or-type, P path
_TABLE = {
    "hyp": _kernel(lambda env, ps, args: K.hypothesis(args[:-1], args[-1]), 0, "*"),
    "assume": _kernel(lambda env, ps, args: L.assume(args[:-1], args[-1]), 0, "*"),
    "weaken": _kernel(lambda env, ps, args: K.weakening(ps[0], args[0]), 1, "F"),
    "contract": _kernel(lambda env, ps, args: K.contraction(ps[0]), 1),
    "exchange": _kernel(lambda env, ps, args: K.exchange(ps[0], args[0]), 1, "i"),
    "cut": _kernel(lambda env, ps, args: K.cut(ps[0], ps[1]), 2),
    "beta": _kernel(lambda env, ps, args: K.beta_rule(ps[0], args[0]), 1, "F"),
    "ui": _kernel(lambda env, ps, args: K.universal_instantiation(ps[0], ps[1]), 2),
    "ug": _kernel(lambda env, ps, args: K.universal_generalization(ps[0], args[0]), 1, "v"),
    "negelim": _kernel(lambda env, ps, args: K.negation_elimination(ps[0]), 1),
    "intensionality": _kernel(lambda env, ps, args: K.intensionality(ps[0], ps[1]), 2),
    "funext": _kernel(lambda env, ps, args: K.function_extensionality(ps[0], args[0]), 1, "v"),
    "choice": _kernel(lambda env, ps, args: K.choice(ps[0], args[0]), 1, "c"),
    "potinf": _kernel(lambda env, ps, args: K.potential_infinity(ps[0]), 1),
    "actual_inf": _kernel(lambda env, ps, args: variant_rule(RuleId.V_ActualInfinityE, ps[0], theory=env.theory), 1),
    "henkin_ext": _kernel(lambda env, ps, args: variant_rule(RuleId.V_HenkinExt, *ps, theory=env.theory), 2),
    "classicism_subst": _kernel(
        lambda env, ps, args: variant_rule(RuleId.V_ClassicismSubst, *ps, args[0], args[1], theory=env.theory), 2, "FP"
    ),
    "modal_funext": _kernel(lambda env, ps, args: variant_rule(RuleId.V_ModalFunExt, ps[0], theory=env.theory), 1),
    "lem": _kernel(lambda env, ps, args: L.lem(args[0]), 0, "F"),
    "cases": _kernel(lambda env, ps, args: L.cases(args[0], ps[0], ps[1]), 2, "F"),
    "top": _kernel(lambda env, ps, args: L.top_thm(), 0),
    "lemma": _kernel(lambda env, ps, args: library_theorem(args[0]), 0, "n"),
    "numeral_is_nat": _kernel(lambda env, ps, args: numeral_is_nat(args[0], args[1]), 0, "iy"),
    "and_intro": _derived(2),
    "and_elim_l": _derived(1),
    "and_elim_r": _derived(1),
    "or_intro_l": _derived(1, "F"),
    "or_intro_r": _derived(1, "F"),
    "or_elim": _derived(3),
    "ex_falso": _derived(1, "F"),
    "neg_intro": _derived(1, "f"),
    "neg_elim": _derived(2),
    "neg_elim_classical": _derived(1, "f"),
    "iff_intro": _derived(2),
    "iff_elim": _derived(2),
    "forall_intro": _derived(1, "v"),
    "forall_elim": _derived(1, "F"),
    "exists_intro": _derived(1, "FF"),
    "exists_elim": _derived(2, "v"),
    "necessitation": _derived(1),
    "eq_refl": _derived(0, "T"),
    "leibniz": _derived(2, "F"),
    "subst_equiv": _derived(2, "Fv"),
    "mp": ("derived", "modus_ponens", 2, ""),
    "modus_ponens": _derived(2),
    "cp": ("derived", "conditional_proof", 1, "f"),
    "conditional_proof": _derived(1, "f"),
    "eq_sym": _derived(1),
    "eq_trans": _derived(2),
    "k_rule": _derived(2),
}

SCRIPT_RULES = tuple(_TABLE)


def _read_args(env: _Env, kinds: str, raw: list[str], premises, step: Step) -> list:
    out: list = []
    i = 0
    for k in kinds:
        if k == "*":
            out.extend(env.term(a, premises) for a in raw[i:])
            i = len(raw)
            continue
        if i >= len(raw):
            if k == "f":
                continue
            raise ShapeMismatch(f"{step.rule} expects more arguments")
        a = raw[i]
        i += 1
        if k in "Ff":
            out.append(env.term(a, premises))
        elif k == "v":
            out.append(env.variable(a, premises))
        elif k == "c":
            out.append(env.variable(a, premises, _choice_type(premises[0])))
        elif k == "i":
            try:
                out.append(int(a))
            except ValueError:
                raise ScriptSyntaxError(f"line {step.line}: expected an integer, got {a!r}", line=step.line) from None
        elif k == "y":
            out.append(parse_type(a))
        elif k == "n":
            out.append(a)
        elif k == "P":
            out.append(tuple(int(x) for x in a.split(".") if x != ""))
        elif k == "T":
            try:
                out.append(parse_type(a))
            except LFError:
                out.append(env.term(a, premises))
    if i < len(raw):
        raise ShapeMismatch(f"{step.rule} takes fewer arguments")
    return out


def _read_sequent(env: _Env, text: str, computed) -> tuple:
    text = text.strip()
    for turnstile in ("⊢", "|-"):
        left, sep, right = text.partition(turnstile)
        if sep:
            break
    else:
        left, right = "", text
    ctx = env.context([computed])
    forms = [elaborate(parse(a), guard=env.guard, context=ctx) for a in _split_top(left, ",") if a.strip()]
    concl = elaborate(parse(right), guard=env.guard, context=ctx)
    return tuple(forms), concl


# ---------------------------------------------------------------- checking

@dataclass
class StepRecord:
    label: str
    rule: str
    sequent: str
    nodes: int
    ms: float


@dataclass
class ScriptReport:
    path: str
    theory: str
    exit_code: int
    theorem: str | None = None
    steps: list[StepRecord] = field(default_factory=list)
    error: dict | None = None
    rules: list[str] = field(default_factory=list)
    nodes: int = 0
    ms: float = 0.0

    @property
    def ok(self) -> bool:
        return self.exit_code == EXIT_OK

    def to_json(self) -> dict:
        return {
            "file": self.path,
            "theory": self.theory,
            "status": "ok" if self.ok else "error",
            "exit_code": self.exit_code,
            "theorem": self.theorem,
            "rules": self.rules,
            "nodes": self.nodes,
            "timing_ms": round(self.ms, 3),
            "steps": [
                {"label": s.label, "rule": s.rule, "sequent": s.sequent, "nodes": s.nodes, "ms": round(s.ms, 3)}
                for s in self.steps
            ],
            "error": self.error,
        }


def resolve_theory(script: ProofScript, override: str | None = None, disable=()) -> Theory:
    from .extensions import C_EPS, D_IOTA
    from .theories import get_theory

    theory = get_theory(override or script.theory or "LF")
    try:
        off = [RuleId.parse(r) for r in list(script.disabled) + list(disable)]
    except ValueError as exc:
        raise ScriptSyntaxError(f"cannot disable: {exc}") from None
    if off:
        theory = theory.minus(*off)
    extra = []
    for ax in script.axioms:
        name = ax.strip()
        if name in ("D_ι", "D_iota"):
            extra.extend(D_IOTA)
        elif name in ("C_ε", "C_eps"):
            extra.extend(C_EPS)
        else:
            extra.append(elaborate(parse(name), guard=theory.guard))
    if extra:
        theory = theory.plus(*extra, name=theory.name + "+X")
    return theory


def _vocabulary(script: ProofScript, theory: Theory) -> str:
    """The guard terms are read under: the wider of the script's own theory and the checking theory.

    A script written for LF_ι still parses under ``--theory LF``; the kernel then
    rejects what LF cannot prove (typically an undischarged ι axiom).
    """
    from .theories import get_theory

    try:
        own = get_theory(script.theory).guard if script.theory else theory.guard
    except LFError:
        return theory.guard
    return own if D.guard_allows(own, theory.guard) else theory.guard


def _printer(ascii_out: bool):
    from .printer import print_term

    def show(seq) -> str:
        lhs = ", ".join(print_term(a, ascii=ascii_out) for a in seq.assumptions)
        turn = "|-" if ascii_out else "⊢"
        rhs = print_term(seq.conclusion, ascii=ascii_out)
        return f"{lhs} {turn} {rhs}" if lhs else f"{turn} {rhs}"

    return show


def check_script(text: str, path: str = "<script>", theory: str | None = None, disable=(), ascii_out: bool = False) -> ScriptReport:
    """Check a script; never raises for checking failures (they become the report's error)."""
    t0 = time.perf_counter()
    show = _printer(ascii_out)
    report = ScriptReport(path=path, theory=theory or "?", exit_code=EXIT_OK)
    step: Step | None = None

    def fail(err: LFError) -> ScriptReport:
        report.exit_code = exit_code(err)
        report.error = {
            "code": err.code,
            "message": str(err),
            "step": step.label if step else None,
            "rule": step.rule if step else None,
            "line": step.line if step else getattr(err, "info", {}).get("line"),
        }
        report.ms = (time.perf_counter() - t0) * 1000
        return report

    try:
        script = parse_script(text)
        th = resolve_theory(script, theory, disable)
        report.theory = th.name
        variables = {name: parse_type(ty) for name, ty in script.variables.items()}
    except LFError as err:
        return fail(err)

    env = _Env(th, variables, _vocabulary(script, th))
    proved: dict = {}
    for step in script.steps:
        s0 = time.perf_counter()
        try:
            entry = _TABLE.get(step.rule)
            if entry is None:
                raise UnknownRule(f"unknown rule {step.rule!r}", name=step.rule)
            how, target, n_refs, kinds = entry
            if n_refs is not None and len(step.refs) != n_refs:
                raise ShapeMismatch(f"{step.rule} takes {n_refs} premise(s), got {len(step.refs)}")
            premises = [proved[r] for r in step.refs]
            args = _read_args(env, kinds, step.args, premises, step)
            if how == "kernel":
                d = target(env, premises, args)
            else:
                d = derived_rule(target or step.rule, premises + args)
            for r in d.rules_used():
                if r not in th.rules:
                    raise RuleDisabled(f"rule {r.value} is not available in {th.name}", rule=r.value)
            if step.expected:
                want = _read_sequent(env, step.expected, d)
                if want != (d.assumptions, d.conclusion):
                    raise ExpectedMismatch(f"expected {step.expected.strip()}, derived {show(d.sequent)}")
        except LFError as err:
            return fail(err)
        proved[step.label] = d
        report.steps.append(StepRecord(step.label, step.rule, show(d.sequent), d.size(), (time.perf_counter() - s0) * 1000))

    step = next(s for s in script.steps if s.label == script.qed)
    final = proved[script.qed]
    try:
        result = check_theorem(th, final)
    except LFError as err:
        return fail(err)
    from .printer import print_term

    report.theorem = print_term(final.conclusion, ascii=ascii_out)
    report.rules = result.rules
    report.nodes = result.nodes
    report.ms = (time.perf_counter() - t0) * 1000
    return report


def check_file(path: str, theory: str | None = None, disable=(), ascii_out: bool = False) -> ScriptReport:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return check_script(text, path=str(path), theory=theory, disable=disable, ascii_out=ascii_out)
