"""Type inference for surface terms and construction of core terms.

Undecorated letters receive metavariables solved by unification.  Letters
co-bound by one binder share a type, as do free occurrences of the same
letter; ``p`` and ``q`` default to ``t`` unless decorated somewhere.  An
application chain is read left-associatively; if that reading has no typing,
every bracketing is tried and a unique well-typed one is accepted.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from . import definitions as D
from .errors import AmbiguousTypes, GuardViolation, NoCompletion
from .parser import SApp, SBinder, SClass, SConst, SInfix, SNum, SUnary, SurfaceTerm, SVar
from .terms import T, Abs, App, Base, Con, Epsilon, Fun, Include, Iota, Term, Type, Var, Variable

MAX_BRACKETINGS = 20000


@dataclass(frozen=True, slots=True)
class Meta(Type):
    id: int

    def __repr__(self):
        return f"?{self.id}"


class _Clash(Exception):
    def __init__(self, message, span):
        super().__init__(message)
        self.span = span


@dataclass
class _Rec:
    meta: Type
    letter: str
    name: str
    decorated: bool = False
    variable: Variable | None = None


@dataclass
class Defaults:
    t_letters: tuple = ("p", "q")
    max_bracketings: int = MAX_BRACKETINGS


# ---------------------------------------------------------------- bracketings

@lru_cache(maxsize=None)
def bracketings(n: int) -> tuple:
    """All binary trees over leaves 0..n-1, the left-associated one first."""

    def trees(lo, hi):
        if hi - lo == 1:
            return [lo]
        out = []
        for k in range(hi - 1, lo, -1):
            for left in trees(lo, k):
                for right in trees(k, hi):
                    out.append((left, right))
        return out

    return tuple(trees(0, n))


def _numeral(sigma):
    return Fun(Fun(sigma, T), T)


class _Inference:
    def __init__(self, choices: dict, defaults: Defaults):
        self.choices = choices
        self.defaults = defaults
        self.sub: dict[int, Type] = {}
        self.n = 0
        self.free: dict[str, _Rec] = {}
        self.records: list[_Rec] = []
        self.info: dict[int, object] = {}

    # unification ---------------------------------------------------
    def fresh(self) -> Meta:
        self.n += 1
        return Meta(self.n)

    def walk(self, t: Type) -> Type:
        while isinstance(t, Meta) and t.id in self.sub:
            t = self.sub[t.id]
        return t

    def resolve(self, t: Type) -> Type:
        t = self.walk(t)
        if isinstance(t, Fun):
            return Fun(self.resolve(t.dom), self.resolve(t.cod))
        return t

    def occurs(self, m: Meta, t: Type) -> bool:
        t = self.walk(t)
        if t == m:
            return True
        return isinstance(t, Fun) and (self.occurs(m, t.dom) or self.occurs(m, t.cod))

    def unify(self, a: Type, b: Type, span) -> None:
        a, b = self.walk(a), self.walk(b)
        if a == b:
            return
        if isinstance(a, Meta):
            if self.occurs(a, b):
                raise _Clash("cyclic type", span)
            self.sub[a.id] = b
            return
        if isinstance(b, Meta):
            self.unify(b, a, span)
            return
        if isinstance(a, Fun) and isinstance(b, Fun):
            self.unify(a.dom, b.dom, span)
            self.unify(a.cod, b.cod, span)
            return
        from .printer import format_type

        raise _Clash(
            f"type {format_type(self.resolve(a))} does not match {format_type(self.resolve(b))}", span
        )

    # inference ------------------------------------------------------
    def var_record(self, node: SVar, env: dict) -> _Rec:
        stack = env.get(node.name)
        if stack:
            rec = stack[-1]
        else:
            rec = self.free.get(node.name)
            if rec is None:
                rec = _Rec(self.fresh(), node.letter, node.name)
                self.free[node.name] = rec
                self.records.append(rec)
        if node.deco is not None:
            self.unify(rec.meta, node.deco, node.span)
            rec.decorated = True
        return rec

    def sub_param(self, sub, kind, span) -> Type:
        m = self.fresh()
        if sub is not None:
            if kind == "vector":
                vec = sub if isinstance(sub, tuple) else (sub,)
                self.unify(m, _relational(vec), span)
            else:
                if isinstance(sub, tuple):
                    raise _Clash("a single type subscript is expected here", span)
                self.unify(m, sub, span)
        return m

    def const_type(self, name: str, sub, span) -> tuple[Type, list]:
        tt = Fun(T, T)
        ttt = Fun(T, tt)
        fixed = {"⊤": T, "⊥": T, "α": T, "¬": tt, "□": tt, "◇": tt, "@": tt,
                 "→": ttt, "∨": ttt, "∧": ttt, "↔": ttt}
        if name in fixed:
            if sub is not None:
                raise _Clash(f"{name} takes no type subscript", span)
            return fixed[name], []
        if name in ("≡", "equiv", "∖"):
            r = self.sub_param(sub, "vector", span)
            return Fun(r, Fun(r, r)), [r]
        s = self.sub_param(sub, "type", span)
        n = _numeral(s)
        if name in ("=", "≠"):
            return Fun(s, Fun(s, T)), [s]
        if name == "⊆":
            p = Fun(s, T)
            return Fun(p, Fun(p, T)), [s]
        if name in ("∀", "∃", "∃!", "class", "0", "1"):
            return n, [s]
        if name == "+":
            return Fun(n, Fun(n, n)), [s]
        if name == "ℕ":
            return Fun(n, T), [s]
        if name == "†":
            return s, [s]
        if name in ("ι", "ε"):
            return Fun(Fun(s, T), s), [s]
        raise _Clash(f"unknown notation {name!r}", span)

    def infer(self, node: SurfaceTerm, env: dict) -> Type:
        if isinstance(node, SVar):
            rec = self.var_record(node, env)
            self.info[id(node)] = rec
            return rec.meta
        if isinstance(node, SNum):
            s = self.sub_param(node.sub, "type", node.span)
            self.info[id(node)] = s
            return _numeral(s)
        if isinstance(node, SConst):
            ty, params = self.const_type(node.name, node.sub, node.span)
            self.info[id(node)] = params
            return ty
        if isinstance(node, SApp):
            types = [self.infer(item, env) for item in node.items]
            tree = bracketings(len(types))[self.choices.get(id(node), 0)]

            def combine(tr):
                if isinstance(tr, int):
                    return types[tr]
                f, a = combine(tr[0]), combine(tr[1])
                r = self.fresh()
                self.unify(f, Fun(a, r), node.span)
                return r

            return combine(tree)
        if isinstance(node, SInfix):
            return self.infer_infix(node, env)
        if isinstance(node, SUnary):
            self.unify(self.infer(node.operand, env), T, node.operand.span)
            return T
        if isinstance(node, SBinder):
            return self.infer_binder(node, env)
        if isinstance(node, SClass):
            rec = self.bind(node.var, env)
            try:
                self.unify(self.infer(node.body, env), T, node.body.span)
            finally:
                env[node.var.name].pop()
            self.info[id(node)] = rec
            return Fun(rec.meta, T)
        raise TypeError(f"not a surface term: {node!r}")

    def infer_infix(self, node: SInfix, env: dict) -> Type:
        lt = self.infer(node.left, env)
        rt = self.infer(node.right, env)
        op = node.op
        if op in ("→", "∨", "∧", "↔"):
            if node.sub is not None:
                raise _Clash(f"{op} takes no type subscript", node.span)
            self.unify(lt, T, node.left.span)
            self.unify(rt, T, node.right.span)
            self.info[id(node)] = []
            return T
        if op == "≡":
            r = self.sub_param(node.sub, "vector", node.span)
            self.unify(lt, r, node.left.span)
            self.unify(rt, r, node.right.span)
            self.info[id(node)] = [r]
            return T
        ty, params = self.const_type(op, node.sub, node.span)
        self.info[id(node)] = params
        self.unify(ty.dom, lt, node.left.span)
        self.unify(ty.cod.dom, rt, node.right.span)
        return ty.cod.cod

    def bind(self, v: SVar, env: dict) -> _Rec:
        rec = _Rec(self.fresh(), v.letter, v.name)
        self.records.append(rec)
        if v.deco is not None:
            self.unify(rec.meta, v.deco, v.span)
            rec.decorated = True
        env.setdefault(v.name, []).append(rec)
        self.info[id(v)] = rec
        return rec

    def infer_binder(self, node: SBinder, env: dict) -> Type:
        pushed = []
        try:
            for vars_, bound in node.groups:
                bt = self.infer(bound, env) if bound is not None else None
                for v in vars_:
                    rec = self.bind(v, env)
                    pushed.append(v.name)
                    if bt is not None:
                        self.unify(bt, Fun(rec.meta, T), bound.span)
                    if node.sub is not None:
                        self.unify(rec.meta, node.sub, node.span)
            body = self.infer(node.body, env)
        finally:
            for name in pushed:
                env[name].pop()
        recs = [self.info[id(v)] for vars_, _ in node.groups for v in vars_]
        if node.kind == "λ":
            ty = body
            for rec in reversed(recs):
                ty = Fun(rec.meta, ty)
            return ty
        if node.kind in ("ι", "ε"):
            if len(recs) != 1:
                raise _Clash(f"{node.kind} binds exactly one variable", node.span)
            self.unify(body, T, node.body.span)
            return recs[0].meta
        self.unify(body, T, node.body.span)
        return T

    def apply_defaults(self) -> None:
        for rec in self.records:
            if rec.letter in self.defaults.t_letters and not rec.decorated:
                self.unify(rec.meta, T, (0, 0))

    def unresolved(self) -> bool:
        def has_meta(t):
            t = self.walk(t)
            if isinstance(t, Meta):
                return True
            return isinstance(t, Fun) and (has_meta(t.dom) or has_meta(t.cod))

        for rec in self.records:
            if has_meta(rec.meta):
                return True
        for v in self.info.values():
            if isinstance(v, list) and any(has_meta(x) for x in v):
                return True
            if isinstance(v, Type) and has_meta(v):
                return True
        return False


def _relational(vec) -> Type:
    ty: Type = T
    for s in reversed(vec):
        ty = Fun(s, ty)
    return ty


def _vector(r: Type, span) -> tuple:
    args = []
    while isinstance(r, Fun):
        args.append(r.dom)
        r = r.cod
    if r != T or not args:
        raise NoCompletion("≡ and ∖ relate relations (types ending in t)", span=span)
    return tuple(args)


# ---------------------------------------------------------------- construction

class _Builder:
    def __init__(self, inf: _Inference, guard: str, table):
        self.inf = inf
        self.guard = guard
        self.table = table

    def ty(self, t: Type) -> Type:
        return self.inf.resolve(t)

    def inst(self, name, args, span):
        try:
            return self.table.instantiate(name, args, self.guard)
        except GuardViolation as exc:
            raise GuardViolation(str(exc), span=span) from None

    def need(self, level: str, what: str, span):
        if not D.guard_allows(self.guard, level):
            raise GuardViolation(f"{what} requires the {level} extension (active: {self.guard})", span=span)

    def const(self, name, params, span) -> Term:
        args = [self.ty(p) for p in params]
        if name == "⊆":
            return Con(Include(args[0]))
        if name in ("ι", "ε"):
            self.need("iota" if name == "ι" else "eps", name, span)
            return Con(Iota(args[0]) if name == "ι" else Epsilon(args[0]))
        if name in ("≡", "equiv", "∖"):
            return self.inst("≡" if name != "∖" else "∖", [_vector(args[0], span)], span)
        return self.inst(name, args, span)

    def variable(self, rec: _Rec, name_node: SVar) -> Variable:
        return Variable(name_node.letter, self.ty(rec.meta), name_node.primes)

    def build(self, node: SurfaceTerm, env: dict) -> Term:
        if isinstance(node, SVar):
            stack = env.get(node.name)
            if stack:
                return Var(stack[-1])
            rec = self.inf.info[id(node)]
            return Var(self.variable(rec, node))
        if isinstance(node, SNum):
            sigma = self.ty(self.inf.info[id(node)])
            return D.numeral(node.value, sigma)
        if isinstance(node, SConst):
            return self.const(node.name, self.inf.info[id(node)], node.span)
        if isinstance(node, SApp):
            items = [self.build(item, env) for item in node.items]
            tree = bracketings(len(items))[self.inf.choices.get(id(node), 0)]

            def combine(tr):
                if isinstance(tr, int):
                    return items[tr]
                return App(combine(tr[0]), combine(tr[1]))

            return combine(tree)
        if isinstance(node, SInfix):
            left, right = self.build(node.left, env), self.build(node.right, env)
            params = self.inf.info[id(node)]
            if node.op == "≡":
                _vector(self.ty(params[0]), node.span)
                return D.coext(left, right)
            if node.op in ("→", "∨", "∧", "↔"):
                return App(App(self.inst(node.op, [], node.span), left), right)
            return App(App(self.const(node.op, params, node.span), left), right)
        if isinstance(node, SUnary):
            return App(self.inst(node.op, [], node.span), self.build(node.operand, env))
        if isinstance(node, SBinder):
            return self.build_binder(node, env)
        if isinstance(node, SClass):
            self.need("iota", "class abstraction", node.span)
            rec = self.inf.info[id(node)]
            x = self.variable(rec, node.var)
            env.setdefault(node.var.name, []).append(x)
            try:
                body = self.build(node.body, env)
            finally:
                env[node.var.name].pop()
            return D.class_abstract(x, body)
        raise TypeError(f"not a surface term: {node!r}")

    def build_binder(self, node: SBinder, env: dict) -> Term:
        if node.kind in ("ι", "ε"):
            self.need("iota" if node.kind == "ι" else "eps", node.kind, node.span)
        pushed = []
        bound_vars = []  # (Variable, bound term or None)
        try:
            for vars_, bound in node.groups:
                bterm = self.build(bound, env) if bound is not None else None
                for v in vars_:
                    x = self.variable(self.inf.info[id(v)], v)
                    env.setdefault(v.name, []).append(x)
                    pushed.append(v.name)
                    bound_vars.append((x, bterm))
            body = self.build(node.body, env)
        finally:
            for name in pushed:
                env[name].pop()
        for x, bterm in reversed(bound_vars):
            if node.kind == "λ":
                body = Abs(x, body)
            elif node.kind == "∀":
                body = D.forall(x, D.imp(App(bterm, Var(x)), body) if bterm is not None else body)
            elif node.kind == "∃":
                body = D.exists(x, D.conj(App(bterm, Var(x)), body) if bterm is not None else body)
            elif node.kind == "∃!":
                body = App(D.EXISTS1(x.type), Abs(x, body))
            elif node.kind == "ι":
                body = D.iota(x, body)
            else:
                body = D.epsilon(x, body)
        return body


# ---------------------------------------------------------------- driver

def _chains(node, out):
    if isinstance(node, SApp):
        if len(node.items) > 2:
            out.append(node)
        for item in node.items:
            _chains(item, out)
    elif isinstance(node, SInfix):
        _chains(node.left, out)
        _chains(node.right, out)
    elif isinstance(node, SUnary):
        _chains(node.operand, out)
    elif isinstance(node, SBinder):
        for _, bound in node.groups:
            if bound is not None:
                _chains(bound, out)
        _chains(node.body, out)
    elif isinstance(node, SClass):
        _chains(node.body, out)
    return out


def _attempt(st, choices, defaults, expected, context=None):
    inf = _Inference(choices, defaults)
    ty = inf.infer(st, {})
    if expected is not None:
        inf.unify(ty, expected, st.span)
    for name, rec in (inf.free.items() if context else ()):
        if name in context:
            inf.unify(rec.meta, context[name], st.span)
            rec.decorated = True
    inf.apply_defaults()
    return inf


def elaborate(
    st: SurfaceTerm,
    guard: str = "core",
    table=None,
    defaults: Defaults | None = None,
    expected: Type | None = None,
    context: dict | None = None,
) -> Term:
    """Assign types to every letter of ``st`` and build the core term.

    ``context`` maps names of free variables to types they must take.
    """
    table = table or D.DEFAULT_TABLE
    defaults = defaults or Defaults()
    try:
        inf = _attempt(st, {}, defaults, expected, context)
    except _Clash as first:
        inf = None
        failure = first
    if inf is not None:
        if inf.unresolved():
            raise AmbiguousTypes("the notation admits more than one typing; add decorations", span=st.span)
        return _Builder(inf, guard, table).build(st, {})

    chains = _chains(st, [])
    if not chains:
        raise NoCompletion(str(failure), span=failure.span)
    ranges = [range(len(bracketings(len(c.items)))) for c in chains]
    found = []
    tried = 0
    for combo in itertools.product(*ranges):
        tried += 1
        if tried > defaults.max_bracketings:
            break
        choices = {id(c): k for c, k in zip(chains, combo)}
        try:
            inf = _attempt(st, choices, defaults, expected, context)
        except _Clash:
            continue
        if inf.unresolved():
            raise AmbiguousTypes("an application chain admits a typing with undetermined types", span=st.span)
        term = _Builder(inf, guard, table).build(st, {})
        if all(term != f for f in found):
            found.append(term)
        if len(found) > 1:
            raise AmbiguousTypes("more than one bracketing of an application chain is well typed", span=st.span)
    if not found:
        raise NoCompletion(str(failure), span=failure.span)
    return found[0]
