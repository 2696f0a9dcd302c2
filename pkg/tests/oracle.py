"""An independent β-oracle over a tiny named λ-calculus.

Terms here are plain tuples, deliberately sharing no code with the package:

    ("var", name, ty)   ("app", f, a)   ("lam", name, ty, body)

with types ``"e"``, ``"t"`` or ``(dom, cod)``.  Equivalence is decided by
exhaustive breadth-first enumeration of one-step contractions on de Bruijn
form: simply typed terms are strongly normalising, so two terms are
β-convertible exactly when their finite reduct graphs meet (Church-Rosser).
"""
from __future__ import annotations

import random
from collections import deque

BASE = ("e", "t")


def ty_depth(ty) -> int:
    return 0 if ty in BASE else 1 + max(ty_depth(ty[0]), ty_depth(ty[1]))


def type_of(term, env=None):
    env = env or {}
    tag = term[0]
    if tag == "var":
        return env.get(term[1], term[2])
    if tag == "lam":
        return (term[2], type_of(term[3], {**env, term[1]: term[2]}))
    f, a = type_of(term[1], env), type_of(term[2], env)
    if f in BASE or f[0] != a:
        raise TypeError("ill-typed application")
    return f[1]


def size(term) -> int:
    if term[0] == "var":
        return 1
    if term[0] == "lam":
        return 1 + size(term[3])
    return 1 + size(term[1]) + size(term[2])


# ---------------------------------------------------------------- de Bruijn

def to_db(term, ctx=()):
    tag = term[0]
    if tag == "var":
        name = term[1]
        for i, bound in enumerate(reversed(ctx)):
            if bound == name:
                return ("b", i)
        return ("f", name, term[2])
    if tag == "lam":
        return ("l", term[2], to_db(term[3], ctx + (term[1],)))
    return ("a", to_db(term[1], ctx), to_db(term[2], ctx))


def _shift(t, d, c=0):
    if t[0] == "b":
        return ("b", t[1] + d) if t[1] >= c else t
    if t[0] == "f":
        return t
    if t[0] == "l":
        return ("l", t[1], _shift(t[2], d, c + 1))
    return ("a", _shift(t[1], d, c), _shift(t[2], d, c))


def _subst(t, j, s):
    if t[0] == "b":
        if t[1] == j:
            return s
        return ("b", t[1] - 1) if t[1] > j else t
    if t[0] == "f":
        return t
    if t[0] == "l":
        return ("l", t[1], _subst(t[2], j + 1, _shift(s, 1)))
    return ("a", _subst(t[1], j, s), _subst(t[2], j, s))


def one_step(t):
    """Every term reachable by contracting exactly one redex."""
    out = []
    if t[0] == "a":
        f, a = t[1], t[2]
        if f[0] == "l":
            out.append(_subst(f[2], 0, a))
        out += [("a", g, a) for g in one_step(f)]
        out += [("a", f, b) for b in one_step(a)]
    elif t[0] == "l":
        out += [("l", t[1], b) for b in one_step(t[2])]
    return out


def reducts(t, limit: int = 20000) -> set:
    seen, queue = {t}, deque([t])
    while queue:
        for nxt in one_step(queue.popleft()):
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > limit:
                    raise RuntimeError("reduct graph too large for the oracle")
                queue.append(nxt)
    return seen


def convertible(a, b) -> bool:
    da, db = to_db(a), to_db(b)
    if da == db:
        return True
    return not reducts(da).isdisjoint(reducts(db))


def db_type(t, ctx=()):
    if t[0] == "b":
        return ctx[-1 - t[1]]
    if t[0] == "f":
        return t[2]
    if t[0] == "l":
        return (t[1], db_type(t[2], ctx + (t[1],)))
    f = db_type(t[1], ctx)
    a = db_type(t[2], ctx)
    if f in BASE or f[0] != a:
        raise TypeError("ill-typed")
    return f[1]


# ---------------------------------------------------------------- random terms

FREE = {"e": "xyz", "t": "pqr", ("e", "e"): "fg", ("e", "t"): "FG", ("t", "t"): "hk"}
_SMALL_TYPES = ["e", "t", ("e", "e"), ("e", "t"), ("t", "t")]


class Generator:
    """Random well-typed terms, biased towards redexes."""

    def __init__(self, seed: int, max_size: int = 12, max_depth: int = 3):
        self.rng = random.Random(seed)
        self.max_size = max_size
        self.max_depth = max_depth
        self.counter = 0

    def _fresh(self) -> str:
        self.counter += 1
        return f"v{self.counter}"

    def term(self, ty, budget: int, env: dict):
        rng = self.rng
        options = []
        local = [n for n, t in env.items() if t == ty]
        if local or ty in FREE:
            options.append("var")
        if ty not in BASE and budget >= 2:
            options.append("lam")
        if budget >= 3:
            options.append("app")
        if budget >= 4:
            options.append("redex")
        choice = rng.choice(options) if options else None
        if choice is None:
            raise ValueError("no term")
        if choice == "var":
            if local and (ty not in FREE or rng.random() < 0.7):
                name = rng.choice(local)
                return ("var", name, ty)
            return ("var", rng.choice(FREE[ty]), ty)
        if choice == "lam":
            name = self._fresh()
            return ("lam", name, ty[0], self.term(ty[1], budget - 1, {**env, name: ty[0]}))
        arg_ty = rng.choice(_SMALL_TYPES)
        fun_ty = (arg_ty, ty)
        if ty_depth(fun_ty) > self.max_depth:
            arg_ty, fun_ty = "e", ("e", ty)
            if ty_depth(fun_ty) > self.max_depth:
                return self.term(ty, 1, env)
        if choice == "redex":
            name = self._fresh()
            body_budget = max(1, (budget - 2) * 2 // 3)
            body = self.term(ty, body_budget, {**env, name: arg_ty})
            arg = self.term(arg_ty, max(1, budget - 2 - size(body)), env)
            return ("app", ("lam", name, arg_ty, body), arg)
        f = self.term(fun_ty, max(1, (budget - 1) // 2), env)
        a = self.term(arg_ty, max(1, budget - 1 - size(f)), env)
        return ("app", f, a)

    def sample(self):
        while True:
            ty = self.rng.choice(_SMALL_TYPES + [("e", ("e", "t"))])
            try:
                t = self.term(ty, self.rng.randint(3, self.max_size), {})
            except (ValueError, RecursionError):
                continue
            if size(t) <= self.max_size and all(ty_depth(x) <= self.max_depth for x in _types_in(t)):
                return t

    def partner(self, t):
        """A term of the same type: a reduct, an expansion, or an unrelated term."""
        rng = self.rng
        ty = type_of(t)
        roll = rng.random()
        if roll < 0.35:
            steps = list(_named_reducts(t))
            if steps:
                return rng.choice(steps)
        if roll < 0.6:
            # vacuous β-expansion of the whole term
            name = self._fresh()
            arg_ty = rng.choice(["e", "t"])
            return ("app", ("lam", name, arg_ty, t), ("var", rng.choice(FREE[arg_ty]), arg_ty))
        for _ in range(50):
            try:
                u = self.term(ty, rng.randint(1, self.max_size), {})
            except (ValueError, RecursionError):
                continue
            if size(u) <= self.max_size:
                return u
        return t


def _types_in(t):
    yield type_of(t)
    if t[0] == "lam":
        yield t[2]
        # body types are checked with the binder in scope
        yield from _types_in_env(t[3], {t[1]: t[2]})
    elif t[0] == "app":
        yield from _types_in(t[1])
        yield from _types_in(t[2])


def _types_in_env(t, env):
    yield type_of(t, env)
    if t[0] == "lam":
        yield from _types_in_env(t[3], {**env, t[1]: t[2]})
    elif t[0] == "app":
        yield from _types_in_env(t[1], env)
        yield from _types_in_env(t[2], env)


def _named_reducts(t):
    """Named one-step reducts, assuming binder names are globally distinct."""
    if t[0] == "app":
        f, a = t[1], t[2]
        if f[0] == "lam":
            yield _named_subst(f[3], f[1], a)
        for g in _named_reducts(f):
            yield ("app", g, a)
        for b in _named_reducts(a):
            yield ("app", f, b)
    elif t[0] == "lam":
        for b in _named_reducts(t[3]):
            yield ("lam", t[1], t[2], b)


def _named_subst(t, name, s):
    if t[0] == "var":
        return s if t[1] == name else t
    if t[0] == "lam":
        return t if t[1] == name else ("lam", t[1], t[2], _named_subst(t[3], name, s))
    return ("app", _named_subst(t[1], name, s), _named_subst(t[2], name, s))
