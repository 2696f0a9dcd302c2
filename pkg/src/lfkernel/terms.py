"""The term language: simple types, variables, constants and typed terms.

Terms are stored locally nameless: bound occurrences are de Bruijn indices and
each abstraction keeps its variable only as a naming hint.  Consequences:

* ``==`` on terms is alpha-equivalence, decided in O(1) through an interned
  skeleton id that ignores naming hints;
* substitution never captures;
* the named view of an abstraction (``Abs.bound`` / ``Abs.body``) primes the
  hint until it avoids every free variable of the body.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass

from .errors import FuelExhausted, IllTypedApplication, TypeMismatch

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

DEFAULT_FUEL = 10**6


# ---------------------------------------------------------------- types

class Type:
    __slots__ = ()

    def arrow(self, cod: "Type") -> "Type":
        return Fun(self, cod)

    @property
    def depth(self) -> int:
        if isinstance(self, Fun):
            return 1 + max(self.dom.depth, self.cod.depth)
        return 0

    def args(self) -> list["Type"]:
        """Argument types of a curried function type, outermost first."""
        out, ty = [], self
        while isinstance(ty, Fun):
            out.append(ty.dom)
            ty = ty.cod
        return out

    def result(self) -> "Type":
        ty = self
        while isinstance(ty, Fun):
            ty = ty.cod
        return ty

    def __str__(self):
        from .printer import format_type

        return format_type(self)


@dataclass(frozen=True, slots=True)
class Base(Type):
    name: str

    def __repr__(self):
        return self.name


@dataclass(frozen=True, slots=True)
class Fun(Type):
    dom: Type
    cod: Type

    def __repr__(self):
        return f"<{self.dom!r}{self.cod!r}>"


E = Base("e")
T = Base("t")


def fun(*types: Type) -> Type:
    """Right-associated function type: ``fun(a, b, c)`` is <a<bc>>."""
    ty = types[-1]
    for dom in reversed(types[:-1]):
        ty = Fun(dom, ty)
    return ty


def pred(sigma: Type) -> Type:
    """The type <σt> of properties of σ."""
    return Fun(sigma, T)


def relational(sigmas) -> Type:
    return fun(*sigmas, T)


# ---------------------------------------------------------------- variables and constants

@dataclass(frozen=True, slots=True)
class Variable:
    letter: str
    type: Type
    primes: int = 0

    def prime(self, n: int = 1) -> "Variable":
        return Variable(self.letter, self.type, self.primes + n)

    @property
    def name(self) -> str:
        return self.letter + "'" * self.primes

    def __repr__(self):
        return f"{self.name}^{self.type!r}"


@dataclass(frozen=True, slots=True)
class Include:
    """The primitive constant ⊆_σ."""

    sigma: Type

    @property
    def type(self) -> Type:
        return fun(pred(self.sigma), pred(self.sigma), T)


@dataclass(frozen=True, slots=True)
class Iota:
    sigma: Type

    @property
    def type(self) -> Type:
        return Fun(pred(self.sigma), self.sigma)


@dataclass(frozen=True, slots=True)
class Epsilon:
    sigma: Type

    @property
    def type(self) -> Type:
        return Fun(pred(self.sigma), self.sigma)


Constant = Include | Iota | Epsilon


# ---------------------------------------------------------------- terms

_SKELETONS: dict = {}


def _intern(key) -> int:
    s = _SKELETONS.get(key)
    if s is None:
        s = _SKELETONS[key] = len(_SKELETONS)
    return s


_EMPTY = frozenset()


class Term:
    """Base of the four term forms.  Equality is alpha-equivalence."""

    __slots__ = ("type", "skel", "fv", "lb", "__weakref__")

    def __eq__(self, other):
        return isinstance(other, Term) and self.skel == other.skel

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return self.skel

    def __call__(self, *args: "Term") -> "Term":
        out = self
        for a in args:
            out = App(out, a)
        return out

    def __repr__(self):
        from .printer import print_term

        return f"Term({print_term(self)})"

    def __str__(self):
        from .printer import print_term

        return print_term(self)


class Var(Term):
    __slots__ = ("var",)

    def __init__(self, var: Variable):
        self.var = var
        self.type = var.type
        self.skel = _intern(("v", var))
        self.fv = frozenset((var,))
        self.lb = 0


class Con(Term):
    __slots__ = ("const",)

    def __init__(self, const):
        self.const = const
        self.type = const.type
        self.skel = _intern(("c", const))
        self.fv = _EMPTY
        self.lb = 0


class _Bound(Term):
    """Internal de Bruijn index; never escapes the named view."""

    __slots__ = ("index",)

    def __init__(self, index: int, ty: Type):
        self.index = index
        self.type = ty
        self.skel = _intern(("b", index, ty))
        self.fv = _EMPTY
        self.lb = index + 1


class App(Term):
    __slots__ = ("fun", "arg")

    def __init__(self, fun: Term, arg: Term):
        fty = fun.type
        if not isinstance(fty, Fun) or fty.dom != arg.type:
            raise IllTypedApplication(
                f"cannot apply a term of type {fty} to one of type {arg.type}",
                fun_type=fty,
                arg_type=arg.type,
            )
        self._set(fun, arg, fty.cod)

    def _set(self, fun, arg, ty):
        self.fun = fun
        self.arg = arg
        self.type = ty
        self.skel = _intern(("a", fun.skel, arg.skel))
        if not arg.fv:
            self.fv = fun.fv
        elif not fun.fv or fun.fv is arg.fv:
            self.fv = arg.fv
        else:
            self.fv = fun.fv | arg.fv
        self.lb = fun.lb if fun.lb > arg.lb else arg.lb

    @classmethod
    def _make(cls, fun, arg):
        self = object.__new__(cls)
        self._set(fun, arg, fun.type.cod)
        return self


class Abs(Term):
    """Abstraction.  ``Abs(x, body)`` binds the free occurrences of ``x``."""

    __slots__ = ("hint", "scope")

    def __init__(self, bound: Variable, body: Term):
        self._set(bound, _close(body, bound, 0))

    def _set(self, hint, scope):
        self.hint = hint
        self.scope = scope
        self.type = Fun(hint.type, scope.type)
        self.skel = _intern(("l", hint.type, scope.skel))
        self.fv = scope.fv
        self.lb = scope.lb - 1 if scope.lb > 0 else 0

    @classmethod
    def _make(cls, hint, scope):
        self = object.__new__(cls)
        self._set(hint, scope)
        return self

    @property
    def bound(self) -> Variable:
        v = self.hint
        while v in self.fv:
            v = v.prime()
        return v

    @property
    def body(self) -> Term:
        return _open(self.scope, Var(self.bound), 0)

    def split(self) -> tuple[Variable, Term]:
        v = self.bound
        return v, _open(self.scope, Var(v), 0)

    def instantiate(self, arg: Term) -> Term:
        """Body with the bound variable replaced by ``arg`` (one β-contraction)."""
        if arg.type != self.hint.type:
            raise TypeMismatch(f"argument of type {arg.type}, binder of type {self.hint.type}")
        return _open(self.scope, arg, 0)


def _close(t: Term, x: Variable, depth: int) -> Term:
    if x not in t.fv:
        return t
    if isinstance(t, Var):
        return _Bound(depth, t.type)
    if isinstance(t, App):
        return App._make(_close(t.fun, x, depth), _close(t.arg, x, depth))
    return Abs._make(t.hint, _close(t.scope, x, depth + 1))


def _open(t: Term, u: Term, depth: int) -> Term:
    """Replace index ``depth`` by the locally closed term ``u``."""
    if t.lb <= depth:
        return t
    if isinstance(t, _Bound):
        return u if t.index == depth else t
    if isinstance(t, App):
        return App._make(_open(t.fun, u, depth), _open(t.arg, u, depth))
    return Abs._make(t.hint, _open(t.scope, u, depth + 1))


# ---------------------------------------------------------------- operations

def type_of(a: Term) -> Type:
    return a.type


def free_vars(a: Term) -> frozenset:
    return a.fv


def alpha_equal(a: Term, b: Term) -> bool:
    return a.skel == b.skel


def substitute(a: Term, x: Variable, b: Term) -> Term:
    """Capture-avoiding [b/x]a."""
    if b.type != x.type:
        raise TypeMismatch(f"cannot substitute a term of type {b.type} for {x!r}")
    return _subst(a, x, b)


def substitute_many(a: Term, mapping: dict) -> Term:
    for x, b in mapping.items():
        if b.type != x.type:
            raise TypeMismatch(f"cannot substitute a term of type {b.type} for {x!r}")
    keys = frozenset(mapping)
    memo: dict = {}

    def go(t):
        if not (t.fv & keys):
            return t
        r = memo.get(id(t))
        if r is not None:
            return r
        if isinstance(t, Var):
            r = mapping[t.var]
        elif isinstance(t, App):
            r = App._make(go(t.fun), go(t.arg))
        else:
            r = Abs._make(t.hint, go(t.scope))
        memo[id(t)] = r
        return r

    return go(a)


def _subst(t: Term, x: Variable, b: Term) -> Term:
    if x not in t.fv:
        return t
    if isinstance(t, Var):
        return b
    if isinstance(t, App):
        return App._make(_subst(t.fun, x, b), _subst(t.arg, x, b))
    return Abs._make(t.hint, _subst(t.scope, x, b))


def replace_const(a: Term, fn) -> Term:
    """Rebuild ``a`` with every constant ``c`` replaced by ``fn(c)`` (a closed term or None)."""
    memo: dict = {}

    def go(t):
        r = memo.get(t.skel)
        if r is not None:
            return r
        if isinstance(t, Con):
            new = fn(t.const)
            r = t if new is None else new
        elif isinstance(t, App):
            r = App._make(go(t.fun), go(t.arg))
        elif isinstance(t, Abs):
            r = Abs._make(t.hint, go(t.scope))
        else:
            r = t
        memo[t.skel] = r
        return r

    return go(a)


def constants(a: Term) -> set:
    out, seen, stack = set(), set(), [a]
    while stack:
        t = stack.pop()
        if t.skel in seen:
            continue
        seen.add(t.skel)
        if isinstance(t, Con):
            out.add(t.const)
        elif isinstance(t, App):
            stack += (t.fun, t.arg)
        elif isinstance(t, Abs):
            stack.append(t.scope)
    return out


def size(a: Term) -> int:
    if isinstance(a, App):
        return 1 + size(a.fun) + size(a.arg)
    if isinstance(a, Abs):
        return 1 + size(a.scope)
    return 1


def spine(a: Term) -> tuple[Term, list[Term]]:
    args = []
    while isinstance(a, App):
        args.append(a.arg)
        a = a.fun
    args.reverse()
    return a, args


def apply(head: Term, *args: Term) -> Term:
    for x in args:
        head = App(head, x)
    return head


def lam(variables, body: Term) -> Term:
    if isinstance(variables, Variable):
        variables = [variables]
    for v in reversed(list(variables)):
        body = Abs(v, body)
    return body


# ---------------------------------------------------------------- β-reduction

def _shift(u: Term, k: int, cutoff: int) -> Term:
    if k == 0 or u.lb <= cutoff:
        return u
    if isinstance(u, _Bound):
        return _Bound(u.index + k, u.type) if u.index >= cutoff else u
    if isinstance(u, App):
        return App._make(_shift(u.fun, k, cutoff), _shift(u.arg, k, cutoff))
    return Abs._make(u.hint, _shift(u.scope, k, cutoff + 1))


def _inst(t: Term, j: int, u: Term) -> Term:
    """t[j := u] for de Bruijn terms, lowering loose indices above j."""
    if t.lb <= j:
        return t
    if isinstance(t, _Bound):
        if t.index == j:
            return _shift(u, j, 0)
        return _Bound(t.index - 1, t.type)
    if isinstance(t, App):
        return App._make(_inst(t.fun, j, u), _inst(t.arg, j, u))
    return Abs._make(t.hint, _inst(t.scope, j + 1, u))


def contract(redex: Term) -> Term:
    """Contract a top-level redex (λx.A)B to [B/x]A."""
    if not (isinstance(redex, App) and isinstance(redex.fun, Abs)):
        raise TypeMismatch("not a β-redex")
    return _inst(redex.fun.scope, 0, redex.arg)


_NF: dict[int, Term] = {}


class _Fuel:
    __slots__ = ("left",)

    def __init__(self, n):
        self.left = n


def beta_normal_form(a: Term, fuel: int = DEFAULT_FUEL) -> Term:
    """Leftmost-outermost normalisation; raises FuelExhausted past ``fuel`` contractions."""
    return _nf(a, _Fuel(fuel))


def _nf(t: Term, fuel: _Fuel) -> Term:
    r = _NF.get(t.skel)
    if r is not None:
        return r
    key = t.skel
    if isinstance(t, Abs):
        r = Abs._make(t.hint, _nf(t.scope, fuel))
    elif isinstance(t, App):
        head, args = spine(t)
        while isinstance(head, Abs) and args:
            fuel.left -= 1
            if fuel.left < 0:
                raise FuelExhausted("β-normalisation exceeded its step budget")
            head = _inst(head.scope, 0, args[0])
            args = args[1:]
            # the contracted head may itself be an application
            if isinstance(head, App):
                h2, a2 = spine(head)
                head, args = h2, a2 + args
        if isinstance(head, Abs):
            r = _nf(head, fuel)
        else:
            r = head
            for x in args:
                r = App._make(r, _nf(x, fuel))
    else:
        r = t
    _NF[key] = r
    _NF[r.skel] = r
    return r


def is_normal(a: Term) -> bool:
    return beta_normal_form(a).skel == a.skel


def beta_equivalent(a: Term, b: Term) -> bool:
    if a.type != b.type:
        raise TypeMismatch(f"β-comparison of terms of types {a.type} and {b.type}")
    if a.skel == b.skel:
        return True
    return beta_normal_form(a).skel == beta_normal_form(b).skel


def redex_positions(a: Term) -> list[tuple[int, ...]]:
    """Paths (0 = function / body, 1 = argument) of every β-redex, pre-order."""
    out = []

    def go(t, path):
        if isinstance(t, App):
            if isinstance(t.fun, Abs):
                out.append(path)
            go(t.fun, path + (0,))
            go(t.arg, path + (1,))
        elif isinstance(t, Abs):
            go(t.scope, path + (0,))

    go(a, ())
    return out


def contract_at(a: Term, path: tuple[int, ...]) -> Term:
    """Contract the redex found at ``path`` (works under binders via de Bruijn indices)."""
    if not path:
        return contract(a)
    step, rest = path[0], path[1:]
    if isinstance(a, App):
        if step == 0:
            return App._make(contract_at(a.fun, rest), a.arg)
        return App._make(a.fun, contract_at(a.arg, rest))
    if isinstance(a, Abs):
        return Abs._make(a.hint, contract_at(a.scope, rest))
    raise ValueError("path leaves the term")
