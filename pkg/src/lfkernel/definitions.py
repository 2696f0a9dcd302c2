"""Defined notation: the rewrite table and term builders for it.

Every abbreviation is a closed core term.  Builders such as :func:`imp` return
the *unreduced* application of the definiens (``App(App(→, P), Q)``), which is
exactly the term the surface notation ``P → Q`` denotes.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

from .errors import ArityMismatch, GuardViolation, UnknownNotation
from .terms import (
    E,
    T,
    Abs,
    App,
    Con,
    Epsilon,
    Fun,
    Include,
    Iota,
    Term,
    Type,
    Var,
    Variable,
    fun,
    lam,
    pred,
    relational,
)

GUARDS = ("core", "iota", "eps")


def guard_allows(active: str, required: str) -> bool:
    return GUARDS.index(active) >= GUARDS.index(required)


def V(letter: str, ty: Type, primes: int = 0) -> Var:
    return Var(Variable(letter, ty, primes))


def subset(f: Term, g: Term) -> Term:
    """F ⊆_σ G, with σ read off the type of F."""
    sigma = f.type.dom
    return App(App(Con(Include(sigma)), f), g)


# ---------------------------------------------------------------- core definienda

@lru_cache(maxsize=None)
def TOP() -> Term:
    p = Variable("p", T)
    return subset(Abs(p, Var(p)), Abs(p, Var(p)))


@lru_cache(maxsize=None)
def FORALL(sigma: Type) -> Term:
    X = Variable("X", pred(sigma))
    y = Variable("y", sigma)
    return Abs(X, subset(Abs(y, TOP()), Var(X)))


@lru_cache(maxsize=None)
def BOT() -> Term:
    p = Variable("p", T)
    return subset(Abs(p, TOP()), Abs(p, Var(p)))


@lru_cache(maxsize=None)
def NEG() -> Term:
    p, r = Variable("p", T), Variable("r", T)
    return Abs(p, subset(Abs(r, Var(p)), Abs(r, BOT())))


@lru_cache(maxsize=None)
def EXISTS(sigma: Type) -> Term:
    X = Variable("X", pred(sigma))
    y = Variable("y", sigma)
    return Abs(X, neg(forall(y, neg(App(Var(X), Var(y))))))


@lru_cache(maxsize=None)
def IMP() -> Term:
    p, q, r = Variable("p", T), Variable("q", T), Variable("r", T)
    return lam([p, q], subset(Abs(r, Var(p)), Abs(r, Var(q))))


@lru_cache(maxsize=None)
def OR() -> Term:
    p, q = V("p", T), V("q", T)
    return lam([p.var, q.var], imp(neg(p), q))


@lru_cache(maxsize=None)
def AND() -> Term:
    p, q = V("p", T), V("q", T)
    return lam([p.var, q.var], neg(disj(neg(p), neg(q))))


@lru_cache(maxsize=None)
def IFF() -> Term:
    p, q = V("p", T), V("q", T)
    return lam([p.var, q.var], conj(imp(p, q), imp(q, p)))


def _zvars(sigmas):
    letters = "zwvuts"
    return [Variable(letters[i % len(letters)], s, i // len(letters)) for i, s in enumerate(sigmas)]


@lru_cache(maxsize=None)
def EQUIV(sigmas: tuple) -> Term:
    R = relational(sigmas)
    X, Y = Variable("X", R), Variable("Y", R)
    zs = _zvars(sigmas)
    zt = [Var(z) for z in zs]
    return lam([X, Y, *zs], iff(Var(X)(*zt), Var(Y)(*zt)))


@lru_cache(maxsize=None)
def EQ(sigma: Type) -> Term:
    x, y, Z = Variable("x", sigma), Variable("y", sigma), Variable("Z", pred(sigma))
    return lam([x, y], subset(Abs(Z, App(Var(Z), Var(x))), Abs(Z, App(Var(Z), Var(y)))))


@lru_cache(maxsize=None)
def NEQ(sigma: Type) -> Term:
    x, y = V("x", sigma), V("y", sigma)
    return lam([x.var, y.var], neg(eq(x, y)))


@lru_cache(maxsize=None)
def BOX() -> Term:
    return App(EQ(T), TOP())


@lru_cache(maxsize=None)
def DIA() -> Term:
    return App(NEQ(T), BOT())


@lru_cache(maxsize=None)
def ZERO(sigma: Type) -> Term:
    X = V("X", pred(sigma))
    return Abs(X.var, neg(App(EXISTS(sigma), X)))


@lru_cache(maxsize=None)
def ONE(sigma: Type) -> Term:
    X, y, z = V("X", pred(sigma)), V("y", sigma), V("z", sigma)
    return Abs(X.var, exists(y.var, conj(X(y), forall(z.var, imp(X(z), eq(y, z))))))


@lru_cache(maxsize=None)
def SETMINUS(sigmas: tuple) -> Term:
    R = relational(sigmas)
    X, Y = Variable("X", R), Variable("Y", R)
    zs = _zvars(sigmas)
    zt = [Var(z) for z in zs]
    return lam([X, Y, *zs], conj(Var(X)(*zt), neg(Var(Y)(*zt))))


def numeral_type(sigma: Type) -> Type:
    return Fun(pred(sigma), T)


@lru_cache(maxsize=None)
def PLUS(sigma: Type) -> Term:
    N = numeral_type(sigma)
    m, n, X, Y = V("m", N), V("n", N), V("X", pred(sigma)), V("Y", pred(sigma))
    body = exists(Y.var, conj(subset(Y, X), conj(m(Y), n(setminus(X, Y)))))
    return lam([m.var, n.var, X.var], body)


@lru_cache(maxsize=None)
def NAT(sigma: Type) -> Term:
    N = numeral_type(sigma)
    n, X, y = V("n", N), V("X", Fun(N, T)), V("y", N)
    body = forall(
        X.var,
        imp(X(ZERO(sigma)), imp(subset(X, Abs(y.var, X(plus(y, ONE(sigma))))), X(n))),
    )
    return Abs(n.var, body)


# ---------------------------------------------------------------- extension definienda

@lru_cache(maxsize=None)
def EXISTS1(sigma: Type) -> Term:
    return ONE(sigma)


@lru_cache(maxsize=None)
def DAGGER(sigma: Type) -> Term:
    if sigma == E:
        x = Variable("x", E)
        return App(Con(Iota(E)), Abs(x, BOT()))
    if sigma == T:
        return BOT()
    x = Variable("x", sigma.dom)
    return Abs(x, DAGGER(sigma.cod))


@lru_cache(maxsize=None)
def ACTUALITY() -> Term:
    p, q = V("p", T), V("q", T)
    body = conj(imp(p, eq(q, TOP())), imp(neg(p), eq(q, BOT())))
    return Abs(p.var, App(Con(Iota(T)), Abs(q.var, body)))


@lru_cache(maxsize=None)
def ALPHA() -> Term:
    p = V("p", T)
    return forall(p.var, iff(p, App(ACTUALITY(), p)))


@lru_cache(maxsize=None)
def CLASS(sigma: Type) -> Term:
    X, y = V("X", pred(sigma)), V("y", sigma)
    return Abs(X.var, forall(y.var, disj(eq(X(y), TOP()), eq(X(y), BOT()))))


def class_abstract(x: Variable, body: Term) -> Term:
    """{x^σ : P} ⇝ ι λX.(∀y.(Xy=⊤ ∨ Xy=⊥) ∧ X ≡ λx.P)."""
    sigma = x.type
    X = Variable("X", pred(sigma))
    while X in body.fv:
        X = X.prime()
    inner = conj(App(CLASS(sigma), Var(X)), coext(Var(X), Abs(x, body)))
    return App(Con(Iota(pred(sigma))), Abs(X, inner))


@lru_cache(maxsize=None)
def DAGGER_EPS(sigma: Type) -> Term:
    if sigma == E:
        x = Variable("x", E)
        return App(Con(Epsilon(E)), Abs(x, BOT()))
    if sigma == T:
        return BOT()
    x = Variable("x", sigma.dom)
    return Abs(x, DAGGER_EPS(sigma.cod))


@lru_cache(maxsize=None)
def IOTA_EPS(sigma: Type) -> Term:
    """ι_σ ⇝ ε λf.∀X.((∃!X → X(fX)) ∧ (¬∃!X → fX = †_σ))."""
    F = Fun(pred(sigma), sigma)
    f, X = V("f", F), V("X", pred(sigma))
    u = App(EXISTS1(sigma), X)
    body = forall(X.var, conj(imp(u, X(f(X))), imp(neg(u), eq(f(X), DAGGER_EPS(sigma)))))
    return App(Con(Epsilon(F)), Abs(f.var, body))


# ---------------------------------------------------------------- formula builders

def top() -> Term:
    return TOP()


def bot() -> Term:
    return BOT()


def neg(p: Term) -> Term:
    return App(NEG(), p)


def imp(p: Term, q: Term) -> Term:
    return App(App(IMP(), p), q)


def imps(*ps: Term) -> Term:
    out = ps[-1]
    for p in reversed(ps[:-1]):
        out = imp(p, out)
    return out


def disj(p: Term, q: Term) -> Term:
    return App(App(OR(), p), q)


def conj(p: Term, q: Term) -> Term:
    return App(App(AND(), p), q)


def iff(p: Term, q: Term) -> Term:
    return App(App(IFF(), p), q)


def forall(x: Variable | Var, p: Term) -> Term:
    if isinstance(x, Var):
        x = x.var
    return App(FORALL(x.type), Abs(x, p))


def foralls(xs, p: Term) -> Term:
    for x in reversed(list(xs)):
        p = forall(x, p)
    return p


def exists(x: Variable | Var, p: Term) -> Term:
    if isinstance(x, Var):
        x = x.var
    return App(EXISTS(x.type), Abs(x, p))


def eq(a: Term, b: Term) -> Term:
    return App(App(EQ(a.type), a), b)


def neq(a: Term, b: Term) -> Term:
    return App(App(NEQ(a.type), a), b)


def box(p: Term) -> Term:
    return App(BOX(), p)


def dia(p: Term) -> Term:
    return App(DIA(), p)


def setminus(x: Term, y: Term) -> Term:
    return App(App(SETMINUS(tuple(x.type.args())), x), y)


def equiv(x: Term, y: Term) -> Term:
    """The raw ≡ entry applied to two relations (a relation, not a formula)."""
    return App(App(EQUIV(tuple(x.type.args())), x), y)


def coext(x: Term, y: Term) -> Term:
    """The formula 'X ≡ Y': universal closure of the raw ≡ entry."""
    sigmas = x.type.args()
    rel = equiv(x, y)
    if len(sigmas) == 1:
        return App(FORALL(sigmas[0]), rel)
    zs = _zvars(sigmas)
    body = App(FORALL(sigmas[-1]), rel(*[Var(z) for z in zs[:-1]]))
    for z in reversed(zs[:-1]):
        body = forall(z, body)
    return body


def plus(m: Term, n: Term) -> Term:
    sigma = m.type.dom.dom
    return App(App(PLUS(sigma), m), n)


def numeral(k: int, sigma: Type) -> Term:
    """0, 1, then 1+(1+…) right-associated."""
    if k == 0:
        return ZERO(sigma)
    out = ONE(sigma)
    for _ in range(k - 1):
        out = plus(ONE(sigma), out)
    return out


def nat(n: Term) -> Term:
    sigma = n.type.dom.dom
    return App(NAT(sigma), n)


def iota(x: Variable, body: Term) -> Term:
    return App(Con(Iota(x.type)), Abs(x, body))


def epsilon(x: Variable, body: Term) -> Term:
    return App(Con(Epsilon(x.type)), Abs(x, body))


# ---------------------------------------------------------------- the table

@dataclass(frozen=True)
class Definition:
    name: str
    params: tuple  # each "type" or "vector"
    build: Callable | None
    schema: str  # resulting type, schematically
    display: str  # expansion, schematically
    guard: str = "core"
    infix: bool = False
    binder: bool = False
    aliases: tuple = ()
    enabled: bool = True


def _d(name, params, build, schema, display, **kw) -> Definition:
    return Definition(name, tuple(params), build, schema, display, **kw)


CORE_DEFINITIONS = (
    _d("⊤", [], lambda: TOP(), "t", "(λp.p) ⊆ (λp.p)", aliases=("top",)),
    _d("∀", ["type"], FORALL, "⟨⟨σt⟩t⟩", "λX^{σt}.((λy^σ.⊤) ⊆ X)", aliases=("forall",)),
    _d("∀.", [], None, "t", "∀x^σ.P ⇝ ∀_σ λx^σ.P", binder=True),
    _d("⊥", [], lambda: BOT(), "t", "(λp.⊤) ⊆ (λp.p)", aliases=("bot",)),
    _d("¬", [], lambda: NEG(), "⟨tt⟩", "λp.((λr^t.p) ⊆ (λr^t.⊥))", aliases=("not", "~")),
    _d("∃", ["type"], EXISTS, "⟨⟨σt⟩t⟩", "λX^{σt}.¬∀y^σ.¬Xy", aliases=("exists",)),
    _d("∃.", [], None, "t", "∃x^σ.P ⇝ ∃_σ λx^σ.P", binder=True),
    _d("λ..", [], None, "στ", "λx y⃗.A ⇝ λx.λy⃗.A", binder=True),
    _d("∀..", [], None, "t", "∀x y⃗.P ⇝ ∀x.∀y⃗.P", binder=True),
    _d("∃..", [], None, "t", "∃x y⃗.P ⇝ ∃x.∃y⃗.P", binder=True),
    _d("→", [], lambda: IMP(), "⟨t⟨tt⟩⟩", "λpq.((λr^t.p) ⊆ (λr^t.q))", infix=True, aliases=("->",)),
    _d("∨", [], lambda: OR(), "⟨t⟨tt⟩⟩", "λpq.(¬p → q)", infix=True, aliases=("\\/", "or")),
    _d("∧", [], lambda: AND(), "⟨t⟨tt⟩⟩", "λpq.¬(¬p ∨ ¬q)", infix=True, aliases=("/\\", "and")),
    _d("↔", [], lambda: IFF(), "⟨t⟨tt⟩⟩", "λpq.((p → q) ∧ (q → p))", infix=True, aliases=("<->",)),
    _d("≡", ["vector"], EQUIV, "⟨⟨σ⃗t⟩⟨⟨σ⃗t⟩⟨σ⃗t⟩⟩⟩", "λXY^{σ⃗t}z⃗.(Xz⃗ ↔ Yz⃗)", infix=True, aliases=("equiv", "==")),
    _d("=", ["type"], EQ, "⟨σ⟨σt⟩⟩", "λxy^σ.((λZ.Zx) ⊆ (λZ.Zy))", infix=True),
    _d("≠", ["type"], NEQ, "⟨σ⟨σt⟩⟩", "λxy.¬(x =_σ y)", infix=True, aliases=("!=",)),
    _d("□", [], lambda: BOX(), "⟨tt⟩", "=⊤", aliases=("box",)),
    _d("◇", [], lambda: DIA(), "⟨tt⟩", "≠⊥", aliases=("dia",)),
    _d("0", ["type"], ZERO, "⟨⟨σt⟩t⟩", "λX^{σt}.¬∃X"),
    _d("1", ["type"], ONE, "⟨⟨σt⟩t⟩", "λX^{σt}.∃y.(Xy ∧ ∀z.(Xz → y = z))"),
    _d("∖", ["vector"], SETMINUS, "⟨⟨σ⃗t⟩⟨⟨σ⃗t⟩⟨σ⃗t⟩⟩⟩", "λXY^{σ⃗t}z⃗.(Xz⃗ ∧ ¬Yz⃗)", infix=True, aliases=("setminus",)),
    _d("+", ["type"], PLUS, "⟨⟨⟨σt⟩t⟩⟨⟨⟨σt⟩t⟩⟨⟨σt⟩t⟩⟩⟩",
       "λmn^{⟨σt⟩t}X^{σt}.∃Y.(Y ⊆ X ∧ mY ∧ n(X ∖ Y))", infix=True),
    _d("ℕ", ["type"], NAT, "⟨⟨⟨σt⟩t⟩t⟩", "λn^{⟨σt⟩t}.∀X.(X0 → (X ⊆ λy.X(y + 1)) → Xn)", aliases=("Nat",)),
)

EXTENSION_DEFINITIONS = (
    _d("†", ["type"], DAGGER, "σ", "†_e ⇝ ι λx^e.⊥; †_t ⇝ ⊥; †_{στ} ⇝ λx^σ.†_τ", guard="iota", aliases=("dagger",)),
    _d("{:}", [], None, "⟨σt⟩",
       "{x^σ : P} ⇝ ι λX^{σt}.(∀y.(Xy = ⊤ ∨ Xy = ⊥) ∧ X ≡ λx.P)", guard="iota", binder=True),
    _d("@", [], lambda: ACTUALITY(), "⟨tt⟩", "λp.ι q.((p → q = ⊤) ∧ (¬p → q = ⊥))", guard="iota"),
    _d("α", [], lambda: ALPHA(), "t", "∀p.(p ↔ @p)", guard="iota", aliases=("alpha",)),
    _d("∃!", ["type"], EXISTS1, "⟨⟨σt⟩t⟩", "1_σ", aliases=("exists1",)),
    _d("∀∈", [], None, "t", "∀X∈F.P ⇝ ∀X.(FX → P)", binder=True),
    _d("∃∈", [], None, "t", "∃X∈F.P ⇝ ∃X.(FX ∧ P)", binder=True),
    _d("ι.", [], None, "σ", "(ι x^σ.P) ⇝ ι_σ λx^σ.P", guard="iota", binder=True),
    _d("ε.", [], None, "σ", "(ε x^σ.P) ⇝ ε_σ λx^σ.P", guard="eps", binder=True),
    _d("class", ["type"], CLASS, "⟨⟨σt⟩t⟩", "λX^{σt}.∀y.(Xy = ⊤ ∨ Xy = ⊥)"),
    _d("†ε", ["type"], DAGGER_EPS, "σ", "†_e ⇝ ε λx^e.⊥", guard="eps", enabled=False),
    _d("ιε", ["type"], IOTA_EPS, "⟨⟨σt⟩σ⟩",
       "ι_σ ⇝ ε λf^{⟨σt⟩σ}.∀X^{σt}.((∃!X → X(fX)) ∧ (¬∃!X → fX = †_σ))", guard="eps", enabled=False),
)


@dataclass
class DefinitionTable:
    entries: tuple = field(default_factory=lambda: CORE_DEFINITIONS + EXTENSION_DEFINITIONS)
    reductions: bool = False  # enable the ε-to-ι reduction entries

    def __post_init__(self):
        self._index = {}
        for d in self.entries:
            self._index[d.name] = d
            for a in d.aliases:
                self._index.setdefault(a, d)

    def __contains__(self, name):
        return name in self._index

    def __iter__(self):
        return iter(self.entries)

    def lookup(self, name: str) -> Definition:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownNotation(f"no definition named {name!r}") from None

    def with_reductions(self, on: bool = True) -> "DefinitionTable":
        return DefinitionTable(self.entries, reductions=on)

    def instantiate(self, name: str, type_args=(), guard: str = "core") -> Term:
        d = self.lookup(name)
        if d.binder or d.build is None:
            raise UnknownNotation(f"{name!r} is binder sugar and has no closed instance")
        if not guard_allows(guard, d.guard):
            raise GuardViolation(f"{name!r} requires the {d.guard} extension (active: {guard})")
        type_args = list(type_args)
        if len(type_args) != len(d.params):
            raise ArityMismatch(f"{name!r} takes {len(d.params)} type parameter(s), got {len(type_args)}")
        args = []
        for kind, a in zip(d.params, type_args):
            if kind == "vector":
                args.append(tuple(a) if isinstance(a, (list, tuple)) else (a,))
            else:
                if isinstance(a, (list, tuple)):
                    raise ArityMismatch(f"{name!r} takes a single type, not a vector")
                args.append(a)
        return d.build(*args)

    def dump(self) -> str:
        lines = []
        for d in self.entries:
            params = ",".join("σ⃗" if k == "vector" else "σ" for k in d.params)
            head = f"{d.name}[{params}]" if params else d.name
            flags = []
            if d.guard != "core":
                flags.append(f"requires-{d.guard}")
            if d.binder:
                flags.append("binder")
            if d.infix:
                flags.append("infix")
            if not d.enabled:
                flags.append("disabled")
            tail = f"  # {' '.join(flags)}" if flags else ""
            lines.append(f"{head} : {d.schema} := {d.display}{tail}")
        return "\n".join(lines) + "\n"


def load_dump(text: str) -> list[tuple[str, str, str]]:
    """Parse a table dump back into ``(name, schema, expansion)`` triples."""
    out = []
    for raw in text.splitlines():
        line = raw.split("  # ")[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" : ")
        schema, sep, expansion = rest.partition(" := ")
        if not sep:
            raise ValueError(f"malformed table line: {raw!r}")
        out.append((head.split("[")[0], schema, expansion))
    return out


DEFAULT_TABLE = DefinitionTable()


def instantiate_def(name: str, type_args=(), guard: str = "core", table: DefinitionTable = DEFAULT_TABLE) -> Term:
    return table.instantiate(name, type_args, guard)
