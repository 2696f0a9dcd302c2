"""Rendering of types and terms back into the concrete notation."""
from __future__ import annotations

from dataclasses import dataclass, replace

from . import definitions as D
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
    Type,
    Var,
    _Bound,
    spine,
)

# precedence levels, loosest first
BINDER, IFF, IMP, OR, AND, REL, ADD, UNARY, APP, ATOM = range(10)

_INFIX = {
    "↔": (IFF, "none"),
    "→": (IMP, "right"),
    "∨": (OR, "right"),
    "∧": (AND, "right"),
    "=": (REL, "none"),
    "≠": (REL, "none"),
    "⊆": (REL, "none"),
    "≡": (REL, "none"),
    "+": (ADD, "right"),
    "∖": (ADD, "none"),
}

_ASCII = {
    "λ": "\\", "∀": "forall", "∃": "exists", "∃!": "exists1", "ι": "iota", "ε": "eps",
    "¬": "~", "□": "box", "◇": "dia", "⊤": "top", "⊥": "bot", "→": "->", "↔": "<->",
    "∧": "/\\", "∨": "\\/", "≠": "!=", "⊆": "<=", "≡": "==", "∖": "setminus",
    "ℕ": "Nat", "†": "dagger", "α": "alpha", "⟨": "<", "⟩": ">", "≡ₚ": "equiv",
}


def format_type(ty: Type, style: str = "minimal", ascii: bool = False) -> str:
    """``minimal`` omits right-associated brackets (⟨t⟨tt⟩⟩ → ttt); ``full`` keeps all."""
    lb, rb = ("<", ">") if ascii else ("⟨", "⟩")

    def full(t):
        if not isinstance(t, (Base, Fun)):
            return repr(t)
        if isinstance(t, Base):
            return t.name
        return lb + full(t.dom) + full(t.cod) + rb

    def minimal(t):
        if not isinstance(t, Fun):
            return t.name if isinstance(t, Base) else repr(t)
        dom = minimal(t.dom) if not isinstance(t.dom, Fun) else lb + minimal(t.dom) + rb
        return dom + minimal(t.cod)

    return full(ty) if style == "full" else minimal(ty)


def _deco(ty: Type, ascii: bool) -> str:
    if isinstance(ty, Base):
        return ty.name
    return "{" + format_type(ty, "minimal", ascii) + "}"


@dataclass(frozen=True)
class PrintOptions:
    decorations: str = "none"  # none | binders | full | auto
    parens: str = "minimal"  # minimal | full
    fold: bool = True
    ascii: bool = False
    compact: bool = False
    elide_apps: bool = False  # drop argument parentheses when typing forces the reading


# ---------------------------------------------------------------- folding

_RECOGNISED: dict[int, tuple | None] = {}


def _numeral_base(ty: Type):
    # ⟨⟨σt⟩t⟩ → σ
    if isinstance(ty, Fun) and ty.cod == T and isinstance(ty.dom, Fun) and ty.dom.cod == T:
        return ty.dom.dom
    return None


def _candidates(ty: Type):
    out = []
    if ty == T:
        out += [("⊤", ()), ("⊥", ()), ("α", ())]
    tt = Fun(T, T)
    if ty == tt:
        out += [("¬", ()), ("□", ()), ("◇", ()), ("@", ())]
    if ty == Fun(T, tt):
        out += [("→", ()), ("∨", ()), ("∧", ()), ("↔", ())]
    if isinstance(ty, Fun) and isinstance(ty.cod, Fun) and ty.cod.cod == T and ty.dom == ty.cod.dom:
        out += [("=", (ty.dom,)), ("≠", (ty.dom,))]
    sigma = _numeral_base(ty)
    if sigma is not None:
        out += [("∀", (sigma,)), ("∃", (sigma,)), ("0", (sigma,)), ("1", (sigma,)), ("class", (sigma,))]
    if isinstance(ty, Fun) and isinstance(ty.cod, Fun) and ty.dom == ty.cod.dom and ty.cod.cod == ty.dom:
        n = ty.dom
        s = _numeral_base(n)
        if s is not None:
            out.append(("+", (s,)))
        if n.result() == T and n.args():
            vec = tuple(n.args())
            out += [("∖", (vec,)), ("≡ₚ", (vec,))]
    if isinstance(ty, Fun) and ty.cod == T:
        s = _numeral_base(ty.dom)
        if s is not None:
            out.append(("ℕ", (s,)))
    out.append(("†", (ty,)))
    return out


_BUILD = {
    "⊤": D.TOP, "⊥": D.BOT, "α": D.ALPHA, "¬": D.NEG, "□": D.BOX, "◇": D.DIA, "@": D.ACTUALITY,
    "→": D.IMP, "∨": D.OR, "∧": D.AND, "↔": D.IFF, "=": D.EQ, "≠": D.NEQ, "∀": D.FORALL,
    "∃": D.EXISTS, "0": D.ZERO, "1": D.ONE, "class": D.CLASS, "+": D.PLUS, "∖": D.SETMINUS,
    "≡ₚ": D.EQUIV, "ℕ": D.NAT, "†": D.DAGGER,
}


def recognise(t: Term):
    """Return ``(name, type_args)`` when ``t`` is exactly a defined notation."""
    if t.lb or t.fv:
        return None
    if t.skel in _RECOGNISED:
        return _RECOGNISED[t.skel]
    found = None
    for name, args in _candidates(t.type):
        if name == "†" and not isinstance(t, (App, Abs)) and t.type != T:
            continue
        try:
            inst = _BUILD[name](*args)
        except Exception:
            continue
        if inst.skel == t.skel:
            found = (name, args)
            break
    if found and found[0] == "†" and t.type == T:
        found = ("⊥", ())
    _RECOGNISED[t.skel] = found
    return found


# ---------------------------------------------------------------- rendering

_LOOSE: dict[int, frozenset] = {}


def _loose(t: Term) -> frozenset:
    if t.lb == 0:
        return frozenset()
    r = _LOOSE.get(t.skel)
    if r is None:
        if isinstance(t, _Bound):
            r = frozenset((t.index,))
        elif isinstance(t, App):
            r = _loose(t.fun) | _loose(t.arg)
        else:
            r = frozenset(i - 1 for i in _loose(t.scope) if i > 0)
        _LOOSE[t.skel] = r
    return r


class _Printer:
    def __init__(self, opts: PrintOptions):
        self.o = opts

    # symbols -----------------------------------------------------
    def sym(self, s: str) -> str:
        return _ASCII.get(s, s) if self.o.ascii else s

    def sub(self, name: str, args) -> str:
        if self.o.decorations in ("none",) or not args:
            return ""
        parts = []
        for a in args:
            if isinstance(a, tuple):
                inner = ",".join(format_type(x, "minimal", self.o.ascii) for x in a)
                parts.append("{" + inner + "}" if (len(a) > 1 or isinstance(a[0], Fun)) else inner)
            else:
                parts.append(_deco(a, self.o.ascii))
        return "_" + parts[0]

    def var(self, name: str, ty: Type, binder: bool, free: bool) -> str:
        d = self.o.decorations
        if d == "full" or (d == "binders" and (binder or free)):
            return f"{name}^{_deco(ty, self.o.ascii)}"
        return name

    # layout ------------------------------------------------------
    def cat(self, a: str, b: str) -> str:
        if not self.o.compact or self.o.ascii:
            return f"{a} {b}"
        if a and b and a[-1].isalnum() and b[0].isalnum():
            i = len(a)
            while i > 0 and a[i - 1].isalnum():
                i -= 1
            j = 0
            while j < len(b) and b[j].isalnum():
                j += 1
            left, right = a[i:], b[:j]
            if len(left) > 1 or len(right) > 1 or (left.isdigit() and right.isdigit()):
                return f"{a} {b}"
        return a + b

    def op(self, a: str, o: str, b: str) -> str:
        if self.o.compact and not self.o.ascii:
            return a + o + b
        return f"{a} {o} {b}"

    def paren(self, s: str) -> str:
        return "(" + s + ")"

    def wrap(self, res, ok: bool) -> str:
        text, level = res
        if level == ATOM:
            return text
        if self.o.parens == "full" or not ok:
            return self.paren(text)
        return text

    # main --------------------------------------------------------
    def render(self, t: Term, env: list, tail: bool):
        if isinstance(t, _Bound):
            name, ty = env[-1 - t.index]
            return self.var(name, ty, False, False), ATOM
        if isinstance(t, Var):
            return self.var(t.var.name, t.type, False, True), ATOM
        if isinstance(t, Con):
            return self.const(t.const), ATOM
        if self.o.fold:
            rec = recognise(t)
            if rec is not None:
                return self.named(*rec), ATOM
        if isinstance(t, Abs):
            return self.binder(self.sym("λ"), t, env, tail), BINDER
        return self.app(t, env, tail)

    def const(self, c) -> str:
        if isinstance(c, Include):
            return self.paren(self.sym("⊆") + self.sub("⊆", [c.sigma]))
        name = "ι" if isinstance(c, Iota) else "ε"
        return self.sym(name) + self.sub(name, [c.sigma])

    def named(self, name: str, args) -> str:
        if name in ("⊤", "⊥", "α", "¬", "□", "◇", "@", "ℕ", "†", "0", "1", "class", "∀", "∃"):
            return self.sym(name) + self.sub(name, args)
        if name == "≡ₚ":
            return "equiv" + self.sub(name, args)
        return self.paren(self.sym(name) + self.sub(name, args))

    def choose_name(self, t: Abs, env: list) -> str:
        avoid = {v.name for v in t.scope.fv}
        for i in _loose(t.scope):
            if i >= 1 and i <= len(env):
                avoid.add(env[-i][0])
        v = t.hint
        while v.name in avoid:
            v = v.prime()
        return v.name

    def binder(self, symbol: str, t: Abs, env: list, tail: bool, bound_prefix: str = "") -> str:
        name = self.choose_name(t, env)
        env.append((name, t.hint.type))
        try:
            body = self.render(t.scope, env, True)
        finally:
            env.pop()
        head = symbol + (" " if symbol[-1].isascii() and symbol[-1].isalnum() else "")
        head += self.var(name, t.hint.type, True, False) + "."
        sep = "" if (body[1] == ATOM or self.o.compact) else " "
        return head + sep + self.wrap(body, True)

    def app(self, t: Term, env: list, tail: bool):
        head, args = spine(t)
        # longest recognised prefix of the spine
        k0 = 0
        hname = None
        if self.o.fold:
            for k in range(len(args), -1, -1):
                pre = head
                for a in args[:k]:
                    pre = App._make(pre, a)
                rec = recognise(pre) if k < len(args) else None
                if rec is not None:
                    hname, k0 = rec, k
                    break
        rest = args[k0:]
        if hname is not None:
            name, targs = hname
            special = self.special(name, targs, rest, env, tail)
            if special is not None:
                return special
            base = (self.named(name, targs), ATOM)
        else:
            base = None
        if isinstance(head, Con) and isinstance(head.const, Include) and len(args) == 2:
            return self.infix("⊆", [head.const.sigma], args[0], args[1], env, tail)
        if isinstance(head, Con) and isinstance(head.const, (Iota, Epsilon)) and len(args) == 1 and isinstance(args[0], Abs):
            sym = "ι" if isinstance(head.const, Iota) else "ε"
            return self.binder(self.sym(sym), args[0], env, tail), BINDER
        if base is None:
            base = self.render(head, env, False)
            rest = args
        if self.o.elide_apps and self.o.decorations == "full":
            flat = self.flat_chain(t, env)
            if flat is not None:
                return flat
        text = self.wrap(base, base[1] >= APP)
        for a in rest:
            r = self.render(a, env, False)
            text = self.cat(text, self.wrap(r, r[1] == ATOM))
        return text, APP

    def special(self, name, targs, rest, env, tail):
        n = len(rest)
        if name in _INFIX and n == 2:
            return self.infix(name, targs, rest[0], rest[1], env, tail)
        if name == "≠" and n == 2:
            return self.infix(name, targs, rest[0], rest[1], env, tail)
        if name in ("¬", "□", "◇") and n == 1:
            r = self.render(rest[0], env, tail)
            ok = r[1] >= UNARY or (r[1] == BINDER and tail and not isinstance(rest[0], Abs))
            s = self.sym(name)
            body = self.wrap(r, ok)
            if s[-1].isascii() and s[-1].isalnum():
                s += " "
            return s + body, UNARY
        if name in ("∀", "∃", "1") and n == 1 and isinstance(rest[0], Abs):
            sym = {"∀": "∀", "∃": "∃", "1": "∃!"}[name]
            return self.binder(self.sym(sym), rest[0], env, tail), BINDER
        if name == "∀" and n == 1:
            inner, iargs = spine(rest[0])
            rec = recognise(inner) if len(iargs) == 2 else None
            if rec is not None and rec[0] == "≡ₚ" and len(rec[1][0]) == 1:
                return self.infix("≡", rec[1], iargs[0], iargs[1], env, tail)
        return None

    def infix(self, name, targs, a, b, env, tail):
        level, assoc = _INFIX[name]
        la = self.render(a, env, False)
        rb = self.render(b, env, tail)
        left_ok = la[1] > level
        if assoc == "right":
            right_ok = rb[1] > level or (rb[1] == level and self._same_op(b, name)) or (rb[1] == BINDER and tail and not isinstance(b, Abs))
        else:
            right_ok = rb[1] > level or (rb[1] == BINDER and tail and not isinstance(b, Abs))
        sub = "" if name == "≡" else self.sub(name, targs)
        text = self.op(self.wrap(la, left_ok), self.sym(name) + sub, self.wrap(rb, right_ok))
        return text, level

    def _same_op(self, t: Term, name: str) -> bool:
        head, args = spine(t)
        if len(args) < 2:
            return False
        pre = head
        for a in args[:-2]:
            pre = App._make(pre, a)
        rec = recognise(pre)
        return rec is not None and rec[0] == name

    # type-directed elision of application parentheses ---------------
    def flat_chain(self, t: Term, env):
        leaves = []

        def flatten(u):
            if isinstance(u, App) and not self._is_special(u):
                flatten(u.fun)
                flatten(u.arg)
            else:
                leaves.append(u)

        flatten(t)
        if len(leaves) < 3:
            return None
        types = [u.type for u in leaves]
        if _count_bracketings(types) != 1:
            return None
        parts = []
        for u in leaves:
            r = self.render(u, env, False)
            parts.append(self.wrap(r, r[1] == ATOM))
        text = parts[0]
        for p in parts[1:]:
            text = self.cat(text, p)
        return text, APP

    def _is_special(self, u: Term) -> bool:
        if not self.o.fold:
            return False
        if recognise(u) is not None:
            return True
        head, args = spine(u)
        for k in range(len(args) - 1, -1, -1):
            pre = head
            for a in args[:k]:
                pre = App._make(pre, a)
            rec = recognise(pre)
            if rec is not None:
                return rec[0] in _INFIX or rec[0] in ("≠", "¬", "□", "◇", "∀", "∃", "1")
        return isinstance(head, Con) and isinstance(head.const, (Iota, Epsilon))


def _count_bracketings(types: list) -> int:
    """Number of binary bracketings of ``types`` that type-check as applications."""
    n = len(types)
    table = [[dict() for _ in range(n + 1)] for _ in range(n + 1)]
    for i, ty in enumerate(types):
        table[i][i + 1] = {ty: 1}
    for width in range(2, n + 1):
        for i in range(0, n - width + 1):
            j = i + width
            cell: dict = {}
            for k in range(i + 1, j):
                for ft, fc in table[i][k].items():
                    if not isinstance(ft, Fun):
                        continue
                    ac = table[k][j].get(ft.dom)
                    if ac:
                        cell[ft.cod] = cell.get(ft.cod, 0) + fc * ac
            table[i][j] = cell
    return sum(table[0][n].values())


def print_term(t: Term, opts: PrintOptions | None = None, **kw) -> str:
    opts = replace(opts or PrintOptions(), **kw)
    if opts.decorations == "auto":
        from .notation import elaborate, parse

        for level in ("none", "binders", "full"):
            text = print_term(t, replace(opts, decorations=level))
            try:
                back = elaborate(parse(text), guard="eps")
            except Exception:
                continue
            if back == t:
                return text
        return print_term(t, replace(opts, decorations="full"))
    text, _ = _Printer(opts).render(t, [], True)
    if opts.parens == "full" and not (text.startswith("(") and _balanced_outer(text)):
        if _Printer(opts).render(t, [], True)[1] != ATOM:
            text = "(" + text + ")"
    return text


def _balanced_outer(text: str) -> bool:
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0 and i != len(text) - 1:
                return False
    return True
