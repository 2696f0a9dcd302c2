"""Surface syntax: tokens, a recursive-descent parser and the surface tree.

Letter runs that are not keywords split into single-letter variables, so
``Xz`` is the application of ``X`` to ``z``.  Types attach with ``^`` (on
variables) or ``_`` (on indexed notation): ``x^e``, ``X^{et}``, ``=_e``,
``∖_{e,e}``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NotationSyntaxError
from .terms import E, T, Fun, Type

# ---------------------------------------------------------------- types


class _TypeReader:
    def __init__(self, text: str, pos: int = 0):
        self.s, self.i = text, pos

    def error(self, msg):
        raise NotationSyntaxError(msg, span=(self.i, self.i + 1))

    def peek(self):
        return self.s[self.i] if self.i < len(self.s) else ""

    def atom(self) -> Type:
        c = self.peek()
        if c == "e":
            self.i += 1
            return E
        if c == "t":
            self.i += 1
            return T
        close = {"⟨": "⟩", "<": ">", "(": ")"}.get(c)
        if close:
            self.i += 1
            ty = self.seq()
            if self.peek() != close:
                self.error(f"expected {close!r} in type")
            self.i += 1
            return ty
        self.error(f"unexpected {c!r} in type" if c else "unexpected end of type")

    def seq(self) -> Type:
        parts = [self.atom()]
        while self.peek() in ("e", "t", "⟨", "<", "("):
            parts.append(self.atom())
        ty = parts[-1]
        for p in reversed(parts[:-1]):
            ty = Fun(p, ty)
        return ty

    def decoration(self):
        """A single base letter, or a braced/bracketed type, or a braced vector."""
        c = self.peek()
        if c in ("e", "t"):
            self.i += 1
            return E if c == "e" else T
        if c == "{":
            self.i += 1
            items = [self.seq()]
            while self.peek() == ",":
                self.i += 1
                items.append(self.seq())
            if self.peek() != "}":
                self.error("expected '}' in type")
            self.i += 1
            return items[0] if len(items) == 1 else tuple(items)
        if c in ("⟨", "<"):
            return self.atom()
        self.error("expected a type")


def parse_type(text: str) -> Type:
    """Parse ``ttt``, ``⟨et⟩t``, ``<et>t`` and friends (right-associated)."""
    r = _TypeReader(text.replace(" ", ""))
    ty = r.seq()
    if r.i != len(r.s):
        r.error("trailing characters in type")
    return ty


# ---------------------------------------------------------------- tokens

BINDERS = {"λ": "λ", "\\": "λ", "lam": "λ", "∀": "∀", "forall": "∀", "∃": "∃", "exists": "∃",
           "∃!": "∃!", "exists1": "∃!", "ι": "ι", "iota": "ι", "ε": "ε", "eps": "ε"}
INFIX = {"↔": "↔", "<->": "↔", "iff": "↔", "→": "→", "->": "→", "implies": "→", "∨": "∨",
         "\\/": "∨", "or": "∨", "∧": "∧", "/\\": "∧", "&": "∧", "and": "∧", "=": "=", "≠": "≠",
         "!=": "≠", "⊆": "⊆", "<=": "⊆", "sub": "⊆", "≡": "≡", "==": "≡", "+": "+", "∖": "∖",
         "setminus": "∖"}
UNARY = {"¬": "¬", "~": "¬", "not": "¬", "□": "□", "box": "□", "◇": "◇", "dia": "◇"}
CONSTS = {"⊤": "⊤", "top": "⊤", "⊥": "⊥", "bot": "⊥", "ℕ": "ℕ", "Nat": "ℕ", "†": "†",
          "dagger": "†", "@": "@", "α": "α", "alpha": "α", "class": "class", "equiv": "equiv"}

_SYMBOLS = sorted(
    [k for k in list(BINDERS) + list(INFIX) + list(UNARY) + list(CONSTS) if not (k.isascii() and k.isalpha())]
    + ["(", ")", "{", "}", ".", ",", ":", "∈"],
    key=len, reverse=True,
)
_WORDS = {k for k in list(BINDERS) + list(INFIX) + list(UNARY) + list(CONSTS) if k.isascii() and k.isalpha()} | {"in"}
_PRIMES = ("'", "′")


@dataclass
class Token:
    kind: str  # VAR NUM BINDER INFIX UNARY CONST PUNCT EOF
    value: object
    span: tuple
    sub: object = None  # type subscript on notation


def tokenize(text: str) -> list[Token]:
    toks: list[Token] = []
    i, n = 0, len(text)

    def subscript(j):
        if j < n and text[j] == "_":
            r = _TypeReader(text, j + 1)
            ty = r.decoration()
            return ty, r.i
        return None, j

    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            sub, k = subscript(j)
            toks.append(Token("NUM", int(text[i:j]), (i, k), sub))
            i = k
            continue
        if c.isascii() and c.isalpha():
            j = i
            while j < n and text[j].isascii() and text[j].isalpha():
                j += 1
            word = text[i:j]
            if word in _WORDS:
                kind, val = _classify(word)
                sub, k = subscript(j)
                toks.append(Token(kind, val, (i, k), sub))
                i = k
                continue
            for pos in range(i, j):
                letter = text[pos]
                start = pos
                end = pos + 1
                primes = 0
                deco = None
                if pos == j - 1:
                    while end < n and text[end] in _PRIMES:
                        primes += 1
                        end += 1
                    if end < n and text[end] == "^":
                        r = _TypeReader(text, end + 1)
                        deco = r.decoration()
                        if isinstance(deco, tuple):
                            raise NotationSyntaxError("a variable takes a single type", span=(end, r.i))
                        end = r.i
                toks.append(Token("VAR", (letter, primes, deco), (start, end)))
            i = toks[-1].span[1]
            continue
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                kind, val = _classify(sym)
                j = i + len(sym)
                sub = None
                if kind in ("BINDER", "INFIX", "CONST"):
                    sub, j = subscript(j)
                toks.append(Token(kind, val, (i, j), sub))
                i = j
                break
        else:
            raise NotationSyntaxError(f"unexpected character {c!r}", span=(i, i + 1))
    toks.append(Token("EOF", None, (n, n)))
    return toks


def _classify(word: str):
    if word in BINDERS:
        return "BINDER", BINDERS[word]
    if word in INFIX:
        return "INFIX", INFIX[word]
    if word in UNARY:
        return "UNARY", UNARY[word]
    if word in CONSTS:
        return "CONST", CONSTS[word]
    if word in ("∈", "in"):
        return "PUNCT", "∈"
    return "PUNCT", word


# ---------------------------------------------------------------- surface tree

@dataclass
class SurfaceTerm:
    span: tuple = field(default=(0, 0), kw_only=True)


@dataclass
class SVar(SurfaceTerm):
    letter: str
    primes: int = 0
    deco: Type | None = None

    @property
    def name(self):
        return self.letter + "'" * self.primes


@dataclass
class SConst(SurfaceTerm):
    """Indexed notation used as a term: ``⊤``, ``∀_e``, ``(→)``, ``ι``."""

    name: str
    sub: object = None


@dataclass
class SNum(SurfaceTerm):
    value: int
    sub: object = None


@dataclass
class SApp(SurfaceTerm):
    """A juxtaposition chain; its bracketing is settled during elaboration."""

    items: list


@dataclass
class SInfix(SurfaceTerm):
    op: str
    left: SurfaceTerm
    right: SurfaceTerm
    sub: object = None


@dataclass
class SUnary(SurfaceTerm):
    op: str
    operand: SurfaceTerm


@dataclass
class SBinder(SurfaceTerm):
    kind: str
    groups: list  # [(list[SVar], bound SurfaceTerm | None)]
    body: SurfaceTerm
    sub: object = None


@dataclass
class SClass(SurfaceTerm):
    var: SVar
    body: SurfaceTerm


_LEVELS = [("↔",), ("→",), ("∨",), ("∧",), ("=", "≠", "⊆", "≡"), ("+", "∖")]
_RIGHT = {"→", "∨", "∧", "+"}


class Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    # helpers -----------------------------------------------------
    def peek(self, k: int = 0) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value) -> Token:
        t = self.peek()
        if t.kind != "PUNCT" or t.value != value:
            self.error(f"expected {value!r}", t)
        return self.next()

    def error(self, msg, tok: Token | None = None):
        tok = tok or self.peek()
        found = "end of input" if tok.kind == "EOF" else repr(self.text[tok.span[0]:tok.span[1]])
        raise NotationSyntaxError(f"{msg}, found {found}", span=tok.span)

    # grammar -----------------------------------------------------
    def parse(self) -> SurfaceTerm:
        if self.peek().kind == "EOF":
            self.error("empty term")
        op = self.peek()
        if op.kind in ("INFIX", "UNARY") and self.peek(1).kind == "EOF":
            # a bare operator on its own reads as its section, like (⊆_e)
            self.next()
            return SConst(op.value, op.sub, span=op.span)
        t = self.term()
        if self.peek().kind != "EOF":
            self.error("unexpected token")
        return t

    def term(self) -> SurfaceTerm:
        if self.at_binder():
            return self.binder()
        return self.level(0)

    def operand(self, level: int) -> SurfaceTerm:
        if self.at_binder():
            return self.binder()
        return self.level(level)

    def level(self, k: int) -> SurfaceTerm:
        if k == len(_LEVELS):
            return self.unary()
        start = self.peek().span[0]
        left = self.level(k + 1)
        tok = self.peek()
        if tok.kind == "INFIX" and tok.value in _LEVELS[k]:
            self.next()
            op = tok.value
            if op in _RIGHT:
                right = self.operand(k)
            else:
                right = self.operand(k + 1)
                nxt = self.peek()
                if nxt.kind == "INFIX" and nxt.value in _LEVELS[k]:
                    self.error(f"{op!r} does not associate; add parentheses", nxt)
            return SInfix(op, left, right, tok.sub, span=(start, self.prev_end()))
        return left

    def prev_end(self) -> int:
        return self.toks[self.i - 1].span[1]

    def unary(self) -> SurfaceTerm:
        tok = self.peek()
        if tok.kind == "UNARY":
            self.next()
            if self.at_binder():
                operand = self.binder()
            else:
                operand = self.unary()
            return SUnary(tok.value, operand, span=(tok.span[0], self.prev_end()))
        return self.application()

    def application(self) -> SurfaceTerm:
        start = self.peek().span[0]
        items = [self.atom()]
        while self.at_atom_start():
            items.append(self.atom())
        if len(items) == 1:
            return items[0]
        return SApp(items, span=(start, self.prev_end()))

    def at_atom_start(self) -> bool:
        t = self.peek()
        if t.kind in ("VAR", "NUM", "CONST"):
            return True
        if t.kind == "PUNCT" and t.value in ("(", "{"):
            return True
        if t.kind == "BINDER" and not self.at_binder():
            return True
        return False

    def atom(self) -> SurfaceTerm:
        t = self.peek()
        if t.kind == "VAR":
            self.next()
            letter, primes, deco = t.value
            return SVar(letter, primes, deco, span=t.span)
        if t.kind == "NUM":
            self.next()
            return SNum(t.value, t.sub, span=t.span)
        if t.kind == "CONST":
            self.next()
            return SConst(t.value, t.sub, span=t.span)
        if t.kind == "BINDER" and not self.at_binder():
            self.next()
            return SConst(t.value, t.sub, span=t.span)
        if t.kind == "PUNCT" and t.value == "(":
            self.next()
            inner = self.peek()
            if inner.kind in ("INFIX", "UNARY") and self.peek(1).kind == "PUNCT" and self.peek(1).value == ")":
                self.next()
                end = self.next()
                return SConst(inner.value, inner.sub, span=(t.span[0], end.span[1]))
            body = self.term()
            end = self.expect(")")
            body.span = (t.span[0], end.span[1])
            return body
        if t.kind == "PUNCT" and t.value == "{":
            self.next()
            v = self.peek()
            if v.kind != "VAR":
                self.error("expected a variable in class abstract", v)
            self.next()
            self.expect(":")
            body = self.term()
            end = self.expect("}")
            letter, primes, deco = v.value
            return SClass(SVar(letter, primes, deco, span=v.span), body, span=(t.span[0], end.span[1]))
        self.error("expected a term")

    def at_binder(self) -> bool:
        """A binder keyword followed by variables and a dot (bounds allowed)."""
        t = self.peek()
        if t.kind != "BINDER":
            return False
        j = self.i + 1
        if self.toks[j].kind != "VAR":
            return False
        depth = 0
        bounded = False
        while j < len(self.toks):
            tok = self.toks[j]
            if tok.kind == "EOF":
                return False
            if tok.kind == "PUNCT" and tok.value == "(":
                depth += 1
            elif tok.kind == "PUNCT" and tok.value == ")":
                if depth == 0:
                    return False
                depth -= 1
            elif tok.kind == "PUNCT" and tok.value == "." and depth == 0:
                return True
            elif tok.kind == "PUNCT" and tok.value == "∈":
                bounded = True
            elif not bounded and tok.kind != "VAR":
                return False
            j += 1
        return False

    def binder(self) -> SurfaceTerm:
        head = self.next()
        groups = []
        current: list = []
        while True:
            t = self.peek()
            if t.kind == "VAR":
                self.next()
                letter, primes, deco = t.value
                current.append(SVar(letter, primes, deco, span=t.span))
            elif t.kind == "PUNCT" and t.value == "∈":
                if head.value not in ("∀", "∃") or not current:
                    self.error("bounded quantification needs ∀ or ∃", t)
                self.next()
                bound = self.level(len(_LEVELS))
                groups.append((current, bound))
                current = []
            elif t.kind == "PUNCT" and t.value == ".":
                self.next()
                break
            else:
                self.error("expected a variable or '.'", t)
        if current:
            groups.append((current, None))
        if not groups:
            self.error("binder without variables", head)
        body = self.term()
        return SBinder(head.value, groups, body, head.sub, span=(head.span[0], self.prev_end()))


def parse(text: str) -> SurfaceTerm:
    """Parse concrete notation into a surface tree (no typing yet)."""
    return Parser(text).parse()
