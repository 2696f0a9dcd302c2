"""Reading and writing terms in the concrete notation."""
from __future__ import annotations

from . import definitions as D
from .elaborate import Defaults, elaborate as _elaborate
from .parser import SurfaceTerm, parse as _parse, parse_type
from .printer import PrintOptions, format_type, print_term
from .terms import Con, Iota, Term, Type, replace_const

__all__ = [
    "Defaults",
    "PrintOptions",
    "SurfaceTerm",
    "elaborate",
    "expand_all",
    "format_type",
    "instantiate_def",
    "parse",
    "parse_type",
    "print_term",
    "read",
]


def parse(text: str) -> SurfaceTerm:
    return _parse(text)


def elaborate(
    surface: SurfaceTerm | str,
    guard: str = "core",
    table: D.DefinitionTable | None = None,
    defaults: Defaults | None = None,
    expected: Type | None = None,
    context: dict | None = None,
) -> Term:
    if isinstance(surface, str):
        surface = _parse(surface)
    return _elaborate(surface, guard=guard, table=table, defaults=defaults, expected=expected, context=context)


def read(text: str, guard: str = "core", expected: Type | None = None, context: dict | None = None) -> Term:
    """Parse and elaborate in one step."""
    return _elaborate(_parse(text), guard=guard, expected=expected, context=context)


def instantiate_def(name: str, type_args=(), guard: str = "core", table: D.DefinitionTable | None = None) -> Term:
    return (table or D.DEFAULT_TABLE).instantiate(name, type_args, guard)


def expand_all(term: Term, table: D.DefinitionTable | None = None) -> Term:
    """The core term with every abbreviation unfolded.

    Defined notation is already stored as its definiens, so this is the
    identity unless the table has the ε reductions switched on, in which
    case each ι_σ is replaced by its ε-definition.
    """
    table = table or D.DEFAULT_TABLE
    if not table.reductions:
        return term

    def swap(c):
        return D.IOTA_EPS(c.sigma) if isinstance(c, Iota) else None

    return replace_const(term, swap)
