"""A proof kernel for the logic LF of fine-grained propositions."""
from .errors import LFError
from .kernel import (
    Derivation,
    RuleId,
    Sequent,
    Theory,
    TheoremReport,
    check_theorem,
    variant_rule,
)
from .library import catalog, derived_rule, library_theorem
from .notation import elaborate, expand_all, instantiate_def, parse, parse_type, read
from .printer import format_type, print_term
from .script import check_file, check_script, parse_script
from .terms import Term, Type, Variable
from .theories import builtin_theories, get_theory

__version__ = "0.1.0"

__all__ = [
    "Derivation",
    "LFError",
    "RuleId",
    "Sequent",
    "Term",
    "TheoremReport",
    "Theory",
    "Type",
    "Variable",
    "builtin_theories",
    "catalog",
    "check_file",
    "check_script",
    "check_theorem",
    "derived_rule",
    "elaborate",
    "expand_all",
    "format_type",
    "get_theory",
    "instantiate_def",
    "library_theorem",
    "parse",
    "parse_script",
    "parse_type",
    "print_term",
    "read",
    "variant_rule",
]
