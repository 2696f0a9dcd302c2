"""Exception hierarchy. Every error carries a stable ``code`` string."""


class LFError(Exception):
    code = "LFError"

    def __init__(self, message="", **info):
        super().__init__(message or self.code)
        self.info = info


class IllTypedApplication(LFError):
    code = "IllTypedApplication"


class TypeMismatch(LFError):
    code = "TypeMismatch"


class FuelExhausted(LFError):
    code = "FuelExhausted"


# notation
class NotationSyntaxError(LFError):
    code = "SyntaxError"

    def __init__(self, message="", span=None, **info):
        if span is not None:
            message = f"{message} at {span[0]}:{span[1]}"
        super().__init__(message, **info)
        self.span = span


class UnknownNotation(LFError):
    code = "UnknownNotation"


class AmbiguousTypes(LFError):
    code = "AmbiguousTypes"


class NoCompletion(LFError):
    code = "NoCompletion"


class GuardViolation(LFError):
    code = "GuardViolation"


class ArityMismatch(LFError):
    code = "ArityMismatch"


# kernel
class RuleError(LFError):
    """A rule application whose premises do not have the required shape."""

    code = "RuleError"


class ShapeMismatch(RuleError):
    code = "ShapeMismatch"


class ContextMismatch(RuleError):
    code = "ContextMismatch"


class NotBetaEquivalent(RuleError):
    code = "NotBetaEquivalent"


class FreshnessViolation(RuleError):
    code = "FreshnessViolation"


class NonEmptyContext(RuleError):
    code = "NonEmptyContext"


class TypeRestriction(RuleError):
    code = "TypeRestriction"


class RuleDisabled(LFError):
    code = "RuleDisabled"


class UndischargedAssumption(LFError):
    code = "UndischargedAssumption"


class NoExtension(LFError):
    code = "NoExtension"


class UnknownRule(LFError):
    code = "UnknownRule"


class UnknownTheorem(LFError):
    code = "UnknownTheorem"


class UnknownTheory(LFError):
    code = "UnknownTheory"
