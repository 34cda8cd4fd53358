"""Exception types shared across the package."""


class TagError(Exception):
    """Base class for every error raised by regform."""


class LabelMismatch(TagError):
    pass


class IllegalSite(TagError):
    pass


class NotAuxiliaryTree(TagError):
    pass


class NotInitialTree(TagError):
    pass


class InvalidGrammar(TagError):
    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations[:5])
        super().__init__(f"invalid grammar: {lines}")


class UnmappedLabel(TagError):
    pass


class BudgetExceeded(TagError):
    """The work limit was hit before the closure reached a fixpoint.

    ``partial`` holds whatever had been derived so far; it is a subset of the
    true bounded result, never a substitute for it.
    """

    def __init__(self, message, partial=()):
        super().__init__(message)
        self.partial = list(partial)


class NotRegularForm(TagError):
    pass


class StateExplosion(TagError):
    pass


class UnknownSymbol(TagError):
    pass


class UnknownToken(TagError):
    pass


class NotAWalk(TagError):
    pass


class InvalidCfg(TagError):
    pass


class NotLexicalizable(TagError):
    pass


class NonterminationGuard(TagError):
    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class ParseError(TagError):
    def __init__(self, message, line=0, column=0):
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}")
