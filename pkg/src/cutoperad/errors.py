"""Exception types shared across the package."""


class CutOperadError(Exception):
    """Base class for errors raised by this package."""


class SignatureError(CutOperadError, ValueError):
    """Malformed signature, unknown generator or arity violation."""


class StructureError(CutOperadError, ValueError):
    """A tree, numbering or geometric form is not well formed."""


class ParseError(CutOperadError, ValueError):
    """Syntax error in an S-expression or JSON document.

    ``position`` is the character offset where parsing failed (or None).
    """

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at offset {position})"
        super().__init__(message)
        self.position = position


class BudgetExceeded(CutOperadError, RuntimeError):
    """A configured resource budget ran out before the computation finished."""


class AmbiguousRootError(AssertionError):
    """Two admissible root decompositions were found in the same direction.

    This is believed impossible; ``counterexample`` holds a JSON-serializable
    description of the offending subdivision so it can be reported.
    """

    def __init__(self, message, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample
