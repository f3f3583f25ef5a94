"""Exception hierarchy.

Each class carries the CLI exit code it maps to.
"""


class ImplicitizationError(Exception):
    exit_code = 4
    hint = None

    def __init__(self, message, hint=None):
        super().__init__(message)
        if hint is not None:
            self.hint = hint


class InputError(ImplicitizationError, ValueError):
    exit_code = 2


class ParseError(InputError):
    """Polynomial or document syntax error at a known position."""

    def __init__(self, message, line=1, column=1, text=None):
        self.line = line
        self.column = column
        self.text = text
        super().__init__(f"{message} (line {line}, column {column})")


class VariableMismatchError(ImplicitizationError, ValueError):
    pass


class NotDivisibleError(ImplicitizationError, ArithmeticError):
    pass


class DegeneracyError(ImplicitizationError):
    """The graded piece is not generically exact, or a minor vanishes."""

    exit_code = 3


class RankDeficiencyError(DegeneracyError):
    pass


class NonAcyclicError(DegeneracyError):
    pass


class InconsistencyError(ImplicitizationError):
    """A check that holds in exact arithmetic failed: a bug or corrupt input."""

    exit_code = 4
