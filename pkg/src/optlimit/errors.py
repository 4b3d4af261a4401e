"""Exception hierarchy.

Every error raised by the library derives from :class:`OptlimitError`.  The CLI
maps the two families below to distinct exit codes.
"""


class OptlimitError(Exception):
    """Base class."""


class InputError(OptlimitError):
    """Malformed or inconsistent input (exit code 2)."""


class DiagramSyntaxError(InputError):
    pass


class DiagramInconsistencyError(InputError):
    pass


class DiagramValidationError(InputError):
    pass


class PatternMismatchError(InputError):
    """A move site does not match the local template of the move."""


class ColoringError(InputError):
    pass


class NumericalError(OptlimitError):
    """Numerical failure: degenerate values, unverified solutions (exit code 3)."""


class DegenerateError(NumericalError):
    pass


class UnverifiedSolutionError(NumericalError):
    pass


class EssentialnessLostError(NumericalError):
    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class RetryBudgetExhausted(NumericalError):
    pass


class CrossCheckError(NumericalError):
    pass
