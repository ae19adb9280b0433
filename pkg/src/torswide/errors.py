"""Exception types shared across the package."""


class TorswideError(Exception):
    """Base class for all package errors."""


class InvalidInput(TorswideError, ValueError):
    """Malformed or inconsistent input (bad shapes, unknown labels, ...)."""


class DimensionMismatch(InvalidInput):
    pass


class BudgetExceeded(TorswideError):
    """A bounded enumeration would exceed its budget.

    Raised instead of returning a truncated answer.
    """

    def __init__(self, what, needed, budget):
        self.what = what
        self.needed = needed
        self.budget = budget
        super().__init__(f"{what}: needs {needed} > budget {budget}")


class InvariantViolation(TorswideError):
    """A checked mathematical identity failed; carries the counterexample."""

    def __init__(self, message, counterexample=None):
        self.counterexample = counterexample
        super().__init__(message)


class SymbolicOnly(TorswideError):
    """An infinite-dimensional symbol was asked for a matrix realization."""
