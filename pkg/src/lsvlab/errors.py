"""Exception hierarchy. Every error knows the CLI exit code it maps to."""


class LabError(Exception):
    exit_code: int = 1


class PreconditionError(LabError, ValueError):
    """An operation was called outside its documented domain."""
    exit_code = 3


class NotAMatchingError(PreconditionError):
    pass


class DimensionMismatchError(PreconditionError):
    pass


class BudgetExceededError(LabError):
    """An exact engine would exceed its configured range or enumeration budget."""
    exit_code = 3

    def __init__(self, what: str, needed: int, budget: int) -> None:
        super().__init__(f"{what}: needs {needed}, budget is {budget}")
        self.needed = needed
        self.budget = budget


class ConvergenceError(LabError):
    exit_code = 3

    def __init__(self, message: str, residual: float) -> None:
        super().__init__(f"{message} (achieved residual {residual:.3e})")
        self.residual = residual


class SchemaError(LabError):
    exit_code = 3


class UnknownSuiteError(LabError):
    exit_code = 3


class InvariantFailure(LabError):
    exit_code = 2
