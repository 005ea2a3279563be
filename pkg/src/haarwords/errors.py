"""Exception types shared across the package."""


class BudgetError(RuntimeError):
    """Raised when a computation would exceed its enumeration budget.

    ``required`` carries the number of terms (or the size parameter) that
    tripped the guard so callers can report it.
    """

    def __init__(self, message: str, required: int | None = None):
        super().__init__(message)
        self.required = required
