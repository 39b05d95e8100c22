"""Exception base classes shared by every enflo sub-package.

Each sub-package derives its own errors from EnfloError and defines them
next to the code that raises them.
"""


class EnfloError(Exception):
    """Base class for all enflo errors."""

    pass


class BudgetExceededError(EnfloError):
    """An exhaustive computation would exceed its configured budget."""

    def __init__(self, what: str, requested: int, budget: int):
        self.what = what
        self.requested = requested
        self.budget = budget
        super().__init__(
            f"{what}: {requested} exceeds the budget of {budget}. "
            "Use sampled mode or raise the budget."
        )


def check_budget(what: str, requested: int, budget: int) -> None:
    """Raise BudgetExceededError if requested is above budget."""
    if requested > budget:
        raise BudgetExceededError(what, requested, budget)
