"""Exception types and budget configuration shared across the package."""

import os

BUDGET_ENV = "QUIVERFIN_BUDGET"


class QuiverError(ValueError):
    """Malformed quiver, dimension vector or embedding."""


class DimensionLimitError(OverflowError):
    """A dimension entry exceeds the configured bound."""


class SearchBudgetExceeded(RuntimeError):
    """A combinatorial search visited more states than allowed."""

    def __init__(self, what, budget):
        super().__init__(f"{what}: budget of {budget} states exceeded")
        self.budget = budget


class CrossCheckError(AssertionError):
    """The two decision paths disagreed on a setting."""


def resolve_budget(budget, default):
    """Explicit argument, else $QUIVERFIN_BUDGET, else `default`."""
    if budget is not None:
        return int(budget)
    env = os.environ.get(BUDGET_ENV)
    if env:
        return int(env)
    return default


class Counter:
    """Mutable tick counter that raises once `budget` ticks have been spent."""

    __slots__ = ("what", "budget", "used")

    def __init__(self, what, budget):
        self.what = what
        self.budget = budget
        self.used = 0

    def tick(self, n=1):
        self.used += n
        if self.used > self.budget:
            raise SearchBudgetExceeded(self.what, self.budget)
