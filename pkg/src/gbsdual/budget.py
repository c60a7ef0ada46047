"""Work budget shared by the exponential-time routines.

``GBS_WORK_BUDGET`` (an integer) caps the number of memo nodes or subsets a
single call may visit. Exceeding it raises :class:`BudgetExceededError`
instead of running for hours.
"""
from __future__ import annotations

import os

from .errors import BudgetExceededError

DEFAULT_BUDGET = 50_000_000


def work_budget(override=None):
    if override is not None:
        return int(override)
    raw = os.environ.get("GBS_WORK_BUDGET")
    if raw is None or raw.strip() == "":
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"GBS_WORK_BUDGET must be an integer, got {raw!r}") from None
    if value <= 0:
        raise ValueError("GBS_WORK_BUDGET must be positive")
    return value


class Meter:
    """Counts work units and raises once the budget is spent."""

    __slots__ = ("limit", "used", "what")

    def __init__(self, what, budget=None):
        self.limit = work_budget(budget)
        self.used = 0
        self.what = what

    def tick(self, n=1):
        self.used += n
        if self.used > self.limit:
            raise BudgetExceededError(
                f"{self.what} exceeded the work budget of {self.limit} units "
                "(raise GBS_WORK_BUDGET to allow more)"
            )
