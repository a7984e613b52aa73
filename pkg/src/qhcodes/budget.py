"""Work-size guards for the enumeration-heavy operations.

Every guarded loop states what it counts (points, lines, word count,
pair count, ...) and refuses up front when that count exceeds the
budget.  A budget of 0 therefore refuses everything guarded.
"""

from __future__ import annotations

DEFAULT_BUDGET = 2 ** 26


class BudgetError(RuntimeError):
    def __init__(self, what: str, needed: int, cap: int):
        super().__init__(
            f"refusing {what}: needs {needed} units, budget is {cap}")
        self.what = what
        self.needed = needed
        self.cap = cap


def check_budget(what: str, needed: int, budget: int | None = None) -> None:
    cap = DEFAULT_BUDGET if budget is None else budget
    if needed > cap:
        raise BudgetError(what, needed, cap)
