"""Node budgets for the exponential search kernels.

Every backtracking search counts the nodes it expands against a budget.
Running out raises :class:`SearchBudgetExceeded` so that "too expensive"
is never silently reported as "does not exist".
"""

from __future__ import annotations

import os

from .errors import SearchBudgetExceeded

DEFAULT_NODE_BUDGET = 10**7

ENV_VAR = "SUBTILE_BUDGET"


def default_node_budget() -> int:
    """Budget from the SUBTILE_BUDGET environment variable, else 10^7."""
    raw = os.environ.get(ENV_VAR)
    if raw is None:
        return DEFAULT_NODE_BUDGET
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValueError(f"{ENV_VAR} must be an integer, got {raw!r}") from exc
    if value <= 0:
        raise ValueError(f"{ENV_VAR} must be positive, got {value}")
    return value


class SearchBudget:
    """Mutable node counter capped at ``limit``."""

    __slots__ = ("nodes", "limit")

    def __init__(self, limit: int | None = None):
        self.nodes = 0
        self.limit = default_node_budget() if limit is None else limit

    def tick(self, count: int = 1) -> None:
        self.nodes += count
        if self.nodes > self.limit:
            raise SearchBudgetExceeded(
                f"search expanded more than {self.limit} nodes"
            )


def ensure_budget(budget: SearchBudget | None) -> SearchBudget:
    return budget if budget is not None else SearchBudget()
