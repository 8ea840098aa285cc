"""Shared node budget for enumeration work."""

from __future__ import annotations

__all__ = ["Budget", "BudgetExceeded", "DEFAULT_BUDGET"]

DEFAULT_BUDGET = 10**6


class BudgetExceeded(RuntimeError):
    """Raised when an enumeration exceeds its recursion-node budget."""


class Budget:
    """Counts recursion nodes across the enumeration helpers of one task."""

    __slots__ = ("limit", "used")

    def __init__(self, limit: int = DEFAULT_BUDGET):
        self.limit = limit
        self.used = 0

    def charge(self, amount: int = 1) -> None:
        self.used += amount
        if self.used > self.limit:
            raise BudgetExceeded(f"enumeration budget of {self.limit} nodes exhausted")
