from __future__ import annotations

from contextlib import contextmanager
from contextvars import ContextVar
from typing import Iterator

DEFAULT_BUDGET = 2**20

_budget: ContextVar[int] = ContextVar("enumeration_budget", default=DEFAULT_BUDGET)


class BudgetExceeded(RuntimeError):
    def __init__(self, what: str, needed: int, budget: int):
        super().__init__(f"{what} needs {needed} enumeration steps, budget is {budget}")
        self.needed = needed
        self.budget = budget


def current_budget() -> int:
    return _budget.get()


def check_budget(what: str, needed: int) -> None:
    b = _budget.get()
    if needed > b:
        raise BudgetExceeded(what, needed, b)


@contextmanager
def enumeration_budget(n: int) -> Iterator[None]:
    if n < 1:
        raise ValueError("budget must be >= 1")
    token = _budget.set(n)
    try:
        yield
    finally:
        _budget.reset(token)


_timings: ContextVar[bool] = ContextVar("record_timings", default=False)


def timings_enabled() -> bool:
    return _timings.get()


@contextmanager
def record_timings(on: bool = True) -> Iterator[None]:
    """Report wall-clock milliseconds; off by default so output is reproducible."""
    token = _timings.set(on)
    try:
        yield
    finally:
        _timings.reset(token)
