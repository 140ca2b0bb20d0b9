"""Resource limits for computations whose size can explode.

Two counters are guarded: the number of terms in a single group-ring
element, and the number of elementary steps in one collection run.
Limits live in a context variable so concurrent callers can use
different budgets.
"""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass

from .errors import BudgetExceeded


@dataclass(frozen=True)
class Budget:
    max_terms: int = 500_000
    max_collection_steps: int = 5_000_000


_current: contextvars.ContextVar[Budget] = contextvars.ContextVar("freecalc_budget", default=Budget())


def current() -> Budget:
    return _current.get()


@contextlib.contextmanager
def limits(max_terms: int | None = None, max_collection_steps: int | None = None):
    """Temporarily override the active budget."""
    old = _current.get()
    new = Budget(
        max_terms=old.max_terms if max_terms is None else max_terms,
        max_collection_steps=(
            old.max_collection_steps if max_collection_steps is None else max_collection_steps
        ),
    )
    token = _current.set(new)
    try:
        yield new
    finally:
        _current.reset(token)


def check_terms(n: int) -> None:
    limit = _current.get().max_terms
    if n > limit:
        raise BudgetExceeded(f"ring element has {n} terms, budget is {limit}")
