"""Enumeration budgets.

Every brute-force search in the package draws from a :class:`Budget` so that
it fails loudly with :class:`EnumerationCap` instead of hanging.
"""

import os

from .errors import EnumerationCap

DEFAULT_MAX_ENUM = 10**6
ENV_VAR = "QUASIKIT_MAX_ENUM"

_override = None


def set_default_cap(cap):
    """Process-wide cap used when no explicit budget is passed (``None`` resets)."""
    global _override
    _override = cap


def default_cap() -> int:
    if _override is not None:
        return _override
    raw = os.environ.get(ENV_VAR)
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return DEFAULT_MAX_ENUM


class Budget:
    def __init__(self, cap=None):
        self.cap = default_cap() if cap is None else cap
        self.spent = 0

    def spend(self, n: int = 1):
        self.spent += n
        if self.spent > self.cap:
            raise EnumerationCap(f"candidate space exceeds the enumeration cap of {self.cap}")

    def __repr__(self):
        return f"Budget({self.spent}/{self.cap})"


def as_budget(budget):
    if isinstance(budget, Budget):
        return budget
    return Budget(budget)
