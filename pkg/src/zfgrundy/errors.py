"""Shared exception types.

Guard violations and resource exhaustion are deliberately distinct from NO
answers: a solver that runs out of budget raises, it never reports "no".
"""


class ZfError(Exception):
    """Base class for package errors."""


class ParseError(ZfError):
    """Malformed input file or string."""


class GuardError(ZfError):
    """An instance exceeds a size guard (e.g. brute force beyond max_n)."""


class BudgetError(ZfError):
    """A search or DP exceeded its state/table budget."""
