"""Shared exception types."""


class BudgetError(RuntimeError):
    """An operation would exceed its enumeration / memory budget.

    Raised instead of silently attempting a computation that cannot finish;
    the message carries an estimate of what would have been required.
    """
