"""Exception types shared across the package."""

from __future__ import annotations


class Graph6Error(ValueError):
    """Malformed graph6 record; ``offset`` is the offending byte position."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset


class Inconclusive(RuntimeError):
    """An exact search ran out of budget before reaching a verdict.

    ``best`` carries whatever partial result the search had proven, for
    example a clique that is only a lower bound.
    """

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best


class DatasetError(ValueError):
    """The embedded (or overriding) Kochen-Specker data failed validation."""
