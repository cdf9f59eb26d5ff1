"""Exceptions shared across analysis modules."""


class TactusError(Exception):
    """Base class for all engine errors."""


class EmptyInput(TactusError, ValueError):
    """An analysis was asked to summarize zero records."""
