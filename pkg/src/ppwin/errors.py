"""Shared exception types."""


class GuardError(ValueError):
    """A size/memory/runtime guard was violated."""
