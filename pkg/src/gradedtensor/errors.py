"""Shared exception types."""


class CapExceededError(Exception):
    """A requested computation exceeds the configured size cap."""
