"""Shared exception types."""


class ResourceCapError(Exception):
    """A desk-scale cap was exceeded; the computation was refused, not attempted."""
