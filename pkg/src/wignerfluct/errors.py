"""Shared exception types."""

from __future__ import annotations


class CapabilityError(Exception):
    """A request is outside the supported bounds of the implementation.

    Raised for out-of-range orders, obstruction sets beyond the tabulated
    range, and similar capacity limits — as opposed to malformed input, which
    raises ValueError.
    """
