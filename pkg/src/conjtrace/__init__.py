"""Exact verification of equal-trace generating pairs for arithmetic two-bridge knot and link groups."""

__version__ = "0.1.0"
