"""Shifted elliptic divisibility sequences over Q and Q(i)."""

__version__ = "0.1.0"
