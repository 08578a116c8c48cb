"""Compositional static deadlock detection over lock access paths."""

__version__ = "0.1.0"
