"""Exact enumerative invariants of nef Looijenga pairs."""

__version__ = "0.1.0"
