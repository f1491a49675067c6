"""Certified nonexistence checks for tight 2s-designs."""

__version__ = "0.1.0"
