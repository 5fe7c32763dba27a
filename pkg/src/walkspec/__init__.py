"""Exact arithmetic toolkit for generalized alpha-spectrum determination."""

__version__ = "0.1.0"
