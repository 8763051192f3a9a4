"""Exact verification of cross-intersection bounds for independent-set families."""

__version__ = "0.1.0"
