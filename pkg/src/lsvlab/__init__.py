"""Verification lab for least singular values of discrete random matrices."""

__version__ = "0.1.0"
