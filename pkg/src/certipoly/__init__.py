"""Exact symbolic-numeric certification of polynomial and ln/sqrt claims."""

__version__ = "0.1.0"
