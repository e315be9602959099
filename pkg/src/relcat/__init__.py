"""Verification engine for categories of relations over finite regular categories."""

__version__ = "0.1.0"
