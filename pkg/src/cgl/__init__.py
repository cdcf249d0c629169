"""Exact toolkit for CGL extensions."""

__version__ = "0.1.0"
