"""Interval value analysis plugin."""

from .plugin import DESCRIPTOR, NAME, register

__all__ = ["DESCRIPTOR", "NAME", "register"]
