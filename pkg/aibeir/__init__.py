"""AIBEIR - anonymous identity-based encryption with identity recovery."""

from aibeir.cli import main

__all__ = ["main"]
