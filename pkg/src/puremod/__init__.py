"""Finite computational workbench for purity, extending and endoregular conditions on modules."""

from __future__ import annotations

__version__ = "0.1.0"
