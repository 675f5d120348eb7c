"""Witness-carrying boolean results."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Verdict:
    """A boolean answer plus the evidence behind it.

    ``witness`` names the violating (or certifying) objects by element
    indices; ``notes`` carries caveats such as trivialization remarks.
    """

    result: bool
    witness: dict[str, Any] | None = None
    notes: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return bool(self.result)

    def to_json(self) -> dict:
        out: dict[str, Any] = {"result": bool(self.result)}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.notes:
            out["notes"] = list(self.notes)
        return out
