"""Report objects and their JSON / text renderings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from . import __version__
from .config import get_config

PASS_EXHAUSTIVE = "pass (exhaustive within bounds)"
PASS_EVIDENCE = "pass (evidence)"
PROXY_PASS = "proxy k={k} pass"
FACTS = "computed facts"


@dataclass
class ClaimResult:
    claim_id: str
    paper_anchor: str
    kind: str | None = None
    vocabulary: str = PASS_EVIDENCE
    instances_checked: int = 0
    passes: int = 0
    failures: list[dict] = field(default_factory=list)
    undecided: list[dict] = field(default_factory=list)
    outcomes: list[dict] = field(default_factory=list)
    trivialization_notes: list[str] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)

    def record(self, instance: str, ok: bool, witness: Any = None, extra: dict | None = None):
        self.instances_checked += 1
        entry = {"instance": instance, "result": bool(ok)}
        if extra:
            entry.update(extra)
        self.outcomes.append(entry)
        if ok:
            self.passes += 1
        else:
            self.failures.append({"instance": instance, "witness": witness})

    def fact(self, instance: str, values: dict, witness: Any = None):
        """Record computed values without judging them."""
        self.vocabulary = FACTS
        self.instances_checked += 1
        self.passes += 1
        entry = {"instance": instance, **values}
        if witness is not None:
            entry["witness"] = witness
        self.outcomes.append(entry)

    def skip(self, instance: str, reason: str):
        self.undecided.append({"instance": instance, "reason": reason})
        self.outcomes.append({"instance": instance, "result": "undecided"})

    def note(self, text: str):
        if text not in self.trivialization_notes:
            self.trivialization_notes.append(text)

    @property
    def clean(self) -> bool:
        return not self.failures

    @property
    def status(self) -> str:
        if self.failures:
            return "fail"
        if self.instances_checked == 0:
            return "vacuous"
        return self.vocabulary

    def to_json(self) -> dict:
        out = {
            "claim_id": self.claim_id,
            "paper_anchor": self.paper_anchor,
            "kind": self.kind,
            "status": self.status,
            "vocabulary": self.vocabulary,
            "instances_checked": self.instances_checked,
            "passes": self.passes,
            "failures": self.failures,
            "undecided": self.undecided,
            "outcomes": self.outcomes,
            "trivialization_notes": self.trivialization_notes,
        }
        if self.details:
            out["details"] = self.details
        return out


@dataclass
class Report:
    suite: str
    claims: list[ClaimResult] = field(default_factory=list)
    extra: dict[str, Any] = field(default_factory=dict)

    @property
    def clean(self) -> bool:
        return all(c.clean for c in self.claims)

    def to_json(self) -> dict:
        out = {
            "suite": self.suite,
            "tool_version": __version__,
            "config_hash": get_config().digest(),
            "clean": self.clean,
            "claims": [c.to_json() for c in self.claims],
        }
        out.update(self.extra)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=False, ensure_ascii=False) + "\n"

    def render_text(self) -> str:
        rows = [f"suite {self.suite}  (tool {__version__}, config {get_config().digest()})"]
        width = max([len(c.claim_id) + len(c.kind or "") + 3 for c in self.claims] + [10])
        for c in self.claims:
            label = c.claim_id + (f" [{c.kind}]" if c.kind else "")
            counts = f"{c.passes}/{c.instances_checked}"
            if c.undecided:
                counts += f" (+{len(c.undecided)} undecided)"
            rows.append(f"  {label.ljust(width)}  {c.status:<34} {counts}")
            for f in c.failures[:3]:
                rows.append(f"      failure: {f['instance']}")
        rows.append("clean" if self.clean else "failures present")
        return "\n".join(rows) + "\n"
