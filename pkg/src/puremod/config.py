"""Runtime limits and defaults."""

from __future__ import annotations

import contextlib
import hashlib
import json
import os
import threading
from dataclasses import asdict, dataclass, replace

KINDS = ("rd", "ideal", "cohn")


@dataclass(frozen=True)
class Config:
    max_ring_order: int = 256
    max_scalar_ring_order: int = 6561
    max_module_order: int = 4096
    hom_budget: int = 2**20
    max_lattice: int = 60000
    power_k: int = 2
    purity: str = "ideal"
    output_format: str = "json"

    def __post_init__(self):
        for name in ("max_ring_order", "max_scalar_ring_order", "max_module_order",
                     "hom_budget", "max_lattice", "power_k"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.purity not in KINDS:
            raise ValueError(f"purity must be one of {KINDS}")
        if self.output_format not in ("json", "text"):
            raise ValueError("output_format must be json or text")

    def digest(self) -> str:
        blob = json.dumps(asdict(self), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


def _from_env() -> Config:
    cfg = Config()
    env = os.environ.get("PUREMOD_MAX_MODULE")
    if env:
        cfg = replace(cfg, max_module_order=int(env))
    return cfg


_lock = threading.Lock()
_current = _from_env()


def get_config() -> Config:
    return _current


def set_config(cfg: Config) -> None:
    global _current
    with _lock:
        _current = cfg


@contextlib.contextmanager
def override(**changes):
    """Temporarily replace fields of the active config."""
    old = get_config()
    set_config(replace(old, **changes))
    try:
        yield get_config()
    finally:
        set_config(old)
