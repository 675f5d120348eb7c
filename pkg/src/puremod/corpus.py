"""The standard corpus of finite rings and modules used by the audit suites."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from ._bits import memo
from .errors import SizeLimitExceeded
from .homs import indecomposable_decomposition, is_isomorphic, minimal_generators
from .modules import FiniteModule, build_module, generators_of, submodules
from .rings import FiniteRing, build_ring, ring_predicate

ZMOD8 = {"kind": "zmod", "n": 8}
F2X = {"kind": "poly_quot", "p": 2, "modulus": [0, 0, 1]}
KXY = {"kind": "kxy_m2", "p": 2}
GF2 = {"kind": "gf", "p": 2}
GF3 = {"kind": "gf", "p": 3}
PROD23 = {"kind": "product", "factors": [GF2, GF3]}
MAT2 = {"kind": "matrix", "base": GF2, "n": 2}
UT2 = {"kind": "upper_tri", "base": {"kind": "zmod", "n": 2}, "n": 2}

REGULAR = {"kind": "regular"}

# quotients are generated only for base modules up to this order
QUOTIENT_BASE_LIMIT = 16


@dataclass(frozen=True)
class Instance:
    id: str
    ring_spec: dict = field(hash=False)
    module_spec: dict = field(hash=False)
    tags: tuple[str, ...] = ()

    def ring(self) -> FiniteRing:
        return build_ring(self.ring_spec)

    def module(self) -> FiniteModule:
        return build_module(self.ring(), self.module_spec)

    def to_json(self) -> dict:
        return {"id": self.id, "ring": self.ring_spec, "module": self.module_spec,
                "tags": list(self.tags)}


def _free(n: int) -> dict:
    return {"kind": "free", "n": n}


BASES: list[tuple[str, dict, dict, tuple[str, ...]]] = [
    ("paper-2.2-Z2Z8", ZMOD8, {"kind": "zmod_sum", "orders": [2, 8]}, ("paper-example",)),
    ("paper-counter1", F2X, REGULAR, ("paper-example",)),
    ("paper-counter1-free2", F2X, _free(2), ("paper-example",)),
    ("paper-kxy-R2", KXY, _free(2), ("paper-example",)),
    ("paper-kxy-N", KXY, {"kind": "submodule_of", "parent": _free(2), "generators": [[2, 4]]},
     ("paper-example",)),
    ("paper-F3sq", GF3, _free(2), ("paper-example",)),
    ("gf2-free1", GF2, _free(1), ("paper-example",)),
    ("gf2-free2", GF2, _free(2), ("paper-example",)),
    ("gf2-free3", GF2, _free(3), ("paper-example",)),
    ("prod23-regular", PROD23, REGULAR, ()),
    ("mat2-regular", MAT2, REGULAR, ()),
    ("ut2-regular", UT2, REGULAR, ()),
    ("ut2-top-row", UT2, {"kind": "right_ideal_as_module", "generators": [1]}, ()),
]


def _ring_tags(R: FiniteRing) -> list[str]:
    tags = []
    if ring_predicate(R, "semisimple").result:
        tags.append("semisimple-ring")
    if ring_predicate(R, "local").result:
        tags.append("local-ring")
    if ring_predicate(R, "commutative").result:
        tags.append("commutative-ring")
    return tags


def _module_tags(M: FiniteModule) -> list[str]:
    tags = []
    if len(minimal_generators(M)) <= 1 and M.order > 1:
        tags.append("cyclic")
    return tags


def _make(iid: str, ring_spec: dict, module_spec: dict, extra: tuple[str, ...]) -> Instance:
    R = build_ring(ring_spec)
    M = build_module(R, module_spec)
    tags = sorted(set(extra) | set(_ring_tags(R)) | set(_module_tags(M)))
    return Instance(iid, ring_spec, module_spec, tuple(tags))


def standard_corpus() -> list[Instance]:
    """Base examples plus their quotients and indecomposable summands, up to isomorphism."""
    return memo.get(("standard_corpus",), _standard_corpus)


def _standard_corpus() -> list[Instance]:
    out: list[Instance] = []
    seen: dict[str, list[FiniteModule]] = {}

    def add(inst: Instance) -> bool:
        M = inst.module()
        key = M.ring.digest
        for other in seen.get(key, []):
            if other.order == M.order and is_isomorphic(other, M):
                return False
        seen.setdefault(key, []).append(M)
        out.append(inst)
        return True

    for iid, rs, ms, tags in BASES:
        add(_make(iid, rs, ms, tags))
    for iid, rs, ms, _ in BASES:
        M = build_module(build_ring(rs), ms)
        try:
            parts = indecomposable_decomposition(M)
        except SizeLimitExceeded:
            parts = []
        if len(parts) > 1:
            for k, P in enumerate(parts):
                spec = {"kind": "submodule_of", "parent": ms, "generators": generators_of(P)}
                add(_make(f"{iid}/s{k}", rs, spec, ("derived", "summand")))
        if M.order <= QUOTIENT_BASE_LIMIT:
            for k, N in enumerate(submodules(M)):
                if N.is_zero() or N.is_whole():
                    continue
                spec = {"kind": "quotient", "parent": ms, "sub_generators": generators_of(N)}
                add(_make(f"{iid}/q{k}", rs, spec, ("derived", "quotient")))
    return out


def corpus_by_id(corpus: list[Instance] | None = None) -> dict[str, Instance]:
    return {inst.id: inst for inst in (corpus or standard_corpus())}


def spec_key(inst: Instance) -> str:
    return json.dumps([inst.ring_spec, inst.module_spec], sort_keys=True)
