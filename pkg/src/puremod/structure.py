"""Essentiality, summands and the extending family (C1, pure C1, C2, C3, D2)."""

from __future__ import annotations

from collections import defaultdict

from ._bits import memo
from .errors import UnknownPredicate
from .homs import is_isomorphic
from .modules import FiniteModule, Submodule, as_module, complement, socle, submodules, summands
from .purity import COHN_TRIVIAL_NOTE, normalize_kind, pure_submodules
from .verdict import Verdict

CONDITIONS = ("C2", "C3", "D2_paper", "pure_split")

C3_NOTE = "pure C3 has no definition to follow; the standard C3 condition is used"
D2_NOTE = "D2 here means: the intersection of two direct summands is a direct summand"


def _sub(N: Submodule) -> list[int]:
    return N.elements().tolist()


def is_essential(N: Submodule, M: FiniteModule | None = None,
                 within: Submodule | None = None) -> Verdict:
    """N ≤_e D (D = ``within``, default all of M): every nonzero cyclic xR ≤ D meets N."""
    M = N.module if M is None else M
    D = M.whole() if within is None else within
    if not N <= D:
        return Verdict(False, {"reason": "not contained"})
    zero = M.zero_bits
    for x in D.elements().tolist():
        if x != M.zero and M.cyclic_bits[x] & N.members == zero:
            return Verdict(False, {"element": {"index": x, "value": M.fmt(x)}})
    return Verdict(True)


def is_essential_lattice(N: Submodule, D: Submodule) -> bool:
    """Definition form: every nonzero submodule of D meets N."""
    M = N.module
    if not N <= D:
        return False
    return all(S.is_zero() or not S <= D or S.members & N.members != M.zero_bits
               for S in submodules(M))


def _essential_in(N: Submodule, D: Submodule, soc: int) -> bool:
    # in a finite module the socle of D is essential in D, so N ≤_e D iff soc(D) ⊆ N
    return N.members & ~D.members == 0 and (soc & D.members) & ~N.members == 0


def direct_complement(N: Submodule, M: FiniteModule | None = None) -> Submodule | None:
    return complement(N)


def _extending_over(M: FiniteModule, candidates: list[Submodule], label: str) -> Verdict:
    soc = socle(M).members
    sums = sorted(summands(M), key=lambda s: s.sort_key())
    for N in candidates:
        if not any(_essential_in(N, D, soc) for D in sums):
            reasons = []
            for D in sums:
                reason = "does not contain N" if not N <= D else "N is not essential in it"
                reasons.append({"summand": _sub(D), "reason": reason})
            return Verdict(False, {label: _sub(N), "value": [M.fmt(m) for m in N.elements()],
                                   "summands": reasons})
    return Verdict(True)


def is_extending(M: FiniteModule) -> Verdict:
    return memo.get(("extending", M.digest),
                    lambda: _extending_over(M, submodules(M), "submodule"))


def is_pure_extending(kind: str, M: FiniteModule) -> Verdict:
    kind = normalize_kind(kind)

    def compute():
        v = _extending_over(M, pure_submodules(kind, M), "pure_submodule")
        if kind == "cohn":
            v.notes.append(COHN_TRIVIAL_NOTE)
        if v.witness is None:
            v.witness = {"kind": kind}
        else:
            v.witness["kind"] = kind
        return v

    return memo.get(("pure_extending", kind, M.digest), compute)


def condition_predicate(M: FiniteModule, name: str, kind: str | None = None) -> Verdict:
    if name == "pure_split":
        return _pure_split(M, normalize_kind(kind or "ideal"))
    checks = {"C2": _c2, "C3": _c3, "D2_paper": _d2}
    if name not in checks:
        raise UnknownPredicate(f"unknown condition {name!r}; expected one of {CONDITIONS}")
    return memo.get(("condition", name, M.digest), lambda: checks[name](M))


def _c2(M: FiniteModule) -> Verdict:
    """Every submodule isomorphic to a direct summand is a direct summand."""
    sums = summands(M)
    sum_bits = {s.members for s in sums}
    by_size = defaultdict(list)
    for D in sums:
        by_size[D.size].append(D)
    for N in submodules(M):
        if N.members in sum_bits:
            continue
        for D in by_size.get(N.size, ()):
            if is_isomorphic(as_module(N), as_module(D)):
                return Verdict(False, {"submodule": _sub(N), "isomorphic_summand": _sub(D)})
    return Verdict(True)


def _c3(M: FiniteModule) -> Verdict:
    """Standard C3: independent summands have a summand as their sum."""
    sums = summands(M)
    sum_bits = {s.members for s in sums}
    for i, A in enumerate(sums):
        for B in sums[i + 1:]:
            if A.members & B.members == M.zero_bits:
                S = A + B
                if S.members not in sum_bits:
                    return Verdict(False, {"pair": [_sub(A), _sub(B)], "sum": _sub(S)}, [C3_NOTE])
    return Verdict(True, None, [C3_NOTE])


def _d2(M: FiniteModule) -> Verdict:
    sums = summands(M)
    sum_bits = {s.members for s in sums}
    for i, A in enumerate(sums):
        for B in sums[i + 1:]:
            if A.members & B.members not in sum_bits:
                return Verdict(False, {"pair": [_sub(A), _sub(B)], "intersection": _sub(A & B)},
                               [D2_NOTE])
    return Verdict(True, None, [D2_NOTE])


def _pure_split(M: FiniteModule, kind: str) -> Verdict:
    sum_bits = {s.members for s in summands(M)}
    for P in pure_submodules(kind, M):
        if P.members not in sum_bits:
            return Verdict(False, {"kind": kind, "pure_submodule": _sub(P)})
    return Verdict(True, {"kind": kind})
