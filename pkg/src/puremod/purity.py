"""RD, ideal-wise and Cohn purity, purification, pure-essential and pure-uniform.

For a right module M and submodule N:

* RD-pure: N·r = M·r ∩ N for every r in R.
* Ideal-pure: N·I = M·I ∩ N for every right ideal I.
* Cohn-pure: decided as "N is a direct summand".  A finite module is
  pure-injective, and a pure submodule that is pure-injective splits off.
"""

from __future__ import annotations

import itertools

import numpy as np

from ._bits import bits_from_indices, lowest_bit, mask_from_bits, memo
from .config import KINDS, get_config
from .errors import NonUnique, NotASubmodule, SizeLimitExceeded, UnknownPredicate
from .modules import (FiniteModule, Submodule, generators_of, is_submodule_bits, is_summand,
                      regular_module, submodule_generated, submodules)
from .rings import RightIdeal, right_ideals
from .verdict import Verdict

COHN_NOTE = ("Cohn purity decided as direct summand: a finite module is pure-injective, "
             "so its pure submodules split")
COHN_TRIVIAL_NOTE = ("trivially true for finite modules: Cohn-pure submodules are summands, "
                     "and every summand is essential in itself")


def normalize_kind(kind: str) -> str:
    k = str(kind).lower()
    if k not in KINDS:
        raise UnknownPredicate(f"unknown purity kind {kind!r}; expected one of {KINDS}")
    return k


def _check_sub(N: Submodule, M: FiniteModule | None) -> FiniteModule:
    M = N.module if M is None else M
    if N.module.digest != M.digest or not is_submodule_bits(M, N.members):
        raise NotASubmodule("N is not a submodule of M")
    return M


def _multiples(M: FiniteModule, r: int) -> int:
    return bits_from_indices(M.action[:, r], M.order)


def _ideal_product(M: FiniteModule, gens_x: list[int], I: RightIdeal) -> Submodule:
    """X·I for X generated by gens_x: generated by the products x·a, a running over generators of I."""
    ideal_gens = _ideal_generators(I)
    prods = [int(M.action[x, a]) for x in gens_x for a in ideal_gens]
    return submodule_generated(M, prods)


def _ideal_generators(I: RightIdeal) -> list[int]:
    R = I.ring
    return generators_of(Submodule(regular_module_of(R), I.members))


def regular_module_of(R):
    return memo.get(("regular", R.digest), lambda: regular_module(R))


def _elem(M: FiniteModule, m: int) -> dict:
    return {"index": int(m), "value": M.fmt(m)}


def _sub(N: Submodule) -> dict:
    return {"elements": N.elements().tolist(), "size": N.size}


def is_pure(kind: str, N: Submodule, M: FiniteModule | None = None) -> Verdict:
    kind = normalize_kind(kind)
    M = _check_sub(N, M)
    if kind == "rd":
        return _rd_pure(N, M)
    if kind == "ideal":
        return _ideal_pure(N, M)
    return _cohn_pure(N, M)


def _rd_pure(N: Submodule, M: FiniteModule) -> Verdict:
    R = M.ring
    el = N.elements()
    for r in range(R.order):
        nr = bits_from_indices(M.action[el, r], M.order)
        diff = (_multiples(M, r) & N.members) & ~nr
        if diff:
            m = lowest_bit(diff)
            return Verdict(False, {"kind": "rd", "r": {"index": r, "value": R.fmt(r)},
                                   "element": _elem(M, m)})
    return Verdict(True, {"kind": "rd"})


def _ideal_pure(N: Submodule, M: FiniteModule) -> Verdict:
    R = M.ring
    gens_n = generators_of(N)
    gens_m = generators_of(M.whole())
    for I in right_ideals(R):
        NI = _ideal_product(M, gens_n, I)
        MI = _ideal_product(M, gens_m, I)
        diff = (MI.members & N.members) & ~NI.members
        if diff:
            m = lowest_bit(diff)
            return Verdict(False, {
                "kind": "ideal",
                "ideal": {"elements": I.elements(), "values": I.describe(),
                          "generators": [R.fmt(a) for a in _ideal_generators(I)]},
                "element": _elem(M, m)})
    return Verdict(True, {"kind": "ideal"})


def _cohn_pure(N: Submodule, M: FiniteModule) -> Verdict:
    return Verdict(is_summand(N), {"kind": "cohn"}, [COHN_NOTE])


def pure_submodules(kind: str, M: FiniteModule) -> list[Submodule]:
    kind = normalize_kind(kind)

    def compute():
        return [N for N in submodules(M) if is_pure(kind, N, M).result]

    return memo.get(("pure", kind, M.digest, get_config().max_lattice), compute)


def purification(kind: str, N: Submodule, M: FiniteModule | None = None) -> Submodule:
    """The smallest kind-pure submodule containing N.

    Raises NonUnique with the antichain of minimal pure oversets when there
    is no smallest one.
    """
    M = _check_sub(N, M)
    over = [P for P in pure_submodules(kind, M) if N <= P]
    minimal = [P for P in over if not any(Q < P for Q in over)]
    if len(minimal) != 1:
        raise NonUnique(minimal)
    return minimal[0]


def is_pure_essential(kind: str, N: Submodule, M: FiniteModule | None = None) -> Verdict:
    M = _check_sub(N, M)
    for P in pure_submodules(kind, M):
        if not P.is_zero() and P.members & N.members == M.zero_bits:
            return Verdict(False, {"kind": normalize_kind(kind), "pure": _sub(P)})
    return Verdict(True, {"kind": normalize_kind(kind)})


def is_pure_uniform(kind: str, M: FiniteModule) -> Verdict:
    """Every nonzero submodule is pure-essential.

    Equivalently every nonzero pure submodule is essential; a failure
    names a nonzero N and a nonzero pure P with N ∩ P = 0, preferring N
    pure as well.
    """
    kind = normalize_kind(kind)
    if M.order == 1:
        return Verdict(True, {"kind": kind}, ["zero module"])
    pures = [P for P in pure_submodules(kind, M) if not P.is_zero()]
    zero = M.zero_bits
    for P in pures:
        for Q in pures:
            if Q.members & P.members == zero:
                return Verdict(False, {"kind": kind, "N": _sub(P), "P": _sub(Q)})
    for P in pures:
        for x in range(M.order):
            c = M.cyclic_bits[x]
            if c != zero and c & P.members == zero:
                return Verdict(False, {"kind": kind, "N": _sub(Submodule(M, c)), "P": _sub(P)})
    notes = [COHN_NOTE] if kind == "cohn" else []
    return Verdict(True, {"kind": kind}, notes)


def system_transfer_check(N: Submodule, M: FiniteModule | None = None,
                          max_vars: int = 2, max_eqs: int = 2) -> Verdict:
    """Bounded finite-system test of Cohn purity.

    Every system x·A = b (x a row of v unknowns in M, A a v×e matrix over R,
    v ≤ max_vars, e ≤ max_eqs) with b in N^e that is solvable in M must be
    solvable in N.
    """
    M = _check_sub(N, M)
    R = M.ring
    zero = M.zero
    nmask = mask_from_bits(N.members, M.order)
    for v in range(1, max_vars + 1):
        for e in range(1, max_eqs + 1):
            work = R.order ** (v * e) * M.order ** v
            if work > 16 * get_config().hom_budget:
                raise SizeLimitExceeded(f"system check with {v} unknowns and {e} equations too large")
            X = np.array(list(itertools.product(range(M.order), repeat=v)), dtype=np.int64)
            in_n = nmask[X].all(axis=1)
            for flat in itertools.product(range(R.order), repeat=v * e):
                A = np.array(flat).reshape(v, e)
                vals = np.empty((len(X), e), dtype=np.int64)
                for i in range(e):
                    acc = np.full(len(X), zero)
                    for j in range(v):
                        acc = M.add[acc, M.action[X[:, j], A[j, i]]]
                    vals[:, i] = acc
                keys = (vals * (M.order ** np.arange(e))).sum(axis=1)
                target = nmask[vals].all(axis=1)
                need = np.setdiff1d(keys[target], keys[in_n])
                if need.size:
                    b = [int(need[0] // M.order ** i % M.order) for i in range(e)]
                    return Verdict(False, {
                        "matrix": [[R.fmt(a) for a in row] for row in A.tolist()],
                        "rhs": [_elem(M, m) for m in b]})
    return Verdict(True, {"max_vars": max_vars, "max_eqs": max_eqs})


def pure_kinds_of(N: Submodule, M: FiniteModule | None = None) -> dict[str, bool]:
    return {k: is_pure(k, N, M).result for k in KINDS}


def projection_image(N: Submodule, proj: np.ndarray, target: FiniteModule) -> Submodule:
    """Image of N under a module map given as a table."""
    return Submodule(target, bits_from_indices(proj[N.elements()], target.order))


__all__ = [
    "COHN_NOTE", "COHN_TRIVIAL_NOTE", "is_pure", "is_pure_essential", "is_pure_uniform",
    "normalize_kind", "projection_image", "pure_kinds_of", "pure_submodules", "purification",
    "system_transfer_check",
]

