"""Classical module invariants: uniform dimension, singular submodule, predicates."""

from __future__ import annotations

import numpy as np

from ._bits import bits_from_indices, bits_from_mask, memo
from .errors import SizeLimitExceeded, UnknownPredicate
from .homs import end_ring, find_hom, hom_tables, minimal_generators
from .modules import (FiniteModule, Submodule, as_module, direct_sum, minimal_submodules,
                      regular_module, socle, submodules, summands)
from .rings import essential_right_ideals, right_ideals
from .verdict import Verdict

MODULE_PREDICATES = ("projective", "injective", "flat", "nonsingular", "uniform", "indecomposable")

FLAT_NOTE = ("flat decided as projective: finite rings are semiperfect, and finitely "
             "generated flat modules over them are projective")


def uniform_dimension(M: FiniteModule) -> int:
    """Composition length of the socle, counted as a maximal independent family of simples."""
    def compute():
        total = M.zero_bits
        count = 0
        for S in minimal_submodules(M):
            if S.members & total == M.zero_bits:
                total = (Submodule(M, total) + S).members
                count += 1
        return count

    return memo.get(("udim", M.digest), compute)


def uniform_dimension_bruteforce(M: FiniteModule) -> int:
    """Largest independent family of nonzero submodules, by exhaustive search."""
    subs = [S for S in submodules(M) if not S.is_zero()]
    best = 0

    def grow(total: Submodule, start: int, size: int):
        nonlocal best
        best = max(best, size)
        for i in range(start, len(subs)):
            S = subs[i]
            if S.members & total.members == M.zero_bits:
                grow(total + S, i + 1, size + 1)

    grow(M.zero_submodule(), 0, 0)
    return best


def annihilator(M: FiniteModule, m: int) -> int:
    """Right annihilator of m as a bitset over the ring."""
    return bits_from_mask(M.action[m] == M.zero)


def singular_submodule(M: FiniteModule) -> Submodule:
    """Elements whose annihilator is an essential right ideal."""
    def compute():
        ess = {I.members for I in essential_right_ideals(M.ring)}
        keep = [m for m in range(M.order) if annihilator(M, m) in ess]
        return Submodule(M, bits_from_indices(keep, M.order))

    return memo.get(("singular", M.digest), compute)


def module_predicate(M: FiniteModule, name: str) -> Verdict:
    checks = {
        "projective": _projective,
        "injective": _injective,
        "flat": _flat,
        "nonsingular": _nonsingular,
        "uniform": _uniform,
        "indecomposable": _indecomposable,
    }
    if name not in checks:
        raise UnknownPredicate(f"unknown module predicate {name!r}; expected one of {MODULE_PREDICATES}")
    return memo.get(("module_predicate", name, M.digest), lambda: checks[name](M))


def _projective(M: FiniteModule) -> Verdict:
    """Does the canonical surjection R^g -> M (g = minimal generators) split?"""
    gens = minimal_generators(M)
    R = M.ring
    if not gens:
        return Verdict(True, {"generators": []}, ["zero module"])
    F = direct_sum([regular_module(R)] * len(gens))
    # pi(r_1, ..., r_g) = sum g_i r_i, computed over mixed-radix digits
    idx = np.arange(F.order)
    pi = np.full(F.order, M.zero)
    for i, g in enumerate(gens):
        digit = (idx // R.order ** i) % R.order
        pi = M.add[pi, M.action[g, digit]]
    candidates = [np.flatnonzero(pi == g) for g in gens]
    section = find_hom(M, F, candidates=candidates, gens=gens)
    if section is None:
        return Verdict(False, {"generators": gens, "reason": "no section of R^g -> M"})
    return Verdict(True, {"generators": gens, "section": section.table.tolist()})


def _flat(M: FiniteModule) -> Verdict:
    v = _projective(M)
    return Verdict(v.result, v.witness, v.notes + [FLAT_NOTE])


def _injective(M: FiniteModule) -> Verdict:
    """Baer: every hom I -> M from a right ideal is m·(-) for some m in M."""
    R = M.ring
    Rm = regular_module(R)
    for I in right_ideals(R):
        if I.members in (1 << R.zero, (1 << R.order) - 1):
            continue
        sub = Submodule(Rm, I.members)
        A = as_module(sub)
        homs = hom_tables(A, M)
        el = sub.elements()
        restrictions = np.unique(M.action[:, el], axis=0)
        if len(restrictions) != len(homs):
            extendable = {r.tobytes() for r in restrictions.astype(homs.dtype)}
            bad = next(h for h in homs if h.tobytes() not in extendable)
            return Verdict(False, {"ideal": I.elements(),
                                   "hom": {int(a): int(b) for a, b in zip(el, bad)}})
    return Verdict(True, {"criterion": "Baer"})


def _nonsingular(M: FiniteModule) -> Verdict:
    Z = singular_submodule(M)
    if Z.is_zero():
        return Verdict(True, {"singular": [M.zero]})
    x = next(m for m in Z.elements().tolist() if m != M.zero)
    return Verdict(False, {"singular": Z.elements().tolist(), "element": x,
                           "annihilator": _bits_list(annihilator(M, x), M.ring.order)})


def _bits_list(bits: int, n: int) -> list[int]:
    return [i for i in range(n) if bits >> i & 1]


def _uniform(M: FiniteModule) -> Verdict:
    if M.order == 1:
        return Verdict(False, {"reason": "zero module"})
    mins = minimal_submodules(M)
    if len(mins) == 1:
        return Verdict(True, {"socle": mins[0].elements().tolist()})
    return Verdict(False, {"pair": [mins[0].elements().tolist(), mins[1].elements().tolist()]})


def _indecomposable(M: FiniteModule) -> Verdict:
    if M.order == 1:
        return Verdict(False, {"reason": "zero module"})
    try:
        nontrivial = [S for S in summands(M) if not (S.is_zero() or S.is_whole())]
    except SizeLimitExceeded:
        E = end_ring(M)
        idem = [i for i in E.idempotents if i not in (E.zero, E.one)]
        if idem:
            return Verdict(False, {"idempotent": E.maps[idem[0]].tolist()})
        return Verdict(True, {"method": "idempotents"})
    if nontrivial:
        return Verdict(False, {"summand": nontrivial[0].elements().tolist()})
    return Verdict(True, {"method": "lattice"})


__all__ = ["MODULE_PREDICATES", "annihilator", "module_predicate", "singular_submodule", "socle",
           "uniform_dimension", "uniform_dimension_bruteforce"]
