"""Claim suites over the standard corpus, the proposition audit and counterexample search."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ._bits import memo
from .config import KINDS, get_config
from .corpus import Instance, corpus_by_id, standard_corpus
from .endo import (PROXY_NOTE, _fitting_all, endo_predicate, is_fully_invariant,
                   power_predicate)
from .errors import SizeLimitExceeded, UnknownSuite
from .homs import end_ring, indecomposable_decomposition, linear_map, minimal_generators
from .modules import (FiniteModule, Submodule, as_module, build_module, generators_of, quotient,
                      submodules, summands)
from .properties import module_predicate
from .purity import COHN_NOTE, COHN_TRIVIAL_NOTE, is_pure, is_pure_uniform, pure_submodules
from .report import PASS_EVIDENCE, PASS_EXHAUSTIVE, PROXY_PASS, ClaimResult, Report
from .rings import build_ring, ring_predicate
from .structure import is_extending, is_pure_extending
from .verdict import Verdict

FINITENESS_NOTE = ("decided without enumeration: over a finite module Cohn-pure submodules are "
                   "summands, so Cohn-pure extending always holds")
ENDOARTINIAN_NOTE = "finite modules are endoartinian and endonoetherian, so that hypothesis is automatic"
FITTING_NOTE = "finite length: the kernel and image chains of every endomorphism stabilise"
VNR_NOTE = "a finite von Neumann regular ring is semisimple"


# -- cached per-instance facts ------------------------------------------------

def pure_extending(kind: str, M: FiniteModule) -> Verdict:
    """Pure extending verdict, falling back to the finiteness argument for Cohn purity."""
    try:
        return is_pure_extending(kind, M)
    except SizeLimitExceeded:
        if kind == "cohn":
            return Verdict(True, {"kind": "cohn", "decided_by": "finiteness"},
                           [FINITENESS_NOTE, COHN_TRIVIAL_NOTE])
        raise


def _tri(fn: Callable[[], bool]):
    """Run a boolean computation; SizeLimitExceeded becomes the string 'undecided'."""
    try:
        return bool(fn())
    except SizeLimitExceeded:
        return "undecided"


def _kinds(kind: str | None) -> tuple[str, ...]:
    return KINDS if kind is None else (kind.lower(),)


def _sub_json(N: Submodule) -> dict:
    return {"elements": N.elements().tolist(), "values": N.describe()}


# -- suites -----------------------------------------------------------------------

@dataclass(frozen=True)
class Suite:
    id: str
    anchor: str
    per_kind: bool
    run: Callable[[list[Instance], str | None], list[ClaimResult]]


def _suite_fitting(corpus, kind):
    c = ClaimResult("fitting-decomposition", "prop:strongly pi-endoregular <=> abelian+strongly endoregular (4)",
                    vocabulary=PASS_EXHAUSTIVE)
    c.note(FITTING_NOTE)
    for inst in corpus:
        M = inst.module()
        try:
            E = end_ring(M)
        except SizeLimitExceeded as exc:
            c.skip(inst.id, str(exc))
            continue
        n, powered = _fitting_all(M, E.maps)
        kmask = powered == M.zero
        imask = np.zeros_like(kmask)
        imask[np.repeat(np.arange(E.order), M.order), powered.ravel()] = True
        ok = ((kmask & imask).sum(1) == 1) & (kmask.sum(1) * imask.sum(1) == M.order)
        bad = np.flatnonzero(~ok)
        witness = None if ok.all() else {"f": E.maps[bad[0]].tolist()}
        c.record(inst.id, bool(ok.all()), witness,
                 {"endomorphisms": E.order, "max_index": int(n.max())})
    return [c]


def _suite_monotonicity(corpus, kind):
    c = ClaimResult("purity-monotonicity", "sec:RD-purity (Pure ⊊ RD-pure)", vocabulary=PASS_EXHAUSTIVE)
    c.note(COHN_NOTE)
    for inst in corpus:
        M = inst.module()
        try:
            cohn = {N.members for N in pure_submodules("cohn", M)}
            ideal = {N.members for N in pure_submodules("ideal", M)}
            rd = {N.members for N in pure_submodules("rd", M)}
            total = len(submodules(M))
        except SizeLimitExceeded as exc:
            c.skip(inst.id, str(exc))
            continue
        bad = sorted((cohn - ideal) | (ideal - rd))
        witness = None
        if bad:
            N = Submodule(M, bad[0])
            witness = {"submodule": _sub_json(N), "cohn": N.members in cohn,
                       "ideal": N.members in ideal, "rd": N.members in rd}
        c.record(inst.id, not bad, witness,
                 {"submodules": total, "cohn": len(cohn), "ideal": len(ideal), "rd": len(rd)})
    return [c]


def corpus_pairs(corpus: list[Instance]) -> list[tuple[Instance, Instance]]:
    """Unordered pairs (with repetition) over a common ring with |M1 ⊕ M2| within the module limit."""
    limit = get_config().max_module_order
    out = []
    for i, a in enumerate(corpus):
        for b in corpus[i:]:
            if a.ring().digest != b.ring().digest:
                continue
            if a.module().order * b.module().order <= limit:
                out.append((a, b))
    return out


def _pair_module(a: Instance, b: Instance) -> FiniteModule:
    R = a.ring()
    return build_module(R, {"kind": "direct_sum", "parts": [a.module_spec, b.module_spec]})


def _suite_direct_sum(corpus, kind):
    claims = []
    pairs = corpus_pairs(corpus)
    for k in _kinds(kind):
        c = ClaimResult("thm-direct-sum", "thm:direct sum", kind=k)
        if k == "cohn":
            c.note(COHN_TRIVIAL_NOTE)
        for a, b in pairs:
            pid = f"{a.id}+{b.id}"
            try:
                v1 = pure_extending(k, a.module()).result
                v2 = pure_extending(k, b.module()).result
                v = pure_extending(k, _pair_module(a, b))
            except SizeLimitExceeded as exc:
                c.skip(pid, str(exc))
                continue
            for n in v.notes:
                if n == FINITENESS_NOTE:
                    c.note(n)
            ok = v.result == (v1 and v2)
            c.record(pid, ok, None if ok else {"sum": v.to_json(), "M1": v1, "M2": v2},
                     {"M1": v1, "M2": v2, "sum": v.result})
        claims.append(c)
    return claims


def _suite_summand_heredity(corpus, kind):
    claims = []
    for k in _kinds(kind):
        c = ClaimResult("prop-summand-heredity", "prop:summandpurec1", kind=k)
        if k == "cohn":
            c.note(COHN_TRIVIAL_NOTE)
        for inst in corpus:
            M = inst.module()
            try:
                if not pure_extending(k, M).result:
                    c.details.setdefault("parent_not_pure_extending", []).append(inst.id)
                    continue
                bad = None
                count = 0
                for D in summands(M):
                    if D.is_zero():
                        continue
                    count += 1
                    if not pure_extending(k, as_module(D)).result:
                        bad = D
                        break
            except SizeLimitExceeded as exc:
                c.skip(inst.id, str(exc))
                continue
            c.record(inst.id, bad is None, None if bad is None else {"summand": _sub_json(bad)},
                     {"summands_checked": count})
        claims.append(c)
    return claims


def _semisimple_instances(corpus):
    return [i for i in corpus if "semisimple-ring" in i.tags]


def _coropen_claim(corpus) -> ClaimResult:
    c = ClaimResult("cor-coropen", "cor:coropen", vocabulary=PASS_EXHAUSTIVE)
    for inst in _semisimple_instances(corpus):
        M = inst.module()
        cqm = endo_predicate(M, "centrally_quasi_morphic")
        cmf = endo_predicate(M, "centrally_morphic_functional")
        ok = cqm.result == cmf.result
        c.record(inst.id, ok, None if ok else {"cqm": cqm.to_json(), "cm_functional": cmf.to_json()},
                 {"cqm": cqm.result, "cm_functional": cmf.result})
    return c


def _suite_semisimple(corpus, kind):
    proj = ClaimResult("fe2-semisimple-projective", "thm:fe2", vocabulary=PASS_EXHAUSTIVE)
    inj = ClaimResult("semisimple-injective", "thm:fe2", vocabulary=PASS_EXHAUSTIVE)
    ext = ClaimResult("semisimple-extending", "prop:von-Neumann regular <=> purec1 -> c1",
                      vocabulary=PASS_EXHAUSTIVE)
    for inst in _semisimple_instances(corpus):
        M = inst.module()
        for claim, v in ((proj, module_predicate(M, "projective")),
                         (inj, module_predicate(M, "injective")),
                         (ext, is_extending(M))):
            claim.record(inst.id, v.result, None if v.result else v.witness)
    return [proj, inj, ext, _coropen_claim(corpus)]


def _suite_coropen(corpus, kind):
    return [_coropen_claim(corpus)]


def _factor_modules(M: FiniteModule) -> list[tuple[Submodule, FiniteModule]]:
    return [(N, quotient(N)[0]) for N in submodules(M) if not N.is_zero()]


def _suite_cyclic_factor(corpus, kind):
    claims = []
    cyclic = [i for i in corpus if "cyclic" in i.tags]
    for k in _kinds(kind):
        c = ClaimResult("thm-cyclic-factor-pe", "thm:cyclic fac PE => uni. submod.", kind=k)
        c.note(ENDOARTINIAN_NOTE)
        if k == "cohn":
            c.note(COHN_TRIVIAL_NOTE)
        for inst in cyclic:
            M = inst.module()
            try:
                failing = next((N for N, Q in _factor_modules(M)
                                if not pure_extending(k, Q).result), None)
                if failing is not None:
                    c.details.setdefault("hypothesis_not_met", []).append(
                        {"instance": inst.id, "factor_by": failing.elements().tolist()})
                    continue
                parts = indecomposable_decomposition(M)
                bad = next((P for P in parts if not is_pure_uniform(k, as_module(P)).result), None)
            except SizeLimitExceeded as exc:
                c.skip(inst.id, str(exc))
                continue
            c.record(inst.id, bad is None,
                     None if bad is None else {"part": _sub_json(bad)},
                     {"parts": [P.size for P in parts]})
        claims.append(c)
    return claims


def _suite_nonsingular_rickart(corpus, kind):
    claims = []
    k_pow = get_config().power_k
    for k in _kinds(kind):
        c = ClaimResult("thm-nonsingular-pe-rickart", "thm:nonsingular PE <=> S-R-noeth", kind=k,
                        vocabulary=PROXY_PASS.format(k=k_pow))
        c.note(PROXY_NOTE.format(k=k_pow))
        for inst in corpus:
            M = inst.module()
            try:
                if not (module_predicate(M, "nonsingular").result and pure_extending(k, M).result):
                    continue
                v = power_predicate(M, k_pow, "rickart")
            except SizeLimitExceeded as exc:
                c.skip(inst.id, str(exc))
                continue
            c.record(inst.id, v.result, None if v.result else v.witness,
                     {"semisimple_ring": "semisimple-ring" in inst.tags})
        claims.append(c)
    return claims


def _suite_indec_pure_uniform(corpus, kind):
    claims = []
    for k in _kinds(kind):
        c = ClaimResult("prop-indec-pure-uniform", "prop:indec. pure ext. => uni.", kind=k,
                        vocabulary=PASS_EXHAUSTIVE)
        for inst in corpus:
            M = inst.module()
            try:
                if not (module_predicate(M, "indecomposable").result and pure_extending(k, M).result):
                    continue
                v = is_pure_uniform(k, M)
            except SizeLimitExceeded as exc:
                c.skip(inst.id, str(exc))
                continue
            c.record(inst.id, v.result, None if v.result else v.witness)
        # the decomposable non-example that follows the proposition
        byid = corpus_by_id(corpus)
        if "paper-counter1-free2" in byid:
            M = byid["paper-counter1-free2"].module()
            v = is_pure_uniform(k, M)
            c.details["remark_non_example"] = {"instance": "paper-counter1-free2",
                                               "indecomposable": module_predicate(M, "indecomposable").result,
                                               "pure_uniform": v.to_json()}
        claims.append(c)
    return claims


def _suite_fe1(corpus, kind):
    claims = []
    for k in _kinds(kind):
        c = ClaimResult("prop-fe1", "prop:fe1", kind=k)
        c.note(VNR_NOTE)
        for inst in _semisimple_instances(corpus):
            M = inst.module()
            if not pure_extending(k, M).result:
                continue
            v = module_predicate(M, "flat")
            c.record(inst.id, v.result, None if v.result else v.witness)
        claims.append(c)
    return claims


def _suite_fe2(corpus, kind):
    claims = []
    for k in _kinds(kind):
        c = ClaimResult("thm-fe2-6", "thm:fe2 (6)", kind=k)
        for inst in _semisimple_instances(corpus):
            M = inst.module()
            if not pure_extending(k, M).result:
                continue
            v = module_predicate(M, "projective")
            c.record(inst.id, v.result, None if v.result else v.witness)
        # converse direction: over each non-semisimple ring, look for a pure extending non-projective module
        found: dict[str, str | None] = {}
        for inst in corpus:
            if "semisimple-ring" in inst.tags:
                continue
            key = json.dumps(inst.ring_spec, sort_keys=True)
            found.setdefault(key, None)
            if found[key] is not None:
                continue
            M = inst.module()
            try:
                if pure_extending(k, M).result and not module_predicate(M, "projective").result:
                    found[key] = inst.id
            except SizeLimitExceeded:
                continue
        c.details["non_semisimple_rings_with_non_projective_pe_module"] = found
        claims.append(c)
    return claims


def _suite_vnr_extending(corpus, kind):
    claims = []
    for k in _kinds(kind):
        c = ClaimResult("prop-vnr-pe-iff-extending", "prop:von-Neumann regular <=> purec1 -> c1",
                        kind=k, vocabulary=PASS_EXHAUSTIVE)
        c.note(VNR_NOTE)
        for inst in _semisimple_instances(corpus):
            M = inst.module()
            e = is_extending(M).result
            p = pure_extending(k, M).result
            c.record(inst.id, e and p, None if e and p else {"extending": e, "pure_extending": p})
        claims.append(c)
    return claims


def _suite_propopen(corpus, kind):
    claims = []
    for k in _kinds(kind):
        c = ClaimResult("prop-propopen", "prop:propopen", kind=k)
        for inst in corpus:
            M = inst.module()
            try:
                if not (module_predicate(M, "nonsingular").result and pure_extending(k, M).result):
                    continue
                cqm = endo_predicate(M, "centrally_quasi_morphic").result
                cmf = endo_predicate(M, "centrally_morphic_functional").result
            except SizeLimitExceeded as exc:
                c.skip(inst.id, str(exc))
                continue
            c.record(inst.id, cqm == cmf, None if cqm == cmf else {"cqm": cqm, "cm_functional": cmf},
                     {"cqm": cqm, "cm_functional": cmf})
        claims.append(c)
    return claims


def _powers(M: FiniteModule, k: int, names) -> dict:
    return {n: power_predicate(M, k, n).result for n in names}


def _suite_main(corpus, kind, dual: bool):
    k_pow = get_config().power_k
    anchor = "thm:main2" if dual else "thm:main1"
    c = ClaimResult("thm-main2" if dual else "thm-main1", anchor, vocabulary=PROXY_PASS.format(k=k_pow))
    c.note(PROXY_NOTE.format(k=k_pow))
    c.note(FITTING_NOTE)
    hyp, other, cond = ("d_rickart", "rickart", "D2_paper") if dual else ("rickart", "d_rickart", "C2")
    for inst in corpus:
        M = inst.module()
        try:
            if not power_predicate(M, k_pow, hyp).result:
                continue
            vals = _powers(M, k_pow, (other, cond))
            vals["strongly_pi_endoregular"] = endo_predicate(M, "strongly_pi_endoregular").result
        except SizeLimitExceeded as exc:
            c.skip(inst.id, str(exc))
            continue
        ok = len(set(vals.values())) == 1
        c.record(inst.id, ok, None if ok else vals, vals)
    return [c]


def _full_invariance_hypothesis(M: FiniteModule) -> bool:
    """Every f has stable ker fⁿ and im fⁿ that are fully invariant."""
    E = end_ring(M)
    n, powered = _fitting_all(M, E.maps)
    seen: dict[bytes, bool] = {}
    for row in np.unique(powered, axis=0):
        ker = Submodule(M, sum(1 << int(x) for x in np.flatnonzero(row == M.zero)))
        img = Submodule(M, sum(1 << int(x) for x in np.unique(row)))
        for S in (ker, img):
            key = S.members.to_bytes((M.order + 7) // 8, "little")
            if key not in seen:
                seen[key] = is_fully_invariant(S, M).result
            if not seen[key]:
                return False
    return True


def _suite_cqm_direction(corpus, kind):
    c = ClaimResult("cqm-direction", "prop:CQM", vocabulary=PASS_EXHAUSTIVE)
    c.note(FITTING_NOTE)
    for inst in corpus:
        M = inst.module()
        try:
            if not _full_invariance_hypothesis(M):
                c.details.setdefault("hypothesis_not_met", []).append(inst.id)
                continue
            v = endo_predicate(M, "centrally_quasi_morphic")
        except SizeLimitExceeded as exc:
            c.skip(inst.id, str(exc))
            continue
        c.record(inst.id, v.result, None if v.result else v.witness)
    return [c]


def _suite_sr_sdr(corpus, kind):
    k_pow = get_config().power_k
    c = ClaimResult("prop-sr-sdr", "prop:S-R <=> S-d-R", vocabulary=PROXY_PASS.format(k=k_pow))
    c.note(PROXY_NOTE.format(k=k_pow))
    for inst in corpus:
        M = inst.module()
        try:
            if not endo_predicate(M, "centrally_quasi_morphic").result:
                continue
            vals = _powers(M, k_pow, ("rickart", "d_rickart"))
        except SizeLimitExceeded as exc:
            c.skip(inst.id, str(exc))
            continue
        ok = vals["rickart"] == vals["d_rickart"]
        c.record(inst.id, ok, None if ok else vals, vals)
    return [c]


def _first_split(inst: Instance):
    """(A, projection table M -> A) when the module spec is visibly a direct sum."""
    spec = inst.module_spec
    R = inst.ring()
    if spec["kind"] == "free" and spec["n"] >= 2:
        A = build_module(R, {"kind": "regular"})
    elif spec["kind"] == "zmod_sum" and len(spec["orders"]) >= 2:
        A = build_module(R, {"kind": "zmod_sum", "orders": spec["orders"][:1]})
    elif spec["kind"] == "direct_sum":
        A = build_module(R, spec["parts"][0])
    else:
        return None
    M = inst.module()
    return A, np.arange(M.order) % A.order


def _suite_split_projection(corpus, kind):
    claims = []
    for k in _kinds(kind):
        anchor = "appendix lemma (split projection)" if k == "rd" else "thm:direct sum (projection purity)"
        c = ClaimResult("prop-split-projection", anchor, kind=k, vocabulary=PASS_EXHAUSTIVE)
        if k == "cohn":
            c.note(COHN_NOTE)
        for inst in corpus:
            split = _first_split(inst)
            if split is None:
                continue
            A, proj = split
            M = inst.module()
            try:
                bad = None
                for N in pure_submodules(k, M):
                    img = Submodule(A, sum(1 << int(x) for x in np.unique(proj[N.elements()])))
                    if not is_pure(k, img, A).result:
                        bad = (N, img)
                        break
            except SizeLimitExceeded as exc:
                c.skip(inst.id, str(exc))
                continue
            c.record(inst.id, bad is None,
                     None if bad is None else {"N": _sub_json(bad[0]), "projection": _sub_json(bad[1])})
        claims.append(c)
    return claims


def _suite_extending_pe(corpus, kind):
    claims = []
    for k in _kinds(kind):
        c = ClaimResult("extending-implies-pe", "def:def PE", kind=k, vocabulary=PASS_EXHAUSTIVE)
        for inst in corpus:
            M = inst.module()
            try:
                e = is_extending(M).result
                p = pure_extending(k, M).result
            except SizeLimitExceeded as exc:
                c.skip(inst.id, str(exc))
                continue
            ok = (not e) or p
            c.record(inst.id, ok, None if ok else {"extending": e, "pure_extending": p},
                     {"extending": e, "pure_extending": p})
        claims.append(c)
    return claims


def _suite_morphic_hierarchy(corpus, kind):
    names = ("morphic", "quasi_morphic", "centrally_quasi_morphic",
             "centrally_morphic_functional", "abelian")
    c = ClaimResult("morphic-hierarchy", "sec:morphic hierarchy diagram", vocabulary=PASS_EXHAUSTIVE)
    for inst in corpus:
        M = inst.module()
        try:
            v = {n: endo_predicate(M, n).result for n in names}
        except SizeLimitExceeded as exc:
            c.skip(inst.id, str(exc))
            continue
        rules = {
            "morphic=>quasi_morphic": (not v["morphic"]) or v["quasi_morphic"],
            "cm_functional=>cqm": (not v["centrally_morphic_functional"]) or v["centrally_quasi_morphic"],
            "cqm=>quasi_morphic": (not v["centrally_quasi_morphic"]) or v["quasi_morphic"],
            "cqm=>abelian": (not v["centrally_quasi_morphic"]) or v["abelian"],
        }
        ok = all(rules.values())
        c.record(inst.id, ok, None if ok else {k: r for k, r in rules.items() if not r}, v)
    return [c]


SUITES: dict[str, Suite] = {}


def _register(sid: str, anchor: str, per_kind: bool, fn) -> None:
    if not anchor:
        raise ValueError(f"suite {sid} registered without an anchor")
    SUITES[sid] = Suite(sid, anchor, per_kind, fn)


_register("fitting", "prop:strongly pi-endoregular <=> abelian+strongly endoregular", False, _suite_fitting)
_register("purity-monotonicity", "sec:RD-purity", False, _suite_monotonicity)
_register("thm-direct-sum", "thm:direct sum", True, _suite_direct_sum)
_register("prop-summand-heredity", "prop:summandpurec1", True, _suite_summand_heredity)
_register("semisimple", "thm:fe2; cor:coropen", False, _suite_semisimple)
_register("cor-coropen", "cor:coropen", False, _suite_coropen)
_register("thm-cyclic-factor-pe", "thm:cyclic fac PE => uni. submod.", True, _suite_cyclic_factor)
_register("thm-nonsingular-pe-rickart", "thm:nonsingular PE <=> S-R-noeth", True, _suite_nonsingular_rickart)
_register("prop-indec-pure-uniform", "prop:indec. pure ext. => uni.", True, _suite_indec_pure_uniform)
_register("prop-fe1", "prop:fe1", True, _suite_fe1)
_register("thm-fe2-6", "thm:fe2", True, _suite_fe2)
_register("prop-vnr-extending", "prop:von-Neumann regular <=> purec1 -> c1", True, _suite_vnr_extending)
_register("prop-propopen", "prop:propopen", True, _suite_propopen)
_register("thm-main1", "thm:main1", False, lambda c, k: _suite_main(c, k, dual=False))
_register("thm-main2", "thm:main2", False, lambda c, k: _suite_main(c, k, dual=True))
_register("cqm-direction", "prop:CQM", False, _suite_cqm_direction)
_register("prop-sr-sdr", "prop:S-R <=> S-d-R", False, _suite_sr_sdr)
_register("prop-split-projection", "appendix lemma; thm:direct sum", True, _suite_split_projection)
_register("extending-implies-pe", "def:def PE", True, _suite_extending_pe)
_register("morphic-hierarchy", "sec:morphic hierarchy", False, _suite_morphic_hierarchy)


def run_suite(suite_id: str, corpus: list[Instance] | None = None, kind: str | None = None) -> Report:
    if suite_id not in SUITES:
        raise UnknownSuite(f"unknown suite {suite_id!r}; known: {', '.join(sorted(SUITES))}")
    suite = SUITES[suite_id]
    corpus = standard_corpus() if corpus is None else corpus
    claims = suite.run(corpus, kind if suite.per_kind else None)
    return Report(suite_id, claims, {"anchor": suite.anchor, "corpus_size": len(corpus)})


# -- proposition audit --------------------------------------------------------------

def _counter1_facts(M: FiniteModule) -> ClaimResult:
    R = M.ring
    E = end_ring(M)
    c = ClaimResult("counter1-centrally-morphic", "ex:counter1")
    c.note("two readings of centrally morphic are computed side by side: the functional one "
           "(central g with ker f = im g, im f = ker g) and the idempotent one "
           "(central idempotent e with ker f = eM, im f = (1-e)M)")
    vals = {}
    wits = {}
    for n in ("morphic", "quasi_morphic", "centrally_quasi_morphic",
              "centrally_morphic_functional", "centrally_morphic_idempotent"):
        v = endo_predicate(M, n)
        vals[n] = v.result
        wits[n] = v.witness
    vals["end_order"] = E.order
    vals["end_commutative"] = E.ring.is_commutative()
    vals["center_order"] = len(E.center())
    vals["end_as_multiplications"] = [R.fmt(int(E.maps[i][R.one])) for i in range(E.order)]
    c.fact("paper-counter1", vals, wits)
    return c


def _spe_table(M: FiniteModule) -> dict:
    E = end_ring(M)
    spe = endo_predicate(M, "strongly_pi_endoregular")
    end_reduced = (ring_predicate(E.ring, "reduced").result
                   if E.order <= get_config().max_ring_order else None)
    return {
        "(1) strongly_pi_endoregular": spe.result,
        "(2) abelian and strongly_pi_regular": endo_predicate(M, "abelian").result,
        "(3) chains stabilise": spe.result,
        "(4) fitting decomposition": spe.witness["all_decomposed"],
        "end_reduced": end_reduced,
        "end_order": E.order,
    }


def audit_propositions(corpus: list[Instance] | None = None) -> Report:
    """Truth values of both sides of each contested claim, with witnesses."""
    corpus = standard_corpus() if corpus is None else corpus
    byid = corpus_by_id(corpus)
    claims = [_counter1_facts(byid["paper-counter1"].module())]

    spe = ClaimResult("spe-items", "prop:strongly pi-endoregular <=> abelian+strongly endoregular")
    spe.note("a finite ring is strongly pi-regular, so item (2) reduces to End(M) being abelian")
    spe.note(FITTING_NOTE)
    for inst in corpus:
        try:
            spe.fact(inst.id, _spe_table(inst.module()))
        except SizeLimitExceeded as exc:
            spe.skip(inst.id, str(exc))
    claims.append(spe)

    f3 = ClaimResult("F3sq-fully-invariant", "ex:CQM example")
    if "paper-F3sq" in byid:
        M = byid["paper-F3sq"].module()
        f = linear_map(M, [[1, 1], [0, 0]])
        fi_ker = is_fully_invariant(f.kernel(), M)
        fi_im = is_fully_invariant(f.image(), M)
        vals = _spe_table(M)
        vals.update({"end_abelian": ring_predicate(end_ring(M).ring, "abelian").result,
                     "ker_fully_invariant": fi_ker.result, "im_fully_invariant": fi_im.result,
                     "centrally_quasi_morphic": endo_predicate(M, "centrally_quasi_morphic").result})
        f3.fact("paper-F3sq", vals, {"ker": fi_ker.witness, "im": fi_im.witness})
    claims.append(f3)

    rmk = ClaimResult("dehghanirmk", "rmk:dehghanirmk")
    M = byid["paper-counter1"].module()
    rmk.fact("paper-counter1", {
        "projective": module_predicate(M, "projective").result,
        "nonsingular": module_predicate(M, "nonsingular").result,
        "centrally_quasi_morphic": endo_predicate(M, "centrally_quasi_morphic").result,
        "centrally_morphic_idempotent": endo_predicate(M, "centrally_morphic_idempotent").result,
        "centrally_morphic_functional": endo_predicate(M, "centrally_morphic_functional").result,
        "end_commutative": end_ring(M).ring.is_commutative(),
    })
    claims.append(rmk)
    return Report("audit", claims, {"corpus_size": len(corpus)})


# -- counterexample search ------------------------------------------------------------

SEARCH_PROPERTIES = ("extending-closed-under-sum", "coropen1-needs-vnr",
                     "direct-sum-ideal", "direct-sum-rd")


def _search_rings(max_ring: int) -> list[dict]:
    specs = []
    for n in range(2, max_ring + 1):
        specs.append({"kind": "zmod", "n": n})
    for p, mod in ((2, [0, 0, 1]), (3, [0, 0, 1]), (2, [0, 0, 0, 1]), (2, [1, 1, 1])):
        specs.append({"kind": "poly_quot", "p": p, "modulus": mod})
    specs.append({"kind": "kxy_m2", "p": 2})
    specs.append({"kind": "upper_tri", "base": {"kind": "zmod", "n": 2}, "n": 2})
    specs.append({"kind": "matrix", "base": {"kind": "gf", "p": 2}, "n": 2})
    specs.append({"kind": "product", "factors": [{"kind": "zmod", "n": 2}, {"kind": "zmod", "n": 4}]})
    specs.append({"kind": "product", "factors": [{"kind": "gf", "p": 2}, {"kind": "gf", "p": 2}]})
    out = []
    for s in specs:
        try:
            R = build_ring(s)
        except Exception:
            continue
        if R.order <= max_ring:
            out.append((R.order, json.dumps(s, sort_keys=True), s))
    out.sort(key=lambda t: (t[0], t[1]))
    return [s for _, _, s in out]


def _search_modules(R, max_module: int) -> list[tuple[str, dict]]:
    """Small modules over R: regular, free powers, cyclic quotients of R, and for zmod rings the zmod sums."""
    specs: list[dict] = []
    n = 1
    while R.order ** n <= max_module:
        specs.append({"kind": "free", "n": n})
        n += 1
    if R.order <= max_module:
        Rm = build_module(R, {"kind": "regular"})
        for N in submodules(Rm):
            if not N.is_zero() and not N.is_whole():
                specs.append({"kind": "quotient", "parent": {"kind": "regular"},
                              "sub_generators": [int(x) for x in _gens(N)]})
    if R.codec["kind"] == "zmod":
        n_ = R.codec["n"]
        divs = [d for d in range(2, n_ + 1) if n_ % d == 0]
        for r in (1, 2):
            for combo in itertools.combinations_with_replacement(divs, r):
                if int(np.prod(combo)) <= max_module:
                    specs.append({"kind": "zmod_sum", "orders": list(combo)})
    out = []
    seen = set()
    for s in specs:
        key = json.dumps(s, sort_keys=True)
        if key in seen:
            continue
        seen.add(key)
        try:
            M = build_module(R, s)
        except SizeLimitExceeded:
            continue
        if 1 < M.order <= max_module:
            out.append((key, s))
    return out


def _gens(N: Submodule) -> list[int]:
    return generators_of(N)


def counterexample_search(property_id: str, max_ring: int = 16, max_module: int = 64) -> dict:
    """Scan buildable instances within bounds for a violation of ``property_id``."""
    if property_id not in SEARCH_PROPERTIES:
        raise UnknownSuite(f"unknown search property {property_id!r}; known: {', '.join(SEARCH_PROPERTIES)}")
    checked = 0
    for rs in _search_rings(max_ring):
        R = build_ring(rs)
        mods = _search_modules(R, max_module)
        if property_id == "coropen1-needs-vnr":
            if ring_predicate(R, "von_neumann_regular").result:
                continue
            for key, ms in mods:
                M = build_module(R, ms)
                if len(minimal_generators(M)) > 1:
                    continue
                checked += 1
                try:
                    if not all(is_extending(Q).result for _, Q in _factor_modules(M)):
                        continue
                    if not is_extending(M).result:
                        continue
                    parts = indecomposable_decomposition(M)
                    bad = [P for P in parts if not module_predicate(as_module(P), "uniform").result]
                except SizeLimitExceeded:
                    continue
                if bad:
                    return {"property": property_id, "status": "witness", "checked": checked,
                            "witness": {"ring": rs, "module": ms,
                                        "non_uniform_part": bad[0].elements().tolist()}}
            continue
        kind = {"direct-sum-ideal": "ideal", "direct-sum-rd": "rd"}.get(property_id)
        for (k1, s1), (k2, s2) in itertools.combinations_with_replacement(mods, 2):
            M1, M2 = build_module(R, s1), build_module(R, s2)
            if M1.order * M2.order > max_module:
                continue
            checked += 1
            try:
                S = build_module(R, {"kind": "direct_sum", "parts": [s1, s2]})
                if kind is None:
                    ok1, ok2 = is_extending(M1).result, is_extending(M2).result
                    bad = ok1 and ok2 and not is_extending(S).result
                else:
                    ok1 = is_pure_extending(kind, M1).result
                    ok2 = is_pure_extending(kind, M2).result
                    bad = (ok1 and ok2) != is_pure_extending(kind, S).result
            except SizeLimitExceeded:
                continue
            if bad:
                wit = is_extending(S) if kind is None else is_pure_extending(kind, S)
                return {"property": property_id, "status": "witness", "checked": checked,
                        "witness": {"ring": rs, "M1": s1, "M2": s2, "sum_verdict": wit.to_json()}}
    return {"property": property_id, "status": "exhausted",
            "bounds": {"max_ring": max_ring, "max_module": max_module}, "checked": checked}
