from __future__ import annotations

import numpy as np
import pytest

import oracles as O
from conftest import GF2, MAT2, PROD23, UT2
from puremod.endo import (ENDO_PREDICATES, central_commutator_check, endo_predicate,
                          fitting_index, is_fully_invariant, matrix_of, power_predicate)
from puremod.homs import end_ring, identity, linear_map
from puremod.modules import build_module, socle, submodule_generated, submodules
from puremod.rings import build_ring, ring_predicate

ORACLE_NAMES = ("rickart", "d_rickart", "endoregular", "morphic", "quasi_morphic",
                "centrally_quasi_morphic", "centrally_morphic_functional",
                "centrally_morphic_idempotent", "abelian")


@pytest.fixture(scope="module")
def extra_modules():
    return {
        "ut2": build_module(build_ring(UT2), {"kind": "regular"}),
        "mat2": build_module(build_ring(MAT2), {"kind": "regular"}),
        "prod23": build_module(build_ring(PROD23), {"kind": "regular"}),
        "gf2sq": build_module(build_ring(GF2), {"kind": "free", "n": 2}),
    }


def _all_modules(request, extra):
    mods = {name: request.getfixturevalue(name) for name in ("z2z8", "dual", "dual2", "f3sq")}
    mods.update(extra)
    return mods


def test_endo_predicates_match_definitions(request, extra_modules):
    for label, M in _all_modules(request, extra_modules).items():
        subs = O.submodules_by_cyclic_sums(M.add.tolist(), M.action.tolist())
        facts = O.endo_facts(M.add.tolist(), M.action.tolist(), subs)
        for name in ORACLE_NAMES:
            assert endo_predicate(M, name).result == facts[name], (label, name)


def test_counter1_verdicts(dual):
    qm = endo_predicate(dual, "quasi_morphic")
    assert qm.result
    R = dual.ring
    E = end_ring(dual)
    as_r = [int(E.maps[i][R.one]) for i in range(E.order)]
    cases = {R.fmt(as_r[w["f"]]): (R.fmt(as_r[w["g"]]), R.fmt(as_r[w["h"]]))
             for w in qm.witness["per_f"]}
    assert cases == {"0": ("1", "1"), "1": ("0", "0"), "1+x": ("0", "0"), "x": ("x", "x")}
    cmi = endo_predicate(dual, "cm_idempotent")
    assert not cmi.result
    assert R.fmt(as_r[cmi.witness["f"]]) == "x"
    assert endo_predicate(dual, "cm_functional").result
    assert endo_predicate(dual, "cqm").result


def test_f3sq_verdicts(f3sq):
    expected = {"rickart": True, "d_rickart": True, "endoregular": True, "spe": True,
                "morphic": True, "quasi_morphic": True, "cqm": False, "cm_functional": False,
                "cm_idempotent": False, "abelian": False}
    assert {k: endo_predicate(f3sq, k).result for k in expected} == expected


def test_endoregular_is_rickart_and_d_rickart(request, extra_modules):
    for M in _all_modules(request, extra_modules).values():
        both = endo_predicate(M, "rickart").result and endo_predicate(M, "d_rickart").result
        assert endo_predicate(M, "endoregular").result == both


def test_fitting_index(dual, f3sq):
    E = end_ring(dual)
    x_map = E.decode(int(np.flatnonzero(E.maps[:, dual.ring.one] == 2)[0]))
    r = fitting_index(dual, x_map)
    assert (r.n, r.kernel.is_whole(), r.image.is_zero(), r.decomposed) == (2, True, True, True)
    r = fitting_index(f3sq, identity(f3sq))
    assert (r.n, r.kernel.is_zero(), r.image.is_whole(), r.decomposed) == (1, True, True, True)
    f = linear_map(f3sq, [[1, 1], [0, 0]])
    r = fitting_index(f3sq, f)
    assert r.n == 1 and r.decomposed
    assert r.kernel.describe() == ["(0,0)", "(2,1)", "(1,2)"]
    assert r.image.describe() == ["(0,0)", "(1,0)", "(2,0)"]


def test_fully_invariant(f3sq, z2z8):
    f = linear_map(f3sq, [[1, 1], [0, 0]])
    r = linear_map(f3sq, [[1, 0], [1, 0]])
    v = is_fully_invariant(f.kernel(), f3sq, maps=[r])
    assert not v.result
    v1 = f3sq.encode([1, 2])                      # (1, -1)
    assert f3sq.decode(int(r.table[v1])) == [1, 1]
    assert not is_fully_invariant(f.image(), f3sq).result
    assert is_fully_invariant(f3sq.whole(), f3sq).result
    for M in (f3sq, z2z8):
        assert is_fully_invariant(socle(M), M).result


def test_commutator(f3sq):
    g = linear_map(f3sq, [[0, -1], [0, 1]])       # projection onto span{(1,-1)} along span{(1,0)}
    t = linear_map(f3sq, [[0, 1], [0, 0]])
    c = central_commutator_check(f3sq, g, t)
    assert matrix_of(c) == [[0, 2], [0, 0]]
    assert matrix_of(central_commutator_check(f3sq, identity(f3sq), t)) == [[0, 0], [0, 0]]
    # gt - tg has trace 0, so it can never equal a matrix of trace 1
    m = matrix_of(c)
    assert (m[0][0] + m[1][1]) % 3 == 0


def test_matrix_of_roundtrip(f3sq):
    for mat in ([[1, 2], [0, 1]], [[2, 0], [1, 1]]):
        assert matrix_of(linear_map(f3sq, mat)) == mat


def test_power_predicates(dual):
    G = build_module(build_ring(GF2), {"kind": "regular"})
    assert power_predicate(G, 2, "rickart").result
    v = power_predicate(dual, 2, "rickart")
    assert not v.result and v.witness["kernel"] == [0, 2]
    assert any("proxy" in n for n in v.notes)
    frozen = {name: power_predicate(dual, 2, name).result
              for name in ("rickart", "d_rickart", "C2", "D2_paper")}
    assert frozen == {"rickart": False, "d_rickart": False, "C2": True, "D2_paper": False}


def test_power_one_matches_end_route(request, extra_modules):
    from puremod.structure import condition_predicate
    for M in _all_modules(request, extra_modules).values():
        for name in ("rickart", "d_rickart"):
            assert power_predicate(M, 1, name).result == endo_predicate(M, name).result
        for name in ("C2", "D2_paper"):
            assert power_predicate(M, 1, name).result == condition_predicate(M, name).result


def test_end_of_f3sq_not_abelian(f3sq):
    assert not ring_predicate(end_ring(f3sq).ring, "abelian").result


def test_every_predicate_has_a_verdict(z2z8):
    for name in ENDO_PREDICATES:
        assert isinstance(endo_predicate(z2z8, name).result, bool)


def test_kernel_submodule_sanity(f3sq):
    f = linear_map(f3sq, [[1, 1], [0, 0]])
    assert f.kernel() in submodules(f3sq)
    assert f.kernel() == submodule_generated(f3sq, [f3sq.encode([1, 2])])
