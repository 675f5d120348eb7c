from __future__ import annotations

import pytest

import oracles as O
from conftest import F2X, GF2
from puremod.modules import build_module, socle, submodule_generated, submodules
from puremod.purity import COHN_TRIVIAL_NOTE, pure_submodules
from puremod.rings import build_ring
from puremod.structure import (condition_predicate, is_essential, is_essential_lattice,
                               is_extending, is_pure_extending)


def _oracle(M):
    madd = M.add.tolist()
    subs = O.submodules_by_cyclic_sums(madd, M.action.tolist())
    return madd, subs


@pytest.mark.parametrize("fixture", ["z2z8", "dual", "dual2", "f3sq"])
def test_essential_agrees_with_lattice_definition(fixture, request):
    M = request.getfixturevalue(fixture)
    subs = submodules(M)
    for N in subs:
        for D in subs:
            if N <= D:
                assert is_essential(N, M, within=D).result == is_essential_lattice(N, D)


def test_essential_examples(dual, z2z8):
    assert is_essential(dual.whole()).result
    assert is_essential(socle(dual)).result
    T = submodule_generated(z2z8, [z2z8.encode([1, 0])])
    v = is_essential(T)
    assert not v.result
    assert v.witness["element"]["value"] == "(0,1)"


@pytest.mark.parametrize("fixture", ["z2z8", "dual", "dual2", "f3sq", "kxy2"])
def test_extending_matches_brute_force(fixture, request):
    M = request.getfixturevalue(fixture)
    madd, subs = _oracle(M)
    assert is_extending(M).result == O.is_extending_over(subs, madd, subs)
    for kind in ("rd", "ideal", "cohn"):
        cands = [frozenset(int(x) for x in P.elements()) for P in pure_submodules(kind, M)]
        assert is_pure_extending(kind, M).result == O.is_extending_over(cands, madd, subs), kind


def test_pe_not_extending_example(z2z8):
    v = is_extending(z2z8)
    assert not v.result
    assert v.witness["submodule"] == [0, 5, 8, 13]        # ⟨(1,2)⟩
    pe = is_pure_extending("cohn", z2z8)
    assert pe.result and COHN_TRIVIAL_NOTE in pe.notes


def test_frozen_kxy_verdicts(kxy2):
    assert not is_pure_extending("rd", kxy2).result
    assert is_pure_extending("ideal", kxy2).result
    assert not is_extending(kxy2).result


def test_injective_pair_is_extending(dual2):
    assert is_extending(dual2).result


def test_uniform_modules_are_extending(dual):
    assert is_extending(dual).result


def test_conditions_on_semisimple(f3sq):
    for name in ("C2", "C3", "D2_paper"):
        assert condition_predicate(f3sq, name).result


def test_conditions_z2z8(z2z8):
    madd, subs = _oracle(z2z8)
    sums = O.summands(madd, subs)
    d2 = all(A & B in sums for A in sums for B in sums)
    assert condition_predicate(z2z8, "D2_paper").result == d2
    assert not condition_predicate(z2z8, "C2").result
    c3 = all(O.sum_of(madd, A, B) in sums for A in sums for B in sums if A & B == {0})
    assert condition_predicate(z2z8, "C3").result == c3
    assert not c3
    assert condition_predicate(z2z8, "pure_split", "rd").result


def test_pure_split_cohn(dual):
    assert condition_predicate(dual, "pure_split", "cohn").result


def test_cohn_pe_everywhere_small():
    for spec in ({"kind": "free", "n": 1}, {"kind": "free", "n": 3}):
        assert is_pure_extending("cohn", build_module(build_ring(GF2), spec)).result
    assert is_pure_extending("cohn", build_module(build_ring(F2X), {"kind": "free", "n": 2})).result
