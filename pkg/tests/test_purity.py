from __future__ import annotations

import pytest

import oracles as O
from puremod.errors import NonUnique, UnknownPredicate
from puremod.modules import build_module, socle, submodule_generated, submodules
from puremod.purity import (COHN_NOTE, is_pure, is_pure_essential, is_pure_uniform,
                            pure_submodules, purification, system_transfer_check)
from puremod.rings import build_ring, right_ideals


def _oracle_pure_sets(M):
    madd, act = M.add.tolist(), M.action.tolist()
    subs = O.submodules_by_cyclic_sums(madd, act)
    ideals = [frozenset(I.elements()) for I in right_ideals(M.ring)]
    key = lambda S: tuple(sorted(S))  # noqa: E731
    return {
        "rd": sorted(key(S) for S in subs if O.rd_pure(S, madd, act, M.ring.order)),
        "ideal": sorted(key(S) for S in subs if O.ideal_pure(S, madd, act, ideals)),
        "cohn": sorted(key(S) for S in O.summands(madd, subs)),
    }


@pytest.mark.parametrize("fixture", ["z2z8", "dual", "dual2", "f3sq", "kxy2"])
def test_pure_submodules_match_definitions(fixture, request):
    M = request.getfixturevalue(fixture)
    expected = _oracle_pure_sets(M)
    for kind in ("rd", "ideal", "cohn"):
        got = sorted(tuple(int(x) for x in S.elements()) for S in pure_submodules(kind, M))
        assert got == expected[kind], kind


def test_kxy_diagonal_is_rd_pure_not_ideal_pure(kxy2):
    N = submodule_generated(kxy2, [kxy2.encode([2, 4])])
    assert is_pure("rd", N).result
    v = is_pure("ideal", N)
    assert not v.result
    assert v.witness["ideal"]["elements"] == [0, 2, 4, 6]
    assert v.witness["ideal"]["generators"] == ["x", "y"]
    # the element that separates M·I ∩ N from N·I lies in N
    assert v.witness["element"]["index"] in N
    assert kxy2.encode([2, 0]) not in N
    assert not is_pure("cohn", N).result


def test_frozen_pure_counts(kxy2):
    counts = {k: len(pure_submodules(k, kxy2)) for k in ("rd", "ideal", "cohn")}
    assert counts == {"rd": 22, "ideal": 14, "cohn": 14}


def test_whole_and_zero_are_pure(z2z8):
    for kind in ("rd", "ideal", "cohn"):
        assert is_pure(kind, z2z8.whole()).result
        assert is_pure(kind, z2z8.zero_submodule()).result


def test_cohn_pure_submodules_of_dual_numbers(dual):
    assert [S.elements().tolist() for S in pure_submodules("cohn", dual)] == [[0], [0, 1, 2, 3]]
    assert COHN_NOTE in is_pure("cohn", socle(dual)).notes


def test_semisimple_every_submodule_ideal_pure(f3sq):
    assert len(pure_submodules("ideal", f3sq)) == len(submodules(f3sq))


def test_system_transfer(dual, z2z8):
    xR = socle(dual)
    v = system_transfer_check(xR, dual, max_vars=1, max_eqs=1)
    assert not v.result
    assert system_transfer_check(dual.zero_submodule(), dual, 1, 1).result
    T = submodule_generated(z2z8, [z2z8.encode([1, 0])])
    assert system_transfer_check(T, z2z8, 2, 2).result


def test_purification(z2z8, kxy2):
    for kind in ("rd", "ideal", "cohn"):
        assert purification(kind, z2z8.whole()).is_whole()
        assert purification(kind, z2z8.zero_submodule()).is_zero()
    N = submodule_generated(kxy2, [kxy2.encode([2, 0])])
    with pytest.raises(NonUnique) as exc:
        purification("ideal", N)
    assert "4" in str(exc.value)


def test_pure_uniform(dual, dual2):
    assert is_pure_uniform("cohn", dual).result
    v = is_pure_uniform("cohn", dual2)
    assert not v.result
    # R⊕0 and 0⊕R are pure and meet in zero
    assert v.witness["N"]["elements"] == [0, 1, 2, 3]
    assert v.witness["P"]["elements"] == [0, 4, 8, 12]


def test_pure_essential(dual):
    assert is_pure_essential("cohn", socle(dual)).result


def test_unknown_kind(dual):
    with pytest.raises(UnknownPredicate):
        is_pure("weird", dual.whole())


def test_kinds_are_case_insensitive(dual):
    assert is_pure("Cohn", dual.whole()).result
    assert is_pure("RD", dual.whole()).result
