from __future__ import annotations

import numpy as np
import pytest

import oracles as O
from conftest import F2X, GF2, GF3, KXY, MAT2, PROD23, UT2, Z8
from puremod.errors import InvalidSpec, NonPrimeModulus, SizeLimitExceeded
from puremod.rings import (RING_PREDICATES, build_ring, center, idempotents,
                           is_essential_right_ideal, jacobson_radical, right_ideals,
                           ring_axiom_violations, ring_predicate)

ORACLE_TABLES = [
    (Z8, O.zmod_tables(8)),
    (F2X, O.dual_numbers_tables(2)),
    (KXY, O.kxy_tables(2)),
    (MAT2, O.matrix2_tables(2)),
    (UT2, O.upper2_tables(2)),
]


def _bits(R, bits):
    return [i for i in range(R.order) if bits >> i & 1]


@pytest.mark.parametrize("spec,tables", ORACLE_TABLES, ids=lambda v: str(v)[:30])
def test_tables_match_independent_construction(spec, tables):
    R = build_ring(spec)
    add, mul = tables
    assert (R.add == np.array(add)).all()
    assert (R.mul == np.array(mul)).all()


@pytest.mark.parametrize("spec,tables", ORACLE_TABLES, ids=lambda v: str(v)[:30])
def test_ideals_idempotents_center_match_brute_force(spec, tables):
    R = build_ring(spec)
    add, mul = tables
    assert sorted(tuple(I.elements()) for I in right_ideals(R)) == \
        sorted(tuple(sorted(S)) for S in O.right_ideals(add, mul))
    assert sorted(idempotents(R)) == O.idempotents(mul)
    assert _bits(R, center(R)) == O.center(mul)


def test_zmod8_basics():
    R = build_ring(Z8)
    assert R.order == 8
    assert R.add[1, 7] == R.zero
    assert [I.elements() for I in right_ideals(R)] == [[0], [0, 4], [0, 2, 4, 6], list(range(8))]
    assert jacobson_radical(R).elements() == [0, 2, 4, 6]


def test_dual_numbers():
    R = build_ring(F2X)
    x = R.encode([0, 1])
    assert R.order == 4 and x == 2
    assert R.mul[x, x] == R.zero
    assert [I.elements() for I in right_ideals(R)] == [[0], [0, 2], [0, 1, 2, 3]]
    assert ring_predicate(R, "local").result
    assert idempotents(R) == [0, 1]
    assert jacobson_radical(R).elements() == [0, 2]


def test_kxy_products_of_radical_elements_vanish():
    R = build_ring(KXY)
    x, y = 2, 4
    assert R.order == 8
    for a in (x, y, R.add[x, y]):
        for b in (x, y):
            assert R.mul[a, b] == R.zero
    assert R.fmt(x) == "x" and R.fmt(y) == "y"


def test_fields_and_semisimple():
    R = build_ring(GF3)
    assert [I.elements() for I in right_ideals(R)] == [[0], [0, 1, 2]]
    assert idempotents(R) == [0, 1]
    assert jacobson_radical(R).elements() == [0]
    assert ring_predicate(build_ring(GF2), "von_neumann_regular").result
    assert len(idempotents(build_ring(PROD23))) == 4


def test_matrix_center_and_abelian():
    R = build_ring(MAT2)
    assert _bits(R, center(R)) == [0, 9]      # zero and identity
    v = ring_predicate(build_ring({"kind": "matrix", "base": GF3, "n": 2}), "abelian")
    assert not v.result
    e = v.witness["idempotent"]
    U = build_ring({"kind": "matrix", "base": GF3, "n": 2})
    assert U.mul[e, e] == e


def test_upper_triangular_center_contains_zero_and_one():
    R = build_ring(UT2)
    c = _bits(R, center(R))
    assert R.zero in c and R.one in c


def test_essential_right_ideals():
    R = build_ring(Z8)
    ideals = right_ideals(R)
    assert is_essential_right_ideal(R, ideals[-1])
    assert is_essential_right_ideal(R, ideals[2])          # 2R contains 4
    assert not is_essential_right_ideal(build_ring(GF3), right_ideals(build_ring(GF3))[0])


@pytest.mark.parametrize("spec", [Z8, F2X, KXY, MAT2, UT2, PROD23, GF3,
                                  {"kind": "poly_quot", "p": 3, "modulus": [1, 0, 1]}])
def test_ring_axioms_hold(spec):
    assert ring_axiom_violations(build_ring(spec)) == []


@pytest.mark.parametrize("name", RING_PREDICATES)
def test_predicates_return_verdicts(name):
    v = ring_predicate(build_ring(UT2), name)
    assert isinstance(v.result, bool)


def test_invalid_specs():
    with pytest.raises(NonPrimeModulus):
        build_ring({"kind": "gf", "p": 4})
    with pytest.raises(InvalidSpec):
        build_ring({"kind": "nope"})
    with pytest.raises(SizeLimitExceeded):
        build_ring({"kind": "zmod", "n": 10_000})
