"""Walk through the four small worked examples and print what the package computes.

    python3 demos/worked_examples.py
"""

from __future__ import annotations

from puremod.endo import (central_commutator_check, endo_predicate, fitting_index,
                          is_fully_invariant, matrix_of)
from puremod.homs import end_ring, linear_map
from puremod.modules import build_module, submodule_generated, submodules
from puremod.purity import is_pure
from puremod.rings import build_ring
from puremod.structure import is_extending, is_pure_extending


def z2_z8():
    print("== Z2 + Z8 over Z8")
    M = build_module(build_ring({"kind": "zmod", "n": 8}), {"kind": "zmod_sum", "orders": [2, 8]})
    ext = is_extending(M)
    print(f"{len(submodules(M))} submodules; extending: {ext.result}")
    N = submodule_generated(M, ext.witness["submodule"])
    print("  not essential in any summand:", " ".join(N.describe()))
    print("Cohn pure-extending:", is_pure_extending("cohn", M).result)


def kxy():
    print("\n== N = {(xa, ya)} inside R + R, R = k[x,y]/(x,y)^2")
    M = build_module(build_ring({"kind": "kxy_m2", "p": 2}), {"kind": "free", "n": 2})
    N = submodule_generated(M, [M.encode([2, 4])])
    print("N =", " ".join(N.describe()))
    print("RD-pure:", is_pure("rd", N).result)
    v = is_pure("ideal", N)
    print("ideal-pure:", v.result)
    print("  ideal:", v.witness["ideal"]["values"], " element of IM ∩ N outside IN:",
          v.witness["element"]["value"])


def counter1():
    print("\n== R = F2[x]/(x^2) as a module over itself")
    M = build_module(build_ring({"kind": "poly_quot", "p": 2, "modulus": [0, 0, 1]}),
                     {"kind": "regular"})
    R, E = M.ring, end_ring(M)
    as_r = [R.fmt(int(E.maps[i][R.one])) for i in range(E.order)]
    print("End(R) acts as left multiplication by", as_r)
    qm = endo_predicate(M, "quasi_morphic")
    for w in qm.witness["per_f"]:
        print(f"  f = {as_r[w['f']]:<4} g = {as_r[w['g']]:<4} h = {as_r[w['h']]}")
    for name in ("centrally_morphic_functional", "centrally_morphic_idempotent"):
        print(f"{name}: {endo_predicate(M, name).result}")


def f3_squared():
    print("\n== F3^2")
    M = build_module(build_ring({"kind": "gf", "p": 3}), {"kind": "free", "n": 2})
    f = linear_map(M, [[1, 1], [0, 0]])
    g = linear_map(M, [[0, -1], [0, 1]])
    t = linear_map(M, [[0, 1], [0, 0]])
    r = linear_map(M, [[1, 0], [1, 0]])
    print("ker f =", f.kernel().describe(), " im f =", f.image().describe())
    print("[g, t] =", matrix_of(central_commutator_check(M, g, t)), "(entries mod 3)")
    fi = is_fully_invariant(f.kernel(), M, maps=[r])
    print("ker f fully invariant:", fi.result)
    fit = fitting_index(M, f)
    print(f"Fitting index {fit.n}, decomposed: {fit.decomposed}")
    for name in ("abelian", "centrally_quasi_morphic", "endoregular"):
        print(f"{name}: {endo_predicate(M, name).result}")


if __name__ == "__main__":
    z2_z8()
    kxy()
    counter1()
    f3_squared()
