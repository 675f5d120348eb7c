"""Predicates read off End(M): Rickart family, Fitting, morphic hierarchy, powers."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._bits import memo
from .config import get_config
from .errors import SizeLimitExceeded, UnknownPredicate
from .homs import EndomorphismRing, Homomorphism, embeds, end_ring, is_isomorphic
from .modules import FiniteModule, Submodule, as_module, power, quotient, submodules, summands
from .rings import FiniteRing
from .structure import condition_predicate
from .verdict import Verdict

ENDO_PREDICATES = (
    "rickart", "d_rickart", "endoregular", "strongly_pi_endoregular", "morphic",
    "quasi_morphic", "centrally_quasi_morphic", "centrally_morphic_functional",
    "centrally_morphic_idempotent", "abelian",
)

ALIASES = {
    "spe": "strongly_pi_endoregular",
    "cqm": "centrally_quasi_morphic",
    "cm_functional": "centrally_morphic_functional",
    "cm_idempotent": "centrally_morphic_idempotent",
}

POWER_PREDICATES = ("rickart", "d_rickart", "C2", "D2_paper")

PROXY_NOTE = "finite-power proxy k={k}: evaluated on M^{k}, not a statement about all direct sums"

# per-f witness lists are attached only for endomorphism rings up to this size
_WITNESS_LIST_LIMIT = 256


# -- bulk kernel / image data --------------------------------------------------

@dataclass
class _KerIm:
    ker: list[bytes]
    im: list[bytes]
    ker_size: np.ndarray
    im_size: np.ndarray


def _pack(mask: np.ndarray) -> list[bytes]:
    packed = np.packbits(mask, axis=1, bitorder="little")
    return [row.tobytes() for row in packed]


def _image_mask(maps: np.ndarray, order: int) -> np.ndarray:
    n = maps.shape[0]
    mask = np.zeros((n, order), dtype=bool)
    mask[np.repeat(np.arange(n), maps.shape[1]), maps.ravel()] = True
    return mask


def _ker_im(E: EndomorphismRing) -> _KerIm:
    M = E.module

    def compute():
        kmask = E.maps == M.zero
        imask = _image_mask(E.maps, M.order)
        return _KerIm(_pack(kmask), _pack(imask), kmask.sum(1), imask.sum(1))

    return memo.get(("kerim", M.digest, E.order), compute)


def _bytes_to_elements(b: bytes, order: int) -> list[int]:
    bits = np.unpackbits(np.frombuffer(b, dtype=np.uint8), bitorder="little")[:order]
    return np.flatnonzero(bits).tolist()


def _central(E: EndomorphismRing) -> np.ndarray:
    return memo.get(("end_center", E.module.digest, E.order), E.center)


def _first_index(keys: list[bytes], allowed=None) -> dict[bytes, int]:
    out: dict[bytes, int] = {}
    idx = range(len(keys)) if allowed is None else allowed
    for i in idx:
        out.setdefault(keys[int(i)], int(i))
    return out


def _fail(E: EndomorphismRing, f: int, **extra) -> Verdict:
    w = {"f": int(f), "table": E.maps[f].tolist()}
    w.update(extra)
    return Verdict(False, w)


def _ok(E: EndomorphismRing, per_f: list | None, **extra) -> Verdict:
    w: dict = {"end_order": E.order}
    if per_f is not None and E.order <= _WITNESS_LIST_LIMIT:
        w["per_f"] = per_f
    w.update(extra)
    return Verdict(True, w)


# -- predicates ----------------------------------------------------------------

def endo_predicate(M: FiniteModule, name: str) -> Verdict:
    name = ALIASES.get(name, name)
    checks = {
        "rickart": lambda E: _rickart(E, dual=False),
        "d_rickart": lambda E: _rickart(E, dual=True),
        "endoregular": _endoregular,
        "strongly_pi_endoregular": _spe,
        "morphic": _morphic,
        "quasi_morphic": lambda E: _quasi_morphic(E, central=False),
        "centrally_quasi_morphic": lambda E: _quasi_morphic(E, central=True),
        "centrally_morphic_functional": lambda E: _morphic(E, central=True),
        "centrally_morphic_idempotent": _cm_idempotent,
        "abelian": _abelian,
    }
    if name not in checks:
        raise UnknownPredicate(f"unknown endomorphism predicate {name!r}; expected one of {ENDO_PREDICATES}")
    key = ("endo_predicate", name, M.digest, get_config().hom_budget)
    return memo.get(key, lambda: checks[name](end_ring(M)))


def _summand_keys(E: EndomorphismRing) -> dict[bytes, int]:
    """Summands of M are exactly the images of idempotent endomorphisms."""
    ki = _ker_im(E)
    return _first_index(ki.im, E.idempotents)


def _rickart(E: EndomorphismRing, dual: bool) -> Verdict:
    ki = _ker_im(E)
    keys = ki.im if dual else ki.ker
    summ = _summand_keys(E)
    per_f = []
    for f in range(E.order):
        e = summ.get(keys[f])
        if e is None:
            what = "image" if dual else "kernel"
            return _fail(E, f, **{what: _bytes_to_elements(keys[f], E.module.order)})
        per_f.append({"f": f, "e": e})
    return _ok(E, per_f)


def _endoregular(E: EndomorphismRing) -> Verdict:
    """End(M) von Neumann regular: every a has some b with a∘b∘a = a."""
    H = E.maps
    gens = E.gens
    per_f = []
    for a in range(E.order):
        target = H[a, gens]
        # (a∘b∘a)(g) = a(b(a(g))) for every candidate b at once
        vals = H[a][H[:, target]]
        hits = np.flatnonzero((vals == target).all(axis=1))
        if hits.size == 0:
            return _fail(E, a)
        per_f.append({"f": a, "inner_inverse": int(hits[0])})
    return _ok(E, per_f)


@dataclass
class FittingResult:
    n: int
    kernel: Submodule
    image: Submodule
    decomposed: bool

    def to_json(self) -> dict:
        return {"n": self.n, "kernel": self.kernel.elements().tolist(),
                "image": self.image.elements().tolist(), "decomposed": self.decomposed}


def fitting_index(M: FiniteModule, f: Homomorphism) -> FittingResult:
    """Least n ≥ 1 with ker fⁿ = ker fⁿ⁺¹ and im fⁿ = im fⁿ⁺¹, and whether M = ker fⁿ ⊕ im fⁿ."""
    n, powered = _fitting_all(M, np.asarray(f.table)[None, :])
    t = powered[0]
    ker = Homomorphism(M, M, t).kernel()
    img = Homomorphism(M, M, t).image()
    decomposed = ker.members & img.members == M.zero_bits and ker.size * img.size == M.order
    return FittingResult(int(n[0]), ker, img, bool(decomposed))


def _fitting_all(M: FiniteModule, maps: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Fitting index of every row of ``maps`` and the corresponding power fⁿ."""
    count = maps.shape[0]
    P = maps.copy()
    ker = (P == M.zero).sum(1)
    n = np.zeros(count, dtype=np.int64)
    out = P.copy()
    step = 1
    while (n == 0).any():
        if step > M.order:
            raise AssertionError("Fitting chain failed to stabilise")
        nxt = np.take_along_axis(maps, P, axis=1)
        ker_next = (nxt == M.zero).sum(1)
        # |ker| grows and |im| = |M|/|ker| shrinks, so equal kernel sizes mean both chains stopped
        done = (n == 0) & (ker_next == ker)
        n[done] = step
        out[done] = P[done]
        P, ker = nxt, ker_next
        step += 1
    return n, out


def _spe(E: EndomorphismRing) -> Verdict:
    M = E.module
    n, powered = _fitting_all(M, E.maps)
    kmask = powered == M.zero
    imask = _image_mask(powered, M.order)
    overlap = (kmask & imask).sum(1)
    decomposed = (overlap == 1) & (kmask.sum(1) * imask.sum(1) == M.order)
    per_f = [{"f": i, "n": int(n[i]), "decomposed": bool(decomposed[i])} for i in range(E.order)]
    v = _ok(E, per_f, max_index=int(n.max()), all_decomposed=bool(decomposed.all()))
    if not decomposed.all():
        bad = int(np.flatnonzero(~decomposed)[0])
        v.notes.append(f"endomorphism {bad} stabilises without M = ker fⁿ ⊕ im fⁿ")
    return v


def _morphic(E: EndomorphismRing, central: bool = False) -> Verdict:
    """∀f ∃g (central if asked): ker f = im g and im f = ker g."""
    ki = _ker_im(E)
    allowed = _central(E) if central else range(E.order)
    pairs: dict[tuple[bytes, bytes], int] = {}
    for g in allowed:
        pairs.setdefault((ki.im[int(g)], ki.ker[int(g)]), int(g))
    per_f = []
    for f in range(E.order):
        g = pairs.get((ki.ker[f], ki.im[f]))
        if g is None:
            return _fail(E, f, central=central)
        per_f.append({"f": f, "g": g})
    return _ok(E, per_f, central=central)


def _quasi_morphic(E: EndomorphismRing, central: bool) -> Verdict:
    """∀f ∃g,h: ker f = im g and im f = ker h."""
    ki = _ker_im(E)
    allowed = _central(E) if central else None
    by_im = _first_index(ki.im, allowed)
    by_ker = _first_index(ki.ker, allowed)
    per_f = []
    for f in range(E.order):
        g = by_im.get(ki.ker[f])
        h = by_ker.get(ki.im[f])
        if g is None or h is None:
            return _fail(E, f, central=central, missing="g" if g is None else "h")
        per_f.append({"f": f, "g": g, "h": h, "central_g": central, "central_h": central})
    return _ok(E, per_f, central=central)


def _cm_idempotent(E: EndomorphismRing) -> Verdict:
    """∀f ∃ central idempotent e with ker f = eM and im f = (1−e)M (= ker e)."""
    ki = _ker_im(E)
    central = set(_central(E).tolist())
    cand = [int(e) for e in E.idempotents if int(e) in central]
    pairs = {}
    for e in cand:
        pairs.setdefault((ki.im[e], ki.ker[e]), e)
    per_f = []
    for f in range(E.order):
        e = pairs.get((ki.ker[f], ki.im[f]))
        if e is None:
            return _fail(E, f, central_idempotents=cand)
        per_f.append({"f": f, "e": e})
    return _ok(E, per_f)


def _abelian(E: EndomorphismRing) -> Verdict:
    central = set(_central(E).tolist())
    for e in E.idempotents.tolist():
        if e not in central:
            return _fail(E, e, reason="non-central idempotent")
    return _ok(E, None, idempotents=E.idempotents.tolist())


# -- single-endomorphism helpers -------------------------------------------------

def is_fully_invariant(N: Submodule, M: FiniteModule | None = None,
                       maps: list[Homomorphism] | None = None) -> Verdict:
    """f(N) ⊆ N for every endomorphism f (or for every map in ``maps``)."""
    M = N.module if M is None else M
    if maps is None:
        tables = end_ring(M).maps
    else:
        tables = np.array([np.asarray(f.table) for f in maps])
    mask = np.zeros(M.order, dtype=bool)
    mask[N.elements()] = True
    el = N.elements()
    imgs = tables[:, el]
    inside = mask[imgs]
    bad = np.flatnonzero(~inside.all(axis=1))
    if bad.size == 0:
        return Verdict(True)
    f = int(bad[0])
    j = int(np.flatnonzero(~inside[f])[0])
    x, y = int(el[j]), int(imgs[f, j])
    return Verdict(False, {"f": f, "table": tables[f].tolist(),
                           "element": {"index": x, "value": M.fmt(x)},
                           "image": {"index": y, "value": M.fmt(y)}})


def central_commutator_check(M: FiniteModule, g: Homomorphism, t: Homomorphism) -> Homomorphism:
    """The endomorphism g∘t − t∘g."""
    gt = np.asarray(g.table)[np.asarray(t.table)]
    tg = np.asarray(t.table)[np.asarray(g.table)]
    return Homomorphism(M, M, M.add[gt, M.neg[tg]])


def matrix_of(f: Homomorphism) -> list[list[int]]:
    """Matrix of an endomorphism of R^n on the standard basis (columns are images of e_j)."""
    M = f.source
    radices = M.codec["radices"]
    n = len(radices)
    w = np.cumprod([1] + radices[:-1])
    R = M.ring
    cols = []
    for j in range(n):
        e_j = sum((R.one if i == j else R.zero) * int(w[i]) for i in range(n))
        img = int(f.table[e_j])
        cols.append([img // int(w[i]) % radices[i] for i in range(n)])
    return [[cols[j][i] for j in range(n)] for i in range(n)]


# -- finite powers -----------------------------------------------------------------

def power_predicate(M: FiniteModule, k: int, name: str) -> Verdict:
    """A predicate evaluated on M^k, labelled as a finite-power proxy."""
    if name not in POWER_PREDICATES:
        raise UnknownPredicate(f"unknown power predicate {name!r}; expected one of {POWER_PREDICATES}")
    if k < 1:
        raise UnknownPredicate("power k must be at least 1")
    limit = get_config().max_module_order
    if M.order ** k > limit:
        raise SizeLimitExceeded(f"|M|^{k} = {M.order ** k} exceeds {limit}")
    X = M if k == 1 else power(M, k)

    def compute():
        if name in ("C2", "D2_paper"):
            v = condition_predicate(X, name)
        else:
            v = _rickart_lattice(X, dual=(name == "d_rickart"))
        return Verdict(v.result, v.witness, v.notes + [PROXY_NOTE.format(k=k)])

    return memo.get(("power", name, k, M.digest, get_config().max_lattice), compute)


def _rickart_lattice(X: FiniteModule, dual: bool) -> Verdict:
    """Rickart / d-Rickart without enumerating End(X).

    A submodule K is the kernel of some endomorphism iff X/K embeds in X,
    and I is the image of one iff I ≅ X/K for some submodule K.  Only
    non-summands need examining.
    """
    sum_bits = {s.members for s in summands(X)}
    subs = submodules(X)
    non_summands = [S for S in subs if S.members not in sum_bits]
    if not dual:
        for K in non_summands:
            if embeds(quotient(K)[0], X):
                return Verdict(False, {"kernel": K.elements().tolist(), "route": "lattice"})
        return Verdict(True, {"route": "lattice"})
    for I in non_summands:
        A = as_module(I)
        want = X.order // I.size
        for K in subs:
            if K.size == want and is_isomorphic(quotient(K)[0], A):
                return Verdict(False, {"image": I.elements().tolist(),
                                       "kernel": K.elements().tolist(), "route": "lattice"})
    return Verdict(True, {"route": "lattice"})


def end_as_ring(M: FiniteModule) -> FiniteRing:
    return end_ring(M).ring
