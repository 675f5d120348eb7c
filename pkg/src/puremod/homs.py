"""Homomorphism spaces, isomorphism search and endomorphism rings.

A homomorphism out of M is fixed by the images of a generating set
g_1..g_k.  Writing M_i for the submodule generated by g_1..g_i, an
assignment g_i -> y extends a hom on M_{i-1} exactly when y·r equals the
image of g_i·r for every r with g_i·r in M_{i-1}.  All enumeration below is
driven level by level through that test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Sequence

import numpy as np

from ._bits import bits_from_indices, bits_from_mask, memo
from .config import get_config
from .errors import InvalidSpec, SizeLimitExceeded
from .modules import FiniteModule, Submodule, as_module, submodule_generated
from .rings import FiniteRing

# cap on entries held in partial-map arrays during enumeration
_MAX_ENTRIES = 1 << 26
# cap on generator subsets tried when proving a generating set minimal
_MAX_GEN_SUBSETS = 200_000


@dataclass(frozen=True, eq=False)
class Homomorphism:
    source: FiniteModule
    target: FiniteModule
    table: np.ndarray

    def __call__(self, m: int) -> int:
        return int(self.table[m])

    def __eq__(self, other):
        return (isinstance(other, Homomorphism)
                and self.source.digest == other.source.digest
                and self.target.digest == other.target.digest
                and np.array_equal(self.table, other.table))

    def __hash__(self):
        return hash((self.source.digest, self.target.digest, self.table.astype(np.int64).tobytes()))

    def __matmul__(self, other: Homomorphism) -> Homomorphism:
        """Composition: (f @ g)(m) = f(g(m))."""
        return Homomorphism(other.source, self.target, self.table[other.table])

    def __add__(self, other: Homomorphism) -> Homomorphism:
        return Homomorphism(self.source, self.target, self.target.add[self.table, other.table])

    def kernel(self) -> Submodule:
        return kernel_image(self)[0]

    def image(self) -> Submodule:
        return kernel_image(self)[1]

    def is_valid(self) -> bool:
        return is_homomorphism(self.source, self.target, self.table)

    def is_injective(self) -> bool:
        return int((self.table == self.target.zero).sum()) == 1

    def is_surjective(self) -> bool:
        return len(np.unique(self.table)) == self.target.order


def is_homomorphism(M: FiniteModule, N: FiniteModule, table) -> bool:
    """Exhaustive additivity and equivariance check."""
    t = np.asarray(table)
    if t.shape != (M.order,) or t.min() < 0 or t.max() >= N.order:
        return False
    return bool((t[M.add] == N.add[t[:, None], t[None, :]]).all()
                and (t[M.action] == N.action[t]).all())


def kernel_image(f: Homomorphism) -> tuple[Submodule, Submodule]:
    M, N, t = f.source, f.target, f.table
    ker_mask = t == N.zero
    img_mask = np.zeros(N.order, dtype=bool)
    img_mask[t] = True
    return Submodule(M, bits_from_mask(ker_mask)), Submodule(N, bits_from_mask(img_mask))


def identity(M: FiniteModule) -> Homomorphism:
    return Homomorphism(M, M, np.arange(M.order))


def zero_map(M: FiniteModule, N: FiniteModule) -> Homomorphism:
    return Homomorphism(M, N, np.full(M.order, N.zero))


def inclusion(N: Submodule) -> tuple[FiniteModule, Homomorphism]:
    A = as_module(N)
    return A, Homomorphism(A, N.module, N.elements().copy())


def linear_map(M: FiniteModule, matrix) -> Homomorphism:
    """Endomorphism of a free module R^n over a commutative ring, v -> A v.

    Elements of R^n are read as column vectors with the first component
    least significant in the index.
    """
    codec = M.codec
    if codec.get("kind") != "sum":
        raise InvalidSpec("linear_map needs a free module")
    R = M.ring
    A = [[R.encode(a) if not isinstance(a, (int, np.integer)) else int(a) % R.order
          for a in row] for row in matrix]
    n = len(codec["radices"])
    if len(A) != n or any(len(row) != n for row in A):
        raise InvalidSpec("matrix shape does not match the module rank")
    radices = codec["radices"]
    w = np.cumprod([1] + radices[:-1])
    digits = np.stack([(np.arange(M.order) // w[k]) % radices[k] for k in range(n)], axis=1)
    out = np.zeros(M.order, dtype=np.int64)
    for i in range(n):
        acc = np.full(M.order, R.zero)
        for j in range(n):
            acc = R.add[acc, R.mul[A[i][j], digits[:, j]]]
        out += acc.astype(np.int64) * int(w[i])
    f = Homomorphism(M, M, out)
    if not f.is_valid():
        raise InvalidSpec("matrix does not define a module endomorphism")
    return f


# -- generating sets -------------------------------------------------------

def _maximal_cyclic_reps(M: FiniteModule) -> list[int]:
    """Lowest-index generator of each maximal cyclic submodule."""
    first: dict[int, int] = {}
    for x, b in enumerate(M.cyclic_bits):
        first.setdefault(b, x)
    cyc = sorted(first, key=lambda b: (-b.bit_count(), first[b]))
    maximal = []
    for b in cyc:
        if not any(b & ~c == 0 for c in maximal):
            maximal.append(b)
    return sorted(first[b] for b in maximal)


def minimal_generators(M: FiniteModule) -> list[int]:
    """A generating set of minimum size, lowest indices first.

    Any generating set can be traded for one drawn from generators of
    maximal cyclic submodules, so only those are searched.  A greedy pass
    gives an upper bound; smaller sizes are then ruled out by exhaustive
    search when the number of subsets is manageable.
    """
    return memo.get(("mingens", M.digest), lambda: _minimal_generators(M))


def _generates(M: FiniteModule, gens) -> bool:
    return submodule_generated(M, gens).is_whole()


def _minimal_generators(M: FiniteModule) -> list[int]:
    if M.order == 1:
        return []
    reps = _maximal_cyclic_reps(M)
    greedy: list[int] = []
    cur = M.zero_submodule()
    while not cur.is_whole():
        best, best_size = None, -1
        for x in reps:
            if x in cur:
                continue
            size = (cur + Submodule(M, M.cyclic_bits[x])).size
            if size > best_size:
                best, best_size = x, size
        greedy.append(best)
        cur = submodule_generated(M, greedy)
    max_cyc = max(b.bit_count() for b in M.cyclic_bits)
    lower = max(1, math.ceil(math.log(M.order) / math.log(max_cyc) - 1e-9))
    for g in range(lower, len(greedy)):
        if math.comb(len(reps), g) > _MAX_GEN_SUBSETS:
            break
        for combo in combinations(reps, g):
            if _generates(M, combo):
                return list(combo)
    return sorted(greedy)


# -- level-wise enumeration --------------------------------------------------

@dataclass
class _Level:
    gen: int
    prev: np.ndarray   # elements of M_{i-1}
    rel: np.ndarray    # ring elements r with gen·r in M_{i-1}
    rel_img: np.ndarray  # gen·r for r in rel
    elems: np.ndarray  # elements z of M_i
    rep_m: np.ndarray  # z = rep_m + gen·rep_r
    rep_r: np.ndarray


def _levels(M: FiniteModule, gens: Sequence[int]) -> list[_Level]:
    def compute():
        out = []
        prev = np.array([M.zero])
        prev_mask = np.zeros(M.order, dtype=bool)
        prev_mask[M.zero] = True
        for g in gens:
            orbit = M.action[g]
            rel = np.flatnonzero(prev_mask[orbit])
            Z = M.add[np.ix_(prev, orbit)]
            flat = Z.ravel()
            elems, first = np.unique(flat, return_index=True)
            rep_m = prev[first // orbit.shape[0]]
            rep_r = first % orbit.shape[0]
            out.append(_Level(int(g), prev, rel, orbit[rel], elems, rep_m, rep_r))
            prev = elems
            prev_mask = np.zeros(M.order, dtype=bool)
            prev_mask[elems] = True
        return out

    return memo.get(("levels", M.digest, tuple(int(g) for g in gens)), compute)


def _valid_images(N: FiniteModule, lvl: _Level, P: np.ndarray, allowed=None) -> list[np.ndarray]:
    """For each partial map (row of P), the target elements y that extend it."""
    ys = np.arange(N.order) if allowed is None else np.asarray(allowed)
    rows = N.action[np.ix_(ys, lvl.rel)]
    buckets: dict[bytes, list[int]] = {}
    for y, row in zip(ys.tolist(), rows):
        buckets.setdefault(row.astype(np.int32).tobytes(), []).append(y)
    need = P[:, lvl.rel_img].astype(np.int32)
    empty: list[int] = []
    return [np.array(buckets.get(row.tobytes(), empty), dtype=np.int64) for row in need]


def _extend(N: FiniteModule, lvl: _Level, P: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Rows of P (repeated to match ys) extended to M_i by gen -> ys."""
    out = P.copy()
    out[:, lvl.elems] = N.add[P[:, lvl.rep_m], N.action[ys][:, lvl.rep_r]]
    return out


def _check_hom_budget(M: FiniteModule, N: FiniteModule, g: int) -> None:
    budget = get_config().hom_budget
    if N.order ** g > budget:
        raise SizeLimitExceeded(
            f"hom enumeration {M.name} -> {N.name} needs {N.order}^{g} > {budget} candidates")


def hom_tables(M: FiniteModule, N: FiniteModule) -> np.ndarray:
    """All homomorphisms M -> N as rows of a 2-d array, in lexicographic row order."""
    if M.ring.digest != N.ring.digest:
        raise InvalidSpec("modules over different rings")
    key = ("homs", M.digest, N.digest, get_config().hom_budget)
    return memo.get(key, lambda: _hom_tables(M, N))


def _hom_tables(M: FiniteModule, N: FiniteModule) -> np.ndarray:
    gens = minimal_generators(M)
    _check_hom_budget(M, N, len(gens))
    dt = np.int16 if N.order < 2 ** 15 else np.int32
    P = np.full((1, M.order), -1, dtype=dt)
    P[0, M.zero] = N.zero
    for lvl in _levels(M, gens):
        choices = _valid_images(N, lvl, P)
        counts = np.array([len(c) for c in choices])
        total = int(counts.sum())
        if total * M.order > _MAX_ENTRIES:
            raise SizeLimitExceeded(f"hom enumeration {M.name} -> {N.name} too large")
        if total == 0:
            break
        P = _extend(N, lvl, np.repeat(P, counts, axis=0), np.concatenate(choices))
    return np.unique(P, axis=0)


def hom_set(M: FiniteModule, N: FiniteModule) -> list[Homomorphism]:
    return [Homomorphism(M, N, row) for row in hom_tables(M, N)]


def find_hom(M: FiniteModule, N: FiniteModule, *, injective: bool = False,
             surjective: bool = False, candidates: Sequence[Sequence[int]] | None = None,
             gens: Sequence[int] | None = None) -> Homomorphism | None:
    """Depth-first search for one homomorphism with the requested properties.

    ``candidates[i]`` optionally restricts the image of the i-th generator
    (of ``gens``, default :func:`minimal_generators`).
    """
    if M.ring.digest != N.ring.digest:
        raise InvalidSpec("modules over different rings")
    if injective and M.order > N.order or surjective and M.order < N.order:
        return None
    gens = list(minimal_generators(M) if gens is None else gens)
    levels = _levels(M, gens)
    budget = get_config().hom_budget
    ann_M = ann_N = None
    if injective:
        ann_M = [M.action[g] == M.zero for g in gens]
        ann_N = N.action == N.zero
    visited = 0

    def rec(i: int, row: np.ndarray):
        nonlocal visited
        if i == len(levels):
            if surjective and len(np.unique(row)) != N.order:
                return None
            return row
        lvl = levels[i]
        allowed = None if candidates is None else candidates[i]
        if injective:
            pool = np.arange(N.order) if allowed is None else np.asarray(allowed)
            ok = (ann_N[pool] == ann_M[i]).all(axis=1)
            allowed = pool[ok]
        ys = _valid_images(N, lvl, row[None, :], allowed)[0]
        for y in ys.tolist():
            visited += 1
            if visited > budget:
                raise SizeLimitExceeded(f"hom search {M.name} -> {N.name} exceeded {budget} nodes")
            new = _extend(N, lvl, row[None, :], np.array([y]))[0]
            if injective and int((new[lvl.elems] == N.zero).sum()) != 1:
                continue
            found = rec(i + 1, new)
            if found is not None:
                return found
        return None

    start = np.full(M.order, -1, dtype=np.int64)
    start[M.zero] = N.zero
    row = rec(0, start)
    return None if row is None else Homomorphism(M, N, row)


def _cyclic_profile(M: FiniteModule) -> tuple:
    return tuple(sorted(b.bit_count() for b in M.cyclic_bits))


def is_isomorphic(M: FiniteModule, N: FiniteModule) -> bool:
    if M.ring.digest != N.ring.digest:
        raise InvalidSpec("modules over different rings")
    if M.order != N.order:
        return False
    if M.digest == N.digest:
        return True
    key = ("iso", *sorted((M.digest, N.digest)))

    def compute():
        if _cyclic_profile(M) != _cyclic_profile(N):
            return False
        return find_hom(M, N, injective=True) is not None

    return memo.get(key, compute)


def embeds(M: FiniteModule, N: FiniteModule) -> bool:
    if M.order > N.order:
        return False
    return memo.get(("embeds", M.digest, N.digest),
                    lambda: find_hom(M, N, injective=True) is not None)


# -- endomorphism rings ------------------------------------------------------

@dataclass(eq=False)
class EndomorphismRing:
    """End(M), with maps acting on the left: product a·b decodes to a∘b."""

    module: FiniteModule
    maps: np.ndarray
    gens: list[int] = field(default_factory=list)

    @property
    def order(self) -> int:
        return int(self.maps.shape[0])

    @cached_property
    def _keys(self) -> np.ndarray:
        return self._key_of(self.maps)

    def _key_of(self, tables: np.ndarray) -> np.ndarray:
        n = self.module.order
        key = np.zeros(tables.shape[:-1], dtype=np.int64)
        for g in reversed(self.gens):
            key = key * n + tables[..., g]
        return key

    @cached_property
    def _sorter(self) -> np.ndarray:
        return np.argsort(self._keys, kind="stable")

    def index_of(self, tables) -> np.ndarray | int:
        """Indices of endomorphism tables (last axis = module elements)."""
        t = np.asarray(tables)
        k = self._key_of(t)
        pos = np.searchsorted(self._keys, k, sorter=self._sorter)
        idx = self._sorter[np.clip(pos, 0, self.order - 1)]
        if not (self._keys[idx] == k).all():
            raise InvalidSpec("table is not an endomorphism of this module")
        return int(idx) if np.ndim(idx) == 0 else idx

    def decode(self, i: int) -> Homomorphism:
        return Homomorphism(self.module, self.module, self.maps[int(i)])

    @cached_property
    def zero(self) -> int:
        return self.index_of(np.full(self.module.order, self.module.zero))

    @cached_property
    def one(self) -> int:
        return self.index_of(np.arange(self.module.order))

    def compose_tables(self, a, b) -> np.ndarray:
        return np.take_along_axis(np.asarray(a), np.asarray(b), axis=-1)

    @cached_property
    def idempotents(self) -> np.ndarray:
        H = self.maps
        return np.flatnonzero((np.take_along_axis(H, H, axis=1) == H).all(axis=1))

    @cached_property
    def ring(self) -> FiniteRing:
        """End(M) as a FiniteRing (tables are quadratic in |End|, hence the size cap)."""
        limit = get_config().max_scalar_ring_order
        if self.order > limit:
            raise SizeLimitExceeded(f"End ring of order {self.order} exceeds {limit}")
        M, H, n = self.module, self.maps, self.order
        G = H[:, self.gens]
        add = np.empty((n, n), dtype=np.int32)
        mul = np.empty((n, n), dtype=np.int32)
        for a in range(n):
            add[a] = self._lookup_keys(M.add[G[a][None, :], G])
            mul[a] = self._lookup_keys(H[a][G])
        from .rings import ring_from_tables
        return ring_from_tables(add, mul, self.zero, self.one,
                                {"kind": "end", "module": M.name}, name=f"End({M.name})")

    def _lookup_keys(self, gen_images: np.ndarray) -> np.ndarray:
        n = self.module.order
        key = np.zeros(gen_images.shape[0], dtype=np.int64)
        for j in reversed(range(len(self.gens))):
            key = key * n + gen_images[:, j]
        pos = np.searchsorted(self._keys, key, sorter=self._sorter)
        return self._sorter[pos]

    def center(self) -> np.ndarray:
        """Indices of central endomorphisms (commuting with an additive generating set)."""
        H = self.maps
        gens = self.additive_generators()
        central = np.ones(self.order, dtype=bool)
        for s in gens:
            f = H[s]
            central &= (f[H] == np.take_along_axis(H, np.broadcast_to(f, H.shape), axis=1)).all(axis=1)
        return np.flatnonzero(central)

    def additive_generators(self) -> list[int]:
        """Indices generating End(M) as an additive group, chosen greedily by index."""
        M, H = self.module, self.maps
        group = {H[self.zero].tobytes(): H[self.zero]}
        gens = []
        for i in range(self.order):
            if len(group) == self.order:
                break
            if H[i].tobytes() in group:
                continue
            gens.append(i)
            multiples = [H[self.zero]]
            x = H[i]
            while x.tobytes() != multiples[0].tobytes():
                multiples.append(x)
                x = M.add[x, H[i]].astype(H.dtype)
            for a in list(group.values()):
                for c in multiples[1:]:
                    s = M.add[a, c].astype(H.dtype)
                    group.setdefault(s.tobytes(), s)
        return gens


def end_ring(M: FiniteModule) -> EndomorphismRing:
    key = ("end", M.digest, get_config().hom_budget)
    return memo.get(key, lambda: EndomorphismRing(M, hom_tables(M, M), minimal_generators(M)))


# -- decomposition -------------------------------------------------------------

def indecomposable_decomposition(M: FiniteModule) -> list[Submodule]:
    """Split along the lowest-index nontrivial idempotent of End until nothing splits."""
    def compute():
        parts = _decompose(M.whole())
        return sorted(parts, key=lambda s: s.sort_key())

    return memo.get(("decomp", M.digest, get_config().hom_budget), compute)


def _decompose(P: Submodule) -> list[Submodule]:
    M = P.module
    if P.is_zero():
        return []
    A = as_module(P) if not P.is_whole() else M
    E = end_ring(A)
    nontrivial = [i for i in E.idempotents if i not in (E.zero, E.one)]
    if not nontrivial:
        return [P]
    e = E.maps[nontrivial[0]]
    ker, img = kernel_image(Homomorphism(A, A, e))
    # as_module numbers elements by increasing parent index
    el = P.elements()
    out = []
    for part in (img, ker):
        out.extend(_decompose(Submodule(M, bits_from_indices(el[part.elements()], M.order))))
    return out
