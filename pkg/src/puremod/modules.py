"""Finite right modules, submodules and the submodule lattice."""

from __future__ import annotations

import hashlib
import json
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import _bits
from ._bits import bits_from_indices, indices_from_bits, memo
from .config import get_config
from .errors import InvalidSpec, NotASubmodule, OrderNotDividing, SizeLimitExceeded
from .rings import FiniteRing, _all_digits, _digits_of, build_ring


def _dtype(order: int):
    return np.int16 if order <= np.iinfo(np.int16).max else np.int32


class FiniteModule:
    """A finite unital right module over a :class:`FiniteRing`.

    ``add[m, n]`` is the index of m + n and ``action[m, r]`` the index of m·r.
    """

    def __init__(self, ring: FiniteRing, add, action, zero: int, codec: dict,
                 spec: dict | None = None, name: str | None = None):
        self.ring = ring
        # one index dtype everywhere, so byte keys built from tables agree
        dt = _dtype(int(np.shape(add)[0]))
        self.add = np.ascontiguousarray(add, dtype=dt)
        self.action = np.ascontiguousarray(action, dtype=dt)
        self.order = int(self.add.shape[0])
        self.zero = int(zero)
        self.codec = codec
        self.spec = spec
        self.name = name or (json.dumps(spec, sort_keys=True) if spec else codec.get("kind", "module"))
        self.add.flags.writeable = False
        self.action.flags.writeable = False

    def __repr__(self):
        return f"FiniteModule({self.name}, order={self.order})"

    @cached_property
    def digest(self) -> str:
        h = hashlib.sha256(self.ring.digest.encode())
        h.update(self.add.astype(np.int32).tobytes())
        h.update(self.action.astype(np.int32).tobytes())
        h.update(np.int64(self.zero).tobytes())
        return h.hexdigest()

    @cached_property
    def neg(self) -> np.ndarray:
        rows, cols = np.nonzero(self.add == self.zero)
        out = np.empty(self.order, dtype=self.add.dtype)
        out[rows] = cols
        return out

    @cached_property
    def full_bits(self) -> int:
        return (1 << self.order) - 1

    @cached_property
    def zero_bits(self) -> int:
        return 1 << self.zero

    @cached_property
    def cyclic_bits(self) -> list[int]:
        """cyclic_bits[x] is the bitset of the cyclic submodule xR."""
        return [bits_from_indices(self.action[x], self.order) for x in range(self.order)]

    def sub(self, a: int, b: int) -> int:
        return int(self.add[a, self.neg[b]])

    def fmt(self, m: int) -> str:
        return _fmt(self, self.codec, int(m))

    def encode(self, components) -> int:
        """Index of the tuple ``components`` (component indices) in a direct-sum codec."""
        radices = self.codec["radices"]
        if len(components) != len(radices):
            raise InvalidSpec(f"expected {len(radices)} components, got {len(components)}")
        index, w = 0, 1
        for c, r in zip(components, radices):
            index += (int(c) % r) * w
            w *= r
        return index

    def decode(self, m: int) -> list[int]:
        return _digits_of(int(m), self.codec["radices"])

    def zero_submodule(self) -> Submodule:
        return Submodule(self, self.zero_bits)

    def whole(self) -> Submodule:
        return Submodule(self, self.full_bits)

    def submodule(self, elements: Iterable[int]) -> Submodule:
        """Wrap an explicit element set, checking that it is a submodule."""
        bits = bits_from_indices(list(elements), self.order)
        if not is_submodule_bits(self, bits):
            raise NotASubmodule(f"{sorted(elements)} is not a submodule of {self.name}")
        return Submodule(self, bits)


class Submodule:
    """A submodule of ``module`` stored as a membership bitset."""

    __slots__ = ("module", "members", "_el")

    def __init__(self, module: FiniteModule, members: int):
        self.module = module
        self.members = members
        self._el = None

    def __eq__(self, other):
        return (isinstance(other, Submodule) and self.members == other.members
                and self.module.digest == other.module.digest)

    def __hash__(self):
        return hash((self.members, self.module.digest))

    def __repr__(self):
        return f"Submodule(size={self.size}, {self.elements().tolist()[:8]}{'...' if self.size > 8 else ''})"

    @property
    def size(self) -> int:
        return self.members.bit_count()

    def elements(self) -> np.ndarray:
        if self._el is None:
            self._el = indices_from_bits(self.members, self.module.order)
        return self._el

    def __contains__(self, m: int) -> bool:
        return bool(self.members >> int(m) & 1)

    def __le__(self, other: Submodule) -> bool:
        return self.members & ~other.members == 0

    def __lt__(self, other: Submodule) -> bool:
        return self.members != other.members and self <= other

    def __and__(self, other: Submodule) -> Submodule:
        return Submodule(self.module, self.members & other.members)

    def __add__(self, other: Submodule) -> Submodule:
        if self.members & ~other.members == 0:
            return other
        if other.members & ~self.members == 0:
            return self
        bits = _bits.sumset_bits(self.module.add, self.elements(), other.elements())
        return Submodule(self.module, bits)

    def is_zero(self) -> bool:
        return self.members == self.module.zero_bits

    def is_whole(self) -> bool:
        return self.members == self.module.full_bits

    def sort_key(self) -> tuple:
        return _bits.sort_key(self.members, self.module.order)

    def describe(self) -> list[str]:
        return [self.module.fmt(m) for m in self.elements()]


def is_submodule_bits(M: FiniteModule, bits: int) -> bool:
    if not bits >> M.zero & 1:
        return False
    el = indices_from_bits(bits, M.order)
    mask = _bits.mask_from_bits(bits, M.order)
    return bool(mask[M.add[np.ix_(el, el)]].all() and mask[M.action[el]].all()
                and mask[M.neg[el]].all())


# -- constructions ------------------------------------------------------------

def _check_module_order(order: int) -> None:
    limit = get_config().max_module_order
    if order > limit:
        raise SizeLimitExceeded(f"module order {order} exceeds limit {limit}")


def regular_module(R: FiniteRing) -> FiniteModule:
    _check_module_order(R.order)
    return FiniteModule(R, R.add, R.mul, R.zero, {"kind": "regular", "ring": R.codec},
                        {"kind": "regular"})


def direct_sum(parts: Sequence[FiniteModule], spec: dict | None = None) -> FiniteModule:
    """External direct sum; index = mixed radix over the parts, first part least significant."""
    if not parts:
        raise InvalidSpec("direct sum of no modules")
    R = parts[0].ring
    if any(p.ring.digest != R.digest for p in parts):
        raise InvalidSpec("direct sum of modules over different rings")
    radices = [p.order for p in parts]
    order = int(np.prod(radices))
    _check_module_order(order)
    digits = _all_digits(radices)
    weights = np.cumprod([1] + radices[:-1]).astype(np.int64)
    dt = _dtype(order)
    add = np.zeros((order, order), dtype=np.int32)
    action = np.zeros((order, R.order), dtype=np.int32)
    for k, p in enumerate(parts):
        d = digits[:, k]
        add += p.add[d[:, None], d[None, :]].astype(np.int32) * int(weights[k])
        action += p.action[d].astype(np.int32) * int(weights[k])
    zero = int(sum(p.zero * int(w) for p, w in zip(parts, weights)))
    codec = {"kind": "sum", "radices": radices, "parts": [p.codec for p in parts]}
    return FiniteModule(R, add.astype(dt), action.astype(dt), zero, codec,
                        spec or {"kind": "direct_sum", "parts": [p.spec for p in parts]})


def power(M: FiniteModule, k: int) -> FiniteModule:
    return direct_sum([M] * k, {"kind": "power", "base": M.spec, "k": k})


def zmod_sum(R: FiniteRing, orders: Sequence[int]) -> FiniteModule:
    """Z_{o1} + ... + Z_{ok} as a module over R = zmod(n), each o_i dividing n."""
    if R.codec["kind"] not in ("zmod", "gf"):
        raise InvalidSpec("zmod_sum needs a zmod ring")
    n = R.codec["n"]
    orders = [int(o) for o in orders]
    for o in orders:
        if o < 1 or n % o:
            raise OrderNotDividing(f"order {o} does not divide {n}")
    order = int(np.prod(orders))
    _check_module_order(order)
    digits = _all_digits(orders)
    weights = np.cumprod([1] + orders[:-1]).astype(np.int64)
    o = np.array(orders)
    add_d = (digits[:, None, :] + digits[None, :, :]) % o
    act_d = (digits[:, None, :] * np.arange(n)[None, :, None]) % o
    dt = _dtype(order)
    add = (add_d * weights).sum(-1).astype(dt)
    action = (act_d * weights).sum(-1).astype(dt)
    codec = {"kind": "zmod_sum", "orders": orders, "radices": orders}
    return FiniteModule(R, add, action, 0, codec, {"kind": "zmod_sum", "orders": orders})


def submodule_generated(M: FiniteModule, gens: Iterable[int]) -> Submodule:
    """Smallest submodule containing ``gens``: the sum of the cyclic submodules gR."""
    cur = np.array([M.zero])
    bits = M.zero_bits
    for g in gens:
        g = int(g)
        if bits >> g & 1:
            continue
        bits = _bits.sumset_bits(M.add, cur, M.action[g])
        cur = indices_from_bits(bits, M.order)
    return Submodule(M, bits)


def as_module(N: Submodule, spec: dict | None = None) -> FiniteModule:
    """The submodule N as a module in its own right; indices follow increasing parent index."""
    M = N.module
    el = N.elements()
    pos = np.full(M.order, -1, dtype=np.int64)
    pos[el] = np.arange(len(el))
    dt = _dtype(len(el))
    add = pos[M.add[np.ix_(el, el)]].astype(dt)
    action = pos[M.action[el]].astype(dt)
    codec = {"kind": "subset", "parent": M.codec, "elements": el.tolist()}
    key = ("as_module", M.digest, N.members)
    return memo.get(key, lambda: FiniteModule(M.ring, add, action, int(pos[M.zero]), codec,
                                              spec or {"kind": "submodule_of", "parent": M.spec,
                                                       "generators": el.tolist()},
                                              name=f"sub({M.name})"))


def quotient(N: Submodule, spec: dict | None = None) -> tuple[FiniteModule, np.ndarray]:
    """M/N with cosets indexed by increasing smallest representative.

    Returns the quotient module and the projection table M -> M/N.
    """
    M = N.module
    reps = M.add[:, N.elements()].min(axis=1)
    uniq = np.unique(reps)
    pos = np.full(M.order, -1, dtype=np.int64)
    pos[uniq] = np.arange(len(uniq))
    proj = pos[reps]
    dt = _dtype(len(uniq))
    add = proj[M.add[np.ix_(uniq, uniq)]].astype(dt)
    action = proj[M.action[uniq]].astype(dt)
    codec = {"kind": "quotient", "parent": M.codec, "reps": uniq.tolist()}
    Q = FiniteModule(M.ring, add, action, int(proj[M.zero]), codec,
                     spec or {"kind": "quotient", "parent": M.spec,
                              "sub_generators": N.elements().tolist()},
                     name=f"{M.name}/N")
    return Q, proj


def _gen_index(M: FiniteModule, g) -> int:
    if isinstance(g, (list, tuple)):
        if "radices" not in M.codec or len(g) != len(M.codec["radices"]):
            raise InvalidSpec(f"cannot encode generator {g!r} for {M.name}")
        w = np.cumprod([1] + M.codec["radices"][:-1])
        return int(sum(int(a) * int(b) for a, b in zip(g, w)))
    g = int(g)
    if not 0 <= g < M.order:
        raise InvalidSpec(f"generator {g} out of range for module of order {M.order}")
    return g


def build_module(R: FiniteRing, spec: dict | str) -> FiniteModule:
    """Construct a module over R from a JSON-style spec.

    Kinds: ``regular``, ``free(n)``, ``direct_sum(parts)``,
    ``zmod_sum(orders)``, ``submodule_of(parent, generators)``,
    ``quotient(parent, sub_generators)`` and
    ``right_ideal_as_module(generators)``.  Generators are element indices
    of the parent, or component lists for sum-shaped parents.
    """
    if isinstance(spec, str):
        spec = json.loads(spec)
    if not isinstance(spec, dict) or "kind" not in spec:
        raise InvalidSpec(f"module spec must be an object with 'kind': {spec!r}")
    key = ("module", R.digest, json.dumps(spec, sort_keys=True), get_config().max_module_order)
    return memo.get(key, lambda: _build_module(R, spec))


def _build_module(R: FiniteRing, spec: dict) -> FiniteModule:
    kind = spec["kind"]
    try:
        if kind == "regular":
            return regular_module(R)
        if kind == "free":
            n = int(spec["n"])
            if n < 1:
                raise InvalidSpec("free(n) needs n >= 1")
            if n == 1:
                M = regular_module(R)
                return FiniteModule(R, M.add, M.action, M.zero,
                                    {"kind": "sum", "radices": [R.order], "parts": [M.codec]}, spec)
            return direct_sum([regular_module(R)] * n, spec)
        if kind == "direct_sum":
            return direct_sum([build_module(R, p) for p in spec["parts"]], spec)
        if kind == "zmod_sum":
            return zmod_sum(R, spec["orders"])
        if kind == "submodule_of":
            P = build_module(R, spec["parent"])
            N = submodule_generated(P, [_gen_index(P, g) for g in spec["generators"]])
            return _respec(as_module(N), spec)
        if kind == "quotient":
            P = build_module(R, spec["parent"])
            N = submodule_generated(P, [_gen_index(P, g) for g in spec["sub_generators"]])
            return _respec(quotient(N)[0], spec)
        if kind == "right_ideal_as_module":
            P = regular_module(R)
            N = submodule_generated(P, [int(g) for g in spec["generators"]])
            return _respec(as_module(N), spec)
    except KeyError as exc:
        raise InvalidSpec(f"module spec {spec!r} is missing field {exc}") from None
    raise InvalidSpec(f"unknown module kind {kind!r}")


def _respec(M: FiniteModule, spec: dict) -> FiniteModule:
    return FiniteModule(M.ring, M.add, M.action, M.zero, M.codec, spec)


def module_axiom_violations(M: FiniteModule) -> list[str]:
    """Exhaustive check of the abelian group and unital right module axioms."""
    R, A, X = M.ring, M.add.astype(np.int64), M.action.astype(np.int64)
    n, idx = M.order, np.arange(M.order)
    out = []
    if not (A == A.T).all():
        out.append("addition not commutative")
    if not (A[A[:, :, None], idx[None, None, :]] == A[idx[:, None, None], A[None, :, :]]).all():
        out.append("addition not associative")
    if not (A[M.zero] == idx).all():
        out.append("zero is not neutral")
    if not (A == M.zero).any(axis=1).all():
        out.append("missing inverse")
    if not (X[:, R.one] == idx).all():
        out.append("m*1 != m")
    # (m+m')r = mr + m'r
    if not (X[A] == A[X[:, None, :], X[None, :, :]]).all():
        out.append("(m+m')r != mr+m'r")
    # m(r+s) = mr + ms
    if not (X[:, R.add] == A[X[:, :, None], X[:, None, :]]).all():
        out.append("m(r+s) != mr+ms")
    # m(rs) = (mr)s
    if not (X[:, R.mul] == X[X[:, :, None], np.arange(R.order)[None, None, :]]).all():
        out.append("m(rs) != (mr)s")
    return out


# -- lattice ------------------------------------------------------------------

def _check_lattice_limit(M: FiniteModule) -> None:
    limit = get_config().max_module_order
    if M.order > limit:
        raise SizeLimitExceeded(f"lattice enumeration needs order <= {limit}, module has {M.order}")


# modules at most this large are enumerated without the socle pre-count
_PRECOUNT_FROM = 512


def _subspace_count(d: int, q: int) -> int:
    """Number of subspaces of a d-dimensional space over a field with q elements."""
    total = 0
    for k in range(d + 1):
        num = den = 1
        for i in range(k):
            num *= q ** (d - i) - 1
            den *= q ** (i + 1) - 1
        total += num // den
    return total


def socle_lattice_size(M: FiniteModule) -> int | None:
    """Exact number of submodules of soc(M), a lower bound for the whole lattice.

    soc(M) is a direct sum of isotypic parts S^d; the submodules of S^d
    correspond to subspaces of D^d with D = End(S), and the part has
    (|D|^d - 1)/(|D| - 1) minimal submodules.  Returns None when the
    counts do not fit that shape (which would indicate a bug upstream).
    """
    from .homs import end_ring, is_isomorphic

    classes: list[tuple[FiniteModule, int]] = []
    for S in minimal_submodules(M):
        A = as_module(S)
        for i, (rep, count) in enumerate(classes):
            if rep.order == A.order and is_isomorphic(rep, A):
                classes[i] = (rep, count + 1)
                break
        else:
            classes.append((A, 1))
    total = 1
    for rep, m in classes:
        q = end_ring(rep).order
        d, lines = 0, 0
        while lines < m:
            lines += q ** d
            d += 1
        if lines != m:
            return None
        total *= _subspace_count(d, q)
    return total


def submodules(M: FiniteModule) -> list[Submodule]:
    """The whole submodule lattice, sorted by (size, members)."""
    _check_lattice_limit(M)
    budget = get_config().max_lattice
    if M.order > _PRECOUNT_FROM:
        bound = memo.get(("socle_lattice", M.digest), lambda: socle_lattice_size(M))
        if bound is not None and bound > budget:
            raise SizeLimitExceeded(
                f"submodule lattice of {M.name} has at least {bound} members "
                f"(socle alone), over max_lattice={budget}")

    def compute():
        bits = _bits.join_closure(M.add, M.zero, M.action, M.ring.units, budget,
                                  f"submodule lattice of {M.name}")
        return [Submodule(M, b) for b in bits]

    return memo.get(("submodules", M.digest, budget), compute)


def lattice_covers(M: FiniteModule) -> list[tuple[int, int]]:
    subs = submodules(M)
    return memo.get(("covers", M.digest), lambda: _bits.cover_pairs([s.members for s in subs]))


def lattice_dot(M: FiniteModule) -> str:
    """Hasse diagram of the submodule lattice in DOT format."""
    subs = submodules(M)
    lines = ["digraph lattice {", "  rankdir=BT;"]
    for k, s in enumerate(subs):
        lines.append(f'  n{k} [label="S{k}(|{s.size}|)"];')
    for i, j in lattice_covers(M):
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def complement(N: Submodule) -> Submodule | None:
    """Lowest (size, members) submodule C with N + C = M and N ∩ C = 0."""
    M = N.module
    want = M.order // N.size
    if want * N.size != M.order:
        return None
    for C in submodules(M):
        if C.size == want and C.members & N.members == M.zero_bits:
            return C
    return None


def summands(M: FiniteModule) -> list[Submodule]:
    def compute():
        subs = submodules(M)
        by_size: dict[int, list[int]] = {}
        for s in subs:
            by_size.setdefault(s.size, []).append(s.members)
        out = []
        for s in subs:
            want = M.order // s.size
            if want * s.size == M.order and any(
                    c & s.members == M.zero_bits for c in by_size.get(want, ())):
                out.append(s)
        return out

    return memo.get(("summands", M.digest, get_config().max_lattice), compute)


def is_summand(N: Submodule) -> bool:
    bits = {s.members for s in summands(N.module)}
    return N.members in bits


def socle(M: FiniteModule) -> Submodule:
    """Sum of the minimal nonzero submodules (each is cyclic)."""
    def compute():
        mins = minimal_submodules(M)
        total = M.zero_submodule()
        for S in mins:
            total = total + S
        return total

    return memo.get(("socle", M.digest), compute)


def minimal_submodules(M: FiniteModule) -> list[Submodule]:
    def compute():
        cyc = sorted({b for b in M.cyclic_bits if b != M.zero_bits},
                     key=lambda b: _bits.sort_key(b, M.order))
        mins = [b for b in cyc if not any(c != b and c & ~b == 0 for c in cyc)]
        return [Submodule(M, b) for b in mins]

    return memo.get(("minimal", M.digest), compute)


def _fmt(M: FiniteModule, codec: dict, m: int) -> str:
    kind = codec["kind"]
    if kind == "regular":
        return M.ring.fmt(m)
    if kind == "zmod_sum":
        return "(" + ",".join(map(str, _digits_of(m, codec["radices"]))) + ")"
    if kind == "sum":
        digits = _digits_of(m, codec["radices"])
        return "(" + ",".join(_fmt(M, c, d) for c, d in zip(codec["parts"], digits)) + ")"
    if kind == "subset":
        return _fmt(M, codec["parent"], codec["elements"][m])
    if kind == "quotient":
        return "[" + _fmt(M, codec["parent"], codec["reps"][m]) + "]"
    return str(m)


def generators_of(N: Submodule) -> list[int]:
    """A small generating set of N: repeatedly take the lowest element not yet reached."""
    M = N.module

    def compute():
        gens: list[int] = []
        cur = M.zero_submodule()
        rest = N.members & ~cur.members
        while rest:
            x = _bits.lowest_bit(rest)
            gens.append(x)
            cur = cur + Submodule(M, M.cyclic_bits[x])
            rest = N.members & ~cur.members
        return gens

    return memo.get(("gens_of", M.digest, N.members), compute)
