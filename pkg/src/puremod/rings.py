"""Finite unital rings stored as full addition/multiplication tables."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

import numpy as np

from . import _bits
from ._bits import bits_from_indices, indices_from_bits, memo
from .config import get_config
from .errors import (
    InvalidSpec,
    NonPrimeModulus,
    NotAnIdeal,
    SizeLimitExceeded,
    UnknownPredicate,
)
from .verdict import Verdict

RING_PREDICATES = (
    "commutative",
    "local",
    "von_neumann_regular",
    "semisimple",
    "abelian",
    "reduced",
    "strongly_pi_regular",
    "field",
)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def _index_dtype(order: int):
    return np.int16 if order <= np.iinfo(np.int16).max else np.int32


class FiniteRing:
    """A finite associative ring with identity.

    Elements are the indices ``0..order-1``; ``add[a, b]`` and ``mul[a, b]``
    hold the index of the sum and product.  ``codec`` records how an index
    encodes a structured element (see :func:`build_ring`).
    """

    def __init__(self, add, mul, zero: int, one: int, codec: dict, spec: dict | None = None,
                 name: str | None = None):
        dt = _index_dtype(int(np.shape(add)[0]))
        self.add = np.ascontiguousarray(add, dtype=dt)
        self.mul = np.ascontiguousarray(mul, dtype=dt)
        self.order = int(self.add.shape[0])
        self.zero = int(zero)
        self.one = int(one)
        self.codec = codec
        self.spec = spec
        self.name = name or (json.dumps(spec, sort_keys=True) if spec else "ring")
        self.add.flags.writeable = False
        self.mul.flags.writeable = False

    def __repr__(self):
        return f"FiniteRing({self.name}, order={self.order})"

    @cached_property
    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(np.int64(self.order).tobytes())
        h.update(self.add.astype(np.int32).tobytes())
        h.update(self.mul.astype(np.int32).tobytes())
        h.update(np.array([self.zero, self.one], dtype=np.int32).tobytes())
        return h.hexdigest()

    @cached_property
    def neg(self) -> np.ndarray:
        rows, cols = np.nonzero(self.add == self.zero)
        out = np.empty(self.order, dtype=self.add.dtype)
        out[rows] = cols
        return out

    def sub(self, a: int, b: int) -> int:
        return int(self.add[a, self.neg[b]])

    @cached_property
    def units(self) -> np.ndarray:
        return np.flatnonzero((self.mul == self.one).any(axis=1))

    def elem(self, index: int) -> RingElement:
        return RingElement(self, int(index))

    # -- codec ---------------------------------------------------------
    def decode(self, index: int) -> Any:
        return _decode(self.codec, int(index))

    def encode(self, value: Any) -> int:
        return _encode(self.codec, value)

    def fmt(self, index: int) -> str:
        return _fmt(self.codec, int(index))

    def is_commutative(self) -> bool:
        return bool((self.mul == self.mul.T).all())


@dataclass(frozen=True)
class RingElement:
    ring: FiniteRing = field(compare=False)
    index: int
    ring_digest: str = field(default="", repr=False)

    def __post_init__(self):
        if not 0 <= self.index < self.ring.order:
            raise ValueError(f"index {self.index} out of range for {self.ring}")
        object.__setattr__(self, "ring_digest", self.ring.digest)

    def _check(self, other: RingElement):
        if other.ring_digest != self.ring_digest:
            raise ValueError("elements of different rings")

    def __add__(self, other: RingElement) -> RingElement:
        self._check(other)
        return RingElement(self.ring, int(self.ring.add[self.index, other.index]))

    def __mul__(self, other: RingElement) -> RingElement:
        self._check(other)
        return RingElement(self.ring, int(self.ring.mul[self.index, other.index]))

    def __neg__(self) -> RingElement:
        return RingElement(self.ring, int(self.ring.neg[self.index]))

    def __sub__(self, other: RingElement) -> RingElement:
        return self + (-other)

    def __str__(self):
        return self.ring.fmt(self.index)


@dataclass(frozen=True)
class RightIdeal:
    ring: FiniteRing = field(compare=False, repr=False)
    members: int
    ring_digest: str = field(default="", repr=False)

    def __post_init__(self):
        object.__setattr__(self, "ring_digest", self.ring.digest)

    @property
    def size(self) -> int:
        return self.members.bit_count()

    def elements(self) -> list[int]:
        return indices_from_bits(self.members, self.ring.order).tolist()

    def __contains__(self, index: int) -> bool:
        return bool(self.members >> int(index) & 1)

    def __le__(self, other: RightIdeal) -> bool:
        return self.members & ~other.members == 0

    def describe(self) -> list[str]:
        return [self.ring.fmt(i) for i in self.elements()]


# -- construction ----------------------------------------------------------

def _encode_digits(digits: np.ndarray, radices: list[int]) -> np.ndarray:
    weights = np.cumprod([1] + radices[:-1]).astype(np.int64)
    return (np.asarray(digits, dtype=np.int64) * weights).sum(axis=-1)


def _all_digits(radices: list[int]) -> np.ndarray:
    """Rows are the digit vectors of 0..prod(radices)-1, first digit least significant."""
    order = int(np.prod(radices))
    idx = np.arange(order, dtype=np.int64)
    out = np.empty((order, len(radices)), dtype=np.int64)
    for k, r in enumerate(radices):
        out[:, k] = idx % r
        idx //= r
    return out


def _algebra_ring(p: int, basis_mul: np.ndarray, one_digits: list[int], codec: dict,
                  spec: dict) -> FiniteRing:
    """Ring Z/p-span of a basis with structure constants basis_mul[i, j, k]."""
    d = basis_mul.shape[0]
    order = p**d
    _check_order(order)
    digits = _all_digits([p] * d)
    add_digits = (digits[:, None, :] + digits[None, :, :]) % p
    # (a*b)_k = sum_ij a_i b_j c_ijk
    prod = np.einsum("ai,bj,ijk->abk", digits, digits, basis_mul) % p
    dt = _index_dtype(order)
    add = _encode_digits(add_digits, [p] * d).astype(dt)
    mul = _encode_digits(prod, [p] * d).astype(dt)
    one = int(_encode_digits(np.array(one_digits), [p] * d))
    return FiniteRing(add, mul, 0, one, codec, spec)


def _check_order(order: int) -> None:
    limit = get_config().max_scalar_ring_order
    if order > limit:
        raise SizeLimitExceeded(f"ring order {order} exceeds limit {limit}")


def _zmod(n: int, spec: dict, kind: str) -> FiniteRing:
    _check_order(n)
    a = np.arange(n)
    dt = _index_dtype(n)
    add = (np.add.outer(a, a) % n).astype(dt)
    mul = (np.multiply.outer(a, a) % n).astype(dt)
    return FiniteRing(add, mul, 0, 1 % n, {"kind": kind, "n": n}, spec)


def _poly_quot(p: int, modulus: list[int], spec: dict) -> FiniteRing:
    d = len(modulus) - 1
    if d < 1 or modulus[-1] % p != 1:
        raise InvalidSpec("poly_quot modulus must be monic of degree >= 1, listed c0..cd")
    # x * x^i for the basis 1, x, ..., x^(d-1); x^d = -(c0 + ... + c_{d-1} x^{d-1})
    xpow = np.zeros((2 * d - 1, d), dtype=np.int64)
    for i in range(min(d, 2 * d - 1)):
        xpow[i, i] = 1
    for i in range(d, 2 * d - 1):
        prev = xpow[i - 1]
        top = prev[d - 1]
        shifted = np.concatenate([[0], prev[:-1]])
        xpow[i] = (shifted - top * np.array(modulus[:d])) % p
    basis_mul = np.zeros((d, d, d), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            basis_mul[i, j] = xpow[i + j]
    codec = {"kind": "poly_quot", "p": p, "modulus": list(modulus), "radices": [p] * d}
    return _algebra_ring(p, basis_mul, [1] + [0] * (d - 1), codec, spec)


def _kxy_m2(p: int, spec: dict) -> FiniteRing:
    if not _is_prime(p):
        raise NonPrimeModulus(f"kxy_m2 needs a prime, got {p}")
    basis_mul = np.zeros((3, 3, 3), dtype=np.int64)
    basis_mul[0, 0, 0] = 1
    basis_mul[0, 1, 1] = basis_mul[1, 0, 1] = 1
    basis_mul[0, 2, 2] = basis_mul[2, 0, 2] = 1
    codec = {"kind": "kxy_m2", "p": p, "radices": [p, p, p]}
    return _algebra_ring(p, basis_mul, [1, 0, 0], codec, spec)


def _positions(kind: str, n: int) -> list[tuple[int, int]]:
    if kind == "matrix":
        return [(i, j) for i in range(n) for j in range(n)]
    return [(i, j) for i in range(n) for j in range(i, n)]


def _matrix_ring(base: FiniteRing, n: int, kind: str, spec: dict) -> FiniteRing:
    if n < 1:
        raise InvalidSpec("matrix size must be >= 1")
    pos = _positions(kind, n)
    radices = [base.order] * len(pos)
    order = base.order ** len(pos)
    _check_order(order)
    digits = _all_digits(radices)
    where = {ij: k for k, ij in enumerate(pos)}
    add_d = base.add[digits[:, None, :], digits[None, :, :]]
    mul_d = np.empty((order, order, len(pos)), dtype=np.int64)
    for (i, k), slot in where.items():
        acc = np.full((order, order), base.zero, dtype=np.int64)
        for j in range(n):
            if (i, j) in where and (j, k) in where:
                term = base.mul[digits[:, where[i, j]][:, None], digits[:, where[j, k]][None, :]]
                acc = base.add[acc, term]
        mul_d[:, :, slot] = acc
    dt = _index_dtype(order)
    add = _encode_digits(add_d, radices).astype(dt)
    mul = _encode_digits(mul_d, radices).astype(dt)
    one_digits = [base.one if i == j else base.zero for (i, j) in pos]
    one = int(_encode_digits(np.array(one_digits), radices))
    zero = int(_encode_digits(np.array([base.zero] * len(pos)), radices))
    codec = {"kind": kind, "n": n, "positions": pos, "radices": radices, "base": base.codec}
    return FiniteRing(add, mul, zero, one, codec, spec)


def _product_ring(factors: list[FiniteRing], spec: dict) -> FiniteRing:
    if not factors:
        raise InvalidSpec("product needs at least one factor")
    radices = [f.order for f in factors]
    order = int(np.prod(radices))
    _check_order(order)
    digits = _all_digits(radices)
    add_d = np.stack([f.add[digits[:, None, k], digits[None, :, k]] for k, f in enumerate(factors)], -1)
    mul_d = np.stack([f.mul[digits[:, None, k], digits[None, :, k]] for k, f in enumerate(factors)], -1)
    dt = _index_dtype(order)
    add = _encode_digits(add_d, radices).astype(dt)
    mul = _encode_digits(mul_d, radices).astype(dt)
    one = int(_encode_digits(np.array([f.one for f in factors]), radices))
    zero = int(_encode_digits(np.array([f.zero for f in factors]), radices))
    codec = {"kind": "product", "radices": radices, "factors": [f.codec for f in factors]}
    return FiniteRing(add, mul, zero, one, codec, spec)


def build_ring(spec: dict | str) -> FiniteRing:
    """Construct a ring from a JSON-style spec.

    Supported kinds: ``zmod(n)``, ``gf(p)``, ``poly_quot(p, modulus)`` with
    modulus coefficients ``[c0, ..., 1]``, ``kxy_m2(p)`` (F_p[x,y]/(x,y)^2),
    ``matrix(base, n)``, ``upper_tri(base, n)`` and ``product(factors)``.
    """
    if isinstance(spec, str):
        spec = json.loads(spec)
    if not isinstance(spec, dict) or "kind" not in spec:
        raise InvalidSpec(f"ring spec must be an object with 'kind': {spec!r}")
    key = ("ring", json.dumps(spec, sort_keys=True), get_config().max_scalar_ring_order)
    return memo.get(key, lambda: _build_ring(spec))


def _build_ring(spec: dict) -> FiniteRing:
    kind = spec["kind"]
    try:
        if kind == "zmod":
            n = int(spec["n"])
            if n < 1:
                raise InvalidSpec("zmod needs n >= 1")
            return _zmod(n, spec, "zmod")
        if kind == "gf":
            p = int(spec["p"])
            if not _is_prime(p):
                raise NonPrimeModulus(f"gf({p}): {p} is not prime")
            return _zmod(p, spec, "gf")
        if kind == "poly_quot":
            p = int(spec["p"])
            if not _is_prime(p):
                raise NonPrimeModulus(f"poly_quot over F_{p}: {p} is not prime")
            return _poly_quot(p, [int(c) % p for c in spec["modulus"]], spec)
        if kind == "kxy_m2":
            return _kxy_m2(int(spec["p"]), spec)
        if kind in ("matrix", "upper_tri"):
            return _matrix_ring(build_ring(spec["base"]), int(spec["n"]), kind, spec)
        if kind == "product":
            return _product_ring([build_ring(f) for f in spec["factors"]], spec)
    except KeyError as exc:
        raise InvalidSpec(f"ring spec {spec!r} is missing field {exc}") from None
    raise InvalidSpec(f"unknown ring kind {kind!r}")


def ring_from_tables(add, mul, zero: int, one: int, codec: dict | None = None,
                     name: str | None = None, validate: bool = False) -> FiniteRing:
    R = FiniteRing(np.asarray(add), np.asarray(mul), zero, one,
                   codec or {"kind": "table"}, None, name)
    if validate:
        problems = ring_axiom_violations(R)
        if problems:
            raise InvalidSpec(f"tables do not define a ring: {problems[0]}")
    return R


def ring_axiom_violations(R: FiniteRing, limit: int = 1) -> list[str]:
    """Exhaustive axiom check (O(order^3)); returns up to ``limit`` descriptions."""
    A, M, n = R.add.astype(np.int64), R.mul.astype(np.int64), R.order
    out: list[str] = []
    if not (A == A.T).all():
        out.append("addition not commutative")
    if not _assoc(A):
        out.append("addition not associative")
    if not (A[R.zero] == np.arange(n)).all():
        out.append("zero is not additive identity")
    if not (A == R.zero).any(axis=1).all():
        out.append("missing additive inverse")
    if not _assoc(M):
        out.append("multiplication not associative")
    if not ((M[R.one] == np.arange(n)).all() and (M[:, R.one] == np.arange(n)).all()):
        out.append("one is not a two-sided identity")
    # a(b+c) = ab+ac and (b+c)a = ba+ca
    left = M[np.arange(n)[:, None, None], A[None, :, :]]
    right = A[M[:, :, None], M[:, None, :]]
    if not (left == right).all():
        out.append("left distributivity fails")
    left2 = M[A[:, :, None], np.arange(n)[None, None, :]]
    right2 = A[M[:, None, :], M[None, :, :]]
    if not (left2 == right2).all():
        out.append("right distributivity fails")
    return out[:limit]


def _assoc(T: np.ndarray) -> bool:
    # (ab)c == a(bc) for all triples
    return bool((T[T[:, :, None], np.arange(T.shape[0])[None, None, :]]
                 == T[np.arange(T.shape[0])[:, None, None], T[None, :, :]]).all())


# -- codec helpers ----------------------------------------------------------

def _digits_of(index: int, radices: list[int]) -> list[int]:
    out = []
    for r in radices:
        out.append(index % r)
        index //= r
    return out


def _decode(codec: dict, index: int):
    kind = codec["kind"]
    if kind in ("zmod", "gf", "table"):
        return index
    if kind in ("poly_quot", "kxy_m2"):
        return tuple(_digits_of(index, codec["radices"]))
    if kind in ("matrix", "upper_tri"):
        digits = _digits_of(index, codec["radices"])
        return {tuple(ij): _decode(codec["base"], d) for ij, d in zip(codec["positions"], digits)}
    if kind == "product":
        digits = _digits_of(index, codec["radices"])
        return tuple(_decode(c, d) for c, d in zip(codec["factors"], digits))
    raise InvalidSpec(f"unknown codec {kind}")


def _encode(codec: dict, value) -> int:
    kind = codec["kind"]
    if kind in ("zmod", "gf", "table"):
        return int(value)
    if kind in ("poly_quot", "kxy_m2"):
        return int(_encode_digits(np.array(value), codec["radices"]))
    if kind in ("matrix", "upper_tri"):
        if isinstance(value, dict):
            digits = [_encode(codec["base"], value[tuple(ij)]) for ij in codec["positions"]]
        else:  # nested rows
            digits = [_encode(codec["base"], value[i][j]) for i, j in codec["positions"]]
        return int(_encode_digits(np.array(digits), codec["radices"]))
    if kind == "product":
        digits = [_encode(c, v) for c, v in zip(codec["factors"], value)]
        return int(_encode_digits(np.array(digits), codec["radices"]))
    raise InvalidSpec(f"unknown codec {kind}")


def _fmt(codec: dict, index: int) -> str:
    kind = codec["kind"]
    if kind in ("zmod", "gf", "table"):
        return str(index)
    if kind in ("poly_quot", "kxy_m2"):
        names = ["1", "x", "y"] if kind == "kxy_m2" else ["1"] + [
            "x" if i == 1 else f"x^{i}" for i in range(1, len(codec["radices"]))]
        terms = []
        for c, nm in zip(_digits_of(index, codec["radices"]), names):
            if c:
                terms.append(nm if nm != "1" and c == 1 else (str(c) if nm == "1" else f"{c}{nm}"))
        return "+".join(terms) or "0"
    if kind in ("matrix", "upper_tri"):
        n = codec["n"]
        digits = dict(zip(map(tuple, codec["positions"]), _digits_of(index, codec["radices"])))
        rows = []
        for i in range(n):
            row = [(_fmt(codec["base"], digits[i, j]) if (i, j) in digits else "0") for j in range(n)]
            rows.append("[" + ",".join(row) + "]")
        return "[" + ",".join(rows) + "]"
    if kind == "product":
        digits = _digits_of(index, codec["radices"])
        return "(" + ",".join(_fmt(c, d) for c, d in zip(codec["factors"], digits)) + ")"
    return str(index)


# -- ideals and predicates ---------------------------------------------------

def _check_ideal_limit(R: FiniteRing) -> None:
    limit = get_config().max_ring_order
    if R.order > limit:
        raise SizeLimitExceeded(f"ideal enumeration needs order <= {limit}, ring has {R.order}")


def principal_right_ideal(R: FiniteRing, a: int) -> RightIdeal:
    return RightIdeal(R, bits_from_indices(R.mul[a], R.order))


def right_ideal_generated(R: FiniteRing, gens) -> RightIdeal:
    """Smallest right ideal containing ``gens``: the additive span of the aR."""
    cur = np.array([R.zero])
    for g in gens:
        cur = indices_from_bits(_bits.sumset_bits(R.add, cur, R.mul[int(g)]), R.order)
    return RightIdeal(R, bits_from_indices(cur, R.order))


def right_ideals(R: FiniteRing) -> list[RightIdeal]:
    """Every right ideal, sorted by (size, members)."""
    _check_ideal_limit(R)
    budget = get_config().max_lattice

    def compute():
        members = _bits.join_closure(R.add, R.zero, R.mul, R.units, budget, "right ideal lattice")
        return [RightIdeal(R, m) for m in members]

    return memo.get(("right_ideals", R.digest, budget), compute)


def is_right_ideal(R: FiniteRing, members: int) -> bool:
    el = indices_from_bits(members, R.order)
    if R.zero not in el:
        return False
    mask = _bits.mask_from_bits(members, R.order)
    return bool(mask[R.add[np.ix_(el, el)]].all() and mask[R.mul[el]].all())


def idempotents(R: FiniteRing) -> list[int]:
    d = np.diagonal(R.mul)
    return np.flatnonzero(d == np.arange(R.order)).tolist()


def center(R: FiniteRing) -> int:
    return bits_from_indices(np.flatnonzero((R.mul == R.mul.T).all(axis=1)), R.order)


def maximal_right_ideals(R: FiniteRing) -> list[RightIdeal]:
    full = (1 << R.order) - 1
    proper = [I for I in right_ideals(R) if I.members != full]
    return [I for I in proper
            if not any(I.members != J.members and I.members & ~J.members == 0 for J in proper)]


def jacobson_radical(R: FiniteRing) -> RightIdeal:
    """Intersection of the maximal right ideals (two-sided for finite rings)."""
    bits = (1 << R.order) - 1
    for I in maximal_right_ideals(R):
        bits &= I.members
    J = RightIdeal(R, bits)
    el = J.elements()
    # two-sidedness: R*J stays inside J
    assert _bits.mask_from_bits(bits, R.order)[R.mul[:, el]].all(), "radical is not two-sided"
    return J


def is_essential_right_ideal(R: FiniteRing, I: RightIdeal) -> bool:
    if not is_right_ideal(R, I.members):
        raise NotAnIdeal(f"{I.describe()} is not a right ideal of {R.name}")
    zero_bit = 1 << R.zero
    for a in range(R.order):
        if a == R.zero:
            continue
        if principal_right_ideal(R, a).members & I.members == zero_bit:
            return False
    return True


def essential_right_ideals(R: FiniteRing) -> list[RightIdeal]:
    return memo.get(("essential_right_ideals", R.digest),
                    lambda: [I for I in right_ideals(R) if is_essential_right_ideal(R, I)])


def _power(R: FiniteRing, a: int, n: int) -> int:
    x = R.one
    for _ in range(n):
        x = int(R.mul[x, a])
    return x


def ring_predicate(R: FiniteRing, name: str) -> Verdict:
    if name not in RING_PREDICATES:
        raise UnknownPredicate(f"unknown ring predicate {name!r}; expected one of {RING_PREDICATES}")
    return _RING_CHECKS[name](R)


def _commutative(R):
    bad = np.argwhere(R.mul != R.mul.T)
    if len(bad):
        a, b = map(int, bad[0])
        return Verdict(False, {"a": a, "b": b, "ab": int(R.mul[a, b]), "ba": int(R.mul[b, a])})
    return Verdict(True)


def _local(R):
    maxes = maximal_right_ideals(R)
    if len(maxes) == 1:
        return Verdict(True, {"maximal_right_ideal": maxes[0].elements()})
    return Verdict(False, {"maximal_right_ideals": [I.elements() for I in maxes]})


def _vnr(R):
    for a in range(R.order):
        # a x a for all x
        if not (R.mul[R.mul[a], a] == a).any():
            return Verdict(False, {"a": a})
    return Verdict(True)


def _semisimple(R):
    J = jacobson_radical(R)
    nonzero = [i for i in J.elements() if i != R.zero]
    if nonzero:
        return Verdict(False, {"radical_element": nonzero[0], "radical": J.elements()},
                       notes=["decided as: Jacobson radical = 0 (finite rings are artinian)"])
    return Verdict(True, notes=["decided as: Jacobson radical = 0 (finite rings are artinian)"])


def _abelian(R):
    for e in idempotents(R):
        bad = np.flatnonzero(R.mul[e] != R.mul[:, e])
        if len(bad):
            r = int(bad[0])
            return Verdict(False, {"idempotent": e, "r": r, "er": int(R.mul[e, r]),
                                   "re": int(R.mul[r, e])})
    return Verdict(True)


def _reduced(R):
    for a in range(R.order):
        if a == R.zero:
            continue
        x = a
        for n in range(1, R.order + 1):
            if x == R.zero:
                return Verdict(False, {"nilpotent": a, "index": n})
            x = int(R.mul[x, a])
    return Verdict(True)


def _spr(R):
    worst = 1
    for a in range(R.order):
        n = 1
        while True:
            an = _power(R, a, n)
            an1 = int(R.mul[an, a])
            if (R.mul[an1] == an).any():  # a^n in a^(n+1) R
                break
            n += 1
        worst = max(worst, n)
    return Verdict(True, {"max_index": worst},
                   notes=["every finite ring is strongly pi-regular; index recorded"])


def _field(R):
    if R.order < 2:
        return Verdict(False, {"reason": "zero ring"})
    c = _commutative(R)
    if not c:
        return Verdict(False, c.witness)
    non_units = sorted(set(range(R.order)) - set(R.units.tolist()) - {R.zero})
    if non_units:
        return Verdict(False, {"non_unit": non_units[0]})
    return Verdict(True)


_RING_CHECKS = {
    "commutative": _commutative,
    "local": _local,
    "von_neumann_regular": _vnr,
    "semisimple": _semisimple,
    "abelian": _abelian,
    "reduced": _reduced,
    "strongly_pi_regular": _spr,
    "field": _field,
}
