"""Bitset helpers, a thread-safe memo, and the join-closure lattice walk.

Subsets of a finite structure are stored as Python ints (bit i set when
element i is a member).  Ints are hashable, ``&``/``|`` are fast, and
``int.bit_count`` gives sizes.
"""

from __future__ import annotations

import threading
from collections import deque
from typing import Callable, Hashable, Iterable

import numpy as np

from .errors import SizeLimitExceeded


def bits_from_indices(idx: Iterable[int] | np.ndarray, order: int) -> int:
    mask = np.zeros(order, dtype=bool)
    mask[np.asarray(idx, dtype=np.int64)] = True
    return bits_from_mask(mask)


def bits_from_mask(mask: np.ndarray) -> int:
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


def mask_from_bits(bits: int, order: int) -> np.ndarray:
    nbytes = (order + 7) // 8
    raw = np.frombuffer(bits.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:order].astype(bool)


def indices_from_bits(bits: int, order: int) -> np.ndarray:
    return np.flatnonzero(mask_from_bits(bits, order))


def lowest_bit(bits: int) -> int:
    return (bits & -bits).bit_length() - 1


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def sort_key(bits: int, order: int) -> tuple:
    """Deterministic ordering: by size, then lexicographically by members."""
    return (bits.bit_count(), tuple(indices_from_bits(bits, order).tolist()))


def sumset_bits(add: np.ndarray, a: np.ndarray, b: np.ndarray) -> int:
    vals = add[np.ix_(a, b)].ravel()
    mask = np.zeros(add.shape[0], dtype=bool)
    mask[vals] = True
    return bits_from_mask(mask)


def subgroup_generated(add: np.ndarray, zero: int, gens: Iterable[int]) -> int:
    """Additive subgroup generated by ``gens`` (finite, so closure under + suffices)."""
    order = add.shape[0]
    cur = np.array([zero], dtype=np.int64)
    for g in gens:
        if g in cur:
            continue
        # cyclic subgroup of g
        cyc = [zero]
        x = int(g)
        while x != zero:
            cyc.append(x)
            x = int(add[x, g])
        cur = indices_from_bits(sumset_bits(add, cur, np.array(cyc)), order)
    return bits_from_indices(cur, order)


def join_closure(
    add: np.ndarray,
    zero: int,
    action: np.ndarray,
    units: np.ndarray,
    budget: int,
    what: str = "lattice",
) -> list[int]:
    """All submodules of a finite module, as bitsets.

    Every submodule is reached from {0} by repeatedly adding a cyclic
    submodule xR.  For a fixed S, elements y in S + x*U (U the units of the
    ring) give the same join S + yR as x, so they are skipped.
    """
    order = add.shape[0]
    full = (1 << order) - 1
    start = 1 << zero
    seen = {start}
    queue = deque([start])
    while queue:
        s_bits = queue.popleft()
        s_el = indices_from_bits(s_bits, order)
        cand = full & ~s_bits
        while cand:
            x = lowest_bit(cand)
            t_bits = sumset_bits(add, s_el, action[x])
            cand &= ~sumset_bits(add, s_el, action[x, units])
            if t_bits not in seen:
                seen.add(t_bits)
                if len(seen) > budget:
                    raise SizeLimitExceeded(
                        f"{what} has more than {budget} members (max_lattice)"
                    )
                queue.append(t_bits)
    return sorted(seen, key=lambda b: sort_key(b, order))


def cover_pairs(members: list[int]) -> list[tuple[int, int]]:
    """Covering relations (i, j): members[i] < members[j] with nothing between."""
    sizes = [m.bit_count() for m in members]
    edges = []
    for i, a in enumerate(members):
        ups = [j for j, b in enumerate(members) if sizes[j] > sizes[i] and a & ~b == 0]
        for j in ups:
            b = members[j]
            if not any(
                sizes[i] < sizes[k] < sizes[j] and members[k] & ~b == 0
                for k in ups
            ):
                edges.append((i, j))
    return edges


class _Raised:
    __slots__ = ("exc",)

    def __init__(self, exc):
        self.exc = exc


class Memo:
    """Content-keyed cache: concurrent reads, at-most-once population per key."""

    def __init__(self):
        self._data: dict = {}
        self._lock = threading.Lock()
        self._key_locks: dict = {}

    def get(self, key: Hashable, compute: Callable):
        if key not in self._data:
            with self._lock:
                klock = self._key_locks.setdefault(key, threading.Lock())
            with klock:
                if key not in self._data:
                    try:
                        self._data[key] = compute()
                    except SizeLimitExceeded as exc:
                        # limit failures are deterministic; remember them
                        self._data[key] = _Raised(exc)
        value = self._data[key]
        if isinstance(value, _Raised):
            raise value.exc
        return value

    def clear(self) -> None:
        with self._lock:
            self._data.clear()
            self._key_locks.clear()

    def __len__(self):
        return len(self._data)


memo = Memo()
