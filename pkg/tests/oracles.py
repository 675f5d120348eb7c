"""Slow, independent reference implementations used to check the package.

Everything here works from raw Python lists and the textbook definitions.
Nothing is imported from puremod, so a shared bug cannot hide on both sides.
"""

from __future__ import annotations

from itertools import combinations, product


# -- rings from first principles -------------------------------------------------

def zmod_tables(n):
    add = [[(a + b) % n for b in range(n)] for a in range(n)]
    mul = [[(a * b) % n for b in range(n)] for a in range(n)]
    return add, mul


def dual_numbers_tables(p=2):
    """F_p[x]/(x²) with index a0 + p*a1."""
    els = [(a0, a1) for a1 in range(p) for a0 in range(p)]
    idx = {e: i for i, e in enumerate(els)}
    add = [[idx[((a[0] + b[0]) % p, (a[1] + b[1]) % p)] for b in els] for a in els]
    mul = [[idx[(a[0] * b[0] % p, (a[0] * b[1] + a[1] * b[0]) % p)] for b in els] for a in els]
    return add, mul


def kxy_tables(p=2):
    """F_p[x,y]/(x,y)² with index c1 + p*cx + p²*cy."""
    els = [(c, x, y) for y in range(p) for x in range(p) for c in range(p)]
    idx = {e: i for i, e in enumerate(els)}

    def m(a, b):
        return (a[0] * b[0] % p, (a[0] * b[1] + a[1] * b[0]) % p, (a[0] * b[2] + a[2] * b[0]) % p)

    add = [[idx[tuple((u + v) % p for u, v in zip(a, b))] for b in els] for a in els]
    mul = [[idx[m(a, b)] for b in els] for a in els]
    return add, mul


def matrix2_tables(p=2):
    """2x2 matrices over F_p, row-major digits, first entry least significant."""
    els = [(a, b, c, d) for d in range(p) for c in range(p) for b in range(p) for a in range(p)]
    idx = {e: i for i, e in enumerate(els)}

    def m(x, y):
        a, b, c, d = x
        e, f, g, h = y
        return ((a * e + b * g) % p, (a * f + b * h) % p, (c * e + d * g) % p, (c * f + d * h) % p)

    add = [[idx[tuple((u + v) % p for u, v in zip(x, y))] for y in els] for x in els]
    mul = [[idx[m(x, y)] for y in els] for x in els]
    return add, mul


def upper2_tables(p=2):
    """Upper triangular 2x2 over F_p, stored entries (1,1),(1,2),(2,2)."""
    els = [(a, b, d) for d in range(p) for b in range(p) for a in range(p)]
    idx = {e: i for i, e in enumerate(els)}

    def m(x, y):
        a, b, d = x
        e, f, h = y
        return (a * e % p, (a * f + b * h) % p, d * h % p)

    add = [[idx[tuple((u + v) % p for u, v in zip(x, y))] for y in els] for x in els]
    mul = [[idx[m(x, y)] for y in els] for x in els]
    return add, mul


# -- ring-level brute force -------------------------------------------------------

def closed_subsets(n, zero, add, act, scalars):
    """All subsets containing zero, closed under add and x -> act[x][r]; sizes must divide n."""
    others = [x for x in range(n) if x != zero]
    out = []
    for size in range(1, n + 1):
        if n % size:
            continue
        for rest in combinations(others, size - 1):
            S = frozenset((zero,) + rest)
            if all(add[a][b] in S for a in S for b in S) and all(act[a][r] in S for a in S
                                                                for r in scalars):
                out.append(S)
    return out


def right_ideals(add, mul):
    n = len(add)
    return closed_subsets(n, 0, add, mul, range(n))


def idempotents(mul):
    return [e for e in range(len(mul)) if mul[e][e] == e]


def center(mul):
    n = len(mul)
    return [a for a in range(n) if all(mul[a][b] == mul[b][a] for b in range(n))]


# -- modules ----------------------------------------------------------------------

def free_tables(add, mul, k):
    """R^k with the first coordinate least significant."""
    n = len(add)
    els = list(product(range(n), repeat=k))
    els = [tuple(reversed(e)) for e in els]
    idx = {e: i for i, e in enumerate(els)}
    madd = [[idx[tuple(add[u][v] for u, v in zip(a, b))] for b in els] for a in els]
    act = [[idx[tuple(mul[u][r] for u in a)] for r in range(n)] for a in els]
    return els, idx, madd, act


def zmod_sum_tables(n, orders):
    els = [tuple(reversed(e)) for e in product(*[range(o) for o in reversed(orders)])]
    idx = {e: i for i, e in enumerate(els)}
    madd = [[idx[tuple((u + v) % o for u, v, o in zip(a, b, orders))] for b in els] for a in els]
    act = [[idx[tuple((u * r) % o for u, o in zip(a, orders))] for r in range(n)] for a in els]
    return els, idx, madd, act


def submodules(madd, act):
    return closed_subsets(len(madd), 0, madd, act, range(len(act[0])))


def sum_of(madd, A, B):
    return frozenset(madd[a][b] for a in A for b in B)


def summands(madd, subs):
    full = frozenset(range(len(madd)))
    return [A for A in subs if any(A & B == {0} and sum_of(madd, A, B) == full for B in subs)]


def is_essential(N, D, subs):
    return N <= D and all(S == {0} or not S <= D or len(S & N) > 1 for S in subs)


def is_extending_over(candidates, madd, subs):
    sums = summands(madd, subs)
    return all(any(is_essential(N, D, subs) for D in sums) for N in candidates)


def uniform_dimension(madd, subs):
    """Largest family of nonzero submodules whose sum is direct."""
    nonzero = [S for S in subs if len(S) > 1]
    best = 0

    def grow(total, size, start):
        nonlocal best
        best = max(best, size)
        for i in range(start, len(nonzero)):
            S = nonzero[i]
            if len(S & total) == 1:
                grow(sum_of(madd, total, S), size + 1, i + 1)

    grow(frozenset([0]), 0, 0)
    return best


# -- purity -----------------------------------------------------------------------

def rd_pure(N, madd, act, n_ring):
    M = range(len(madd))
    for r in range(n_ring):
        Nr = {act[x][r] for x in N}
        Mr = {act[x][r] for x in M}
        if Nr != Mr & set(N):
            return False
    return True


def _span(madd, gens):
    S = {0}
    frontier = set(gens)
    while frontier:
        S |= frontier
        frontier = {madd[a][b] for a in S for b in S} - S
    return frozenset(S)


def ideal_pure(N, madd, act, ideals):
    M = range(len(madd))
    for I in ideals:
        NI = _span(madd, {act[x][i] for x in N for i in I})
        MI = _span(madd, {act[x][i] for x in M for i in I})
        if NI != MI & N:
            return False
    return True


def homs(madd, act, nadd, nact):
    """All module maps, found by trying every image of a small additive generating set."""
    m = len(madd)
    gens = _additive_generators(madd)
    out = []
    for images in product(range(len(nadd)), repeat=len(gens)):
        table = _extend_additive(madd, nadd, gens, images)
        if table is None:
            continue
        if all(table[act[x][r]] == nact[table[x]][r] for x in range(m) for r in range(len(act[0]))):
            out.append(tuple(table))
    return out


def _additive_generators(madd):
    n = len(madd)
    for k in range(0, n + 1):
        for gens in combinations(range(1, n), k):
            if len(_span(madd, gens)) == n:
                return list(gens)
    raise AssertionError("unreachable")


def _extend_additive(madd, nadd, gens, images):
    table = {0: 0}
    frontier = list(zip(gens, images))
    for g, y in frontier:
        if g in table and table[g] != y:
            return None
        table[g] = y
    changed = True
    while changed:
        changed = False
        for a, fa in list(table.items()):
            for b, fb in list(table.items()):
                c, fc = madd[a][b], nadd[fa][fb]
                if c in table:
                    if table[c] != fc:
                        return None
                else:
                    table[c] = fc
                    changed = True
    return [table[x] for x in range(len(madd))]


def submodules_by_cyclic_sums(madd, act):
    """Every submodule is a finite sum of cyclic ones: breadth-first search over such sums."""
    n = len(madd)
    cyclic = [_span(madd, {act[v][r] for r in range(len(act[0]))}) for v in range(n)]
    seen = {frozenset([0])}
    frontier = [frozenset([0])]
    while frontier:
        nxt = []
        for S in frontier:
            for v in range(n):
                if v in S:
                    continue
                T = sum_of(madd, S, cyclic[v])
                if T not in seen:
                    seen.add(T)
                    nxt.append(T)
        frontier = nxt
    return list(seen)


# -- endomorphism predicates ----------------------------------------------------------

def endo_facts(madd, act, subs):
    """Textbook evaluation of the endomorphism-ring predicates from the full map list."""
    n = len(madd)
    maps = homs(madd, act, madd, act)
    comp = lambda f, g: tuple(f[g[x]] for x in range(n))  # noqa: E731  (f after g)
    ker = lambda f: frozenset(x for x in range(n) if f[x] == 0)  # noqa: E731
    im = lambda f: frozenset(f)  # noqa: E731
    sums = set(summands(madd, subs))
    central = [c for c in maps if all(comp(c, f) == comp(f, c) for f in maps)]
    idem = [e for e in maps if comp(e, e) == e]
    kers = {f: ker(f) for f in maps}
    ims = {f: im(f) for f in maps}

    def morphic(pool):
        return all(any(kers[f] == ims[g] and ims[f] == kers[g] for g in pool) for f in maps)

    def quasi(pool):
        return all(any(kers[f] == ims[g] for g in pool) and any(ims[f] == kers[h] for h in pool)
                   for f in maps)

    return {
        "rickart": all(kers[f] in sums for f in maps),
        "d_rickart": all(ims[f] in sums for f in maps),
        "endoregular": all(any(comp(f, comp(g, f)) == f for g in maps) for f in maps),
        "morphic": morphic(maps),
        "quasi_morphic": quasi(maps),
        "centrally_quasi_morphic": quasi(central),
        "centrally_morphic_functional": morphic(central),
        "centrally_morphic_idempotent": all(
            any(kers[f] == ims[e] and ims[f] == kers[e] for e in idem if e in central)
            for f in maps),
        "abelian": all(e in central for e in idem),
    }
