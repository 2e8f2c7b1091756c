"""Congruence filters, congruences, quotients, and derived notions.

A *filter* is an up-closed subset containing 1 that is closed under product
and meet.  A *congruence filter* is a filter closed under all left and right
conjugates  l_b(x) = b\\(x*b) /\\ 1  and  r_b(x) = (b*x)/b /\\ 1.  Congruence
filters correspond one-to-one with congruences via

    theta_F = {(a, b) : a/b in F and b/a in F}

and the inverse map sends a congruence to the union of the blocks of
elements >= 1.  Congruences are represented as tuples ``rep`` with ``rep[x]``
the least element of x's block.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .finalg import (FinAlg, InvalidAlgebra, assert_valid, make_algebra,
                     positive_cone)

Congruence = tuple[int, ...]


def conjugate(alg: FinAlg, kind: str, a: int) -> tuple[int, ...]:
    """The unary map l_a or r_a as a value table over the carrier."""
    one = alg.unit
    if kind == "l":
        return tuple(alg.meet[alg.ldiv[a][alg.prod[x][a]]][one]
                     for x in range(alg.size))
    if kind == "r":
        return tuple(alg.meet[alg.rdiv[alg.prod[a][x]][a]][one]
                     for x in range(alg.size))
    raise ValueError(f"conjugate kind must be 'l' or 'r', got {kind!r}")


def is_filter(alg: FinAlg, s: frozenset[int]) -> bool:
    if alg.unit not in s:
        return False
    for x in s:
        for y in range(alg.size):
            if alg.le(x, y) and y not in s:
                return False
        for y in s:
            if alg.prod[x][y] not in s or alg.meet[x][y] not in s:
                return False
    return True


def is_congruence_filter(alg: FinAlg, s: frozenset[int]) -> bool:
    if not is_filter(alg, s):
        return False
    for b in range(alg.size):
        l, r = conjugate(alg, "l", b), conjugate(alg, "r", b)
        if any(l[x] not in s or r[x] not in s for x in s):
            return False
    return True


def _close(alg: FinAlg, seed: Iterable[int], conjugation: bool) -> frozenset[int]:
    conj = []
    if conjugation:
        conj = [conjugate(alg, k, b) for k in ("l", "r") for b in range(alg.size)]
    s = set(seed)
    s.add(alg.unit)
    while True:
        new = set()
        for x in s:
            for y in range(alg.size):
                if alg.le(x, y) and y not in s:
                    new.add(y)
            for y in s:
                for v in (alg.prod[x][y], alg.meet[x][y]):
                    if v not in s:
                        new.add(v)
            for c in conj:
                if c[x] not in s:
                    new.add(c[x])
        if not new:
            return frozenset(s)
        s |= new


def generate_filter(alg: FinAlg, seed: Iterable[int]) -> frozenset[int]:
    return _close(alg, seed, conjugation=False)


def generate_congruence_filter(alg: FinAlg, seed: Iterable[int]) -> frozenset[int]:
    return _close(alg, seed, conjugation=True)


def all_filters(alg: FinAlg) -> list[frozenset[int]]:
    """Every filter, as joins of principal filters (smallest first)."""
    return _join_closure(alg, generate_filter)


def _join_closure(alg, gen) -> list[frozenset[int]]:
    found = {gen(alg, ())}
    found.update(gen(alg, (a,)) for a in range(alg.size))
    frontier = set(found)
    while frontier:
        fresh = set()
        for f in frontier:
            for g in found:
                if not (f <= g or g <= f):
                    j = gen(alg, f | g)
                    if j not in found and j not in fresh:
                        fresh.add(j)
        found |= fresh
        frontier = fresh
    return sorted(found, key=lambda f: (len(f), sorted(f)))


@dataclass(frozen=True)
class CongruenceFilterLattice:
    alg: FinAlg
    filters: tuple[frozenset[int], ...]  # sorted by (size, elements)

    def __len__(self) -> int:
        return len(self.filters)

    def __iter__(self):
        return iter(self.filters)

    def leq(self, f: frozenset[int], g: frozenset[int]) -> bool:
        return f <= g

    def bottom(self) -> frozenset[int]:
        return self.filters[0]

    def top(self) -> frozenset[int]:
        return self.filters[-1]

    def atoms(self) -> list[frozenset[int]]:
        bot = self.bottom()
        proper = [f for f in self.filters if f != bot]
        return [f for f in proper
                if not any(g != f and bot < g < f for g in proper)]

    def maximal_proper(self) -> list[frozenset[int]]:
        whole = self.top()
        proper = [f for f in self.filters if f != whole]
        return [f for f in proper
                if not any(g != f and f < g < whole for g in proper)]


def congruence_filters(alg: FinAlg) -> CongruenceFilterLattice:
    """All congruence filters: joins of principal ones, smallest first.

    The least congruence filter is the positive cone (generated by the empty
    set); the lattice meet is intersection and join is generated closure.
    """
    return CongruenceFilterLattice(
        alg, tuple(_join_closure(alg, generate_congruence_filter)))


# ----------------------------------------------------------------------
# the filter <-> congruence correspondence


def filter_to_congruence(alg: FinAlg, f: frozenset[int]) -> Congruence:
    """theta_F as a block-representative tuple.

    Refuses plain filters: theta_F of a non-congruence filter can still be
    an equivalence relation, it just fails compatibility, so the closure
    property is checked up front rather than inferred from the relation.
    """
    if not is_congruence_filter(alg, f):
        raise InvalidAlgebra("input is not a congruence filter")
    n = alg.size

    def related(a, b):
        return alg.rdiv[a][b] in f and alg.rdiv[b][a] in f

    rep = [min(b for b in range(n) if related(a, b)) for a in range(n)]
    for a in range(n):
        for b in range(n):
            if related(a, b) != (rep[a] == rep[b]):
                raise InvalidAlgebra("theta_F is not an equivalence; "
                                     "input is not a congruence filter")
    return tuple(rep)


def congruence_to_filter(alg: FinAlg, theta: Congruence) -> frozenset[int]:
    pos = {theta[x] for x in positive_cone(alg)}
    return frozenset(x for x in range(alg.size) if theta[x] in pos)


def congruence_from_pairs(alg: FinAlg, pairs: Iterable[tuple[int, int]]) -> Congruence:
    """The least congruence containing the given pairs (operation-closed)."""
    n = alg.size
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y) -> bool:
        rx, ry = find(x), find(y)
        if rx == ry:
            return False
        parent[max(rx, ry)] = min(rx, ry)
        return True

    for a, b in pairs:
        union(a, b)
    tables = (alg.join, alg.meet, alg.prod, alg.ldiv, alg.rdiv)
    changed = True
    while changed:
        changed = False
        for x in range(n):
            for y in range(x + 1, n):
                if find(x) != find(y):
                    continue
                for t in tables:
                    for z in range(n):
                        if union(t[x][z], t[y][z]):
                            changed = True
                        if union(t[z][x], t[z][y]):
                            changed = True
    roots = [find(x) for x in range(n)]
    rep = [min(y for y in range(n) if roots[y] == roots[x]) for x in range(n)]
    return tuple(rep)


def all_congruences_bruteforce(alg: FinAlg) -> list[Congruence]:
    """Independent oracle: principal congruences closed under pairwise join.

    Never consults filters or conjugates — only operation-compatibility of
    partitions — so it can cross-check the congruence-filter route.
    """
    n = alg.size
    identity = tuple(range(n))
    found = {identity}
    found.update(congruence_from_pairs(alg, [(a, b)])
                 for a in range(n) for b in range(a + 1, n))
    frontier = set(found)
    while frontier:
        fresh = set()
        for t in frontier:
            for u in found:
                pairs = [(x, t[x]) for x in range(n)] + [(x, u[x]) for x in range(n)]
                j = congruence_from_pairs(alg, pairs)
                if j not in found and j not in fresh:
                    fresh.add(j)
        found |= fresh
        frontier = fresh
    return sorted(found)


# ----------------------------------------------------------------------
# quotients and irreducibility


def quotient(alg: FinAlg, f: frozenset[int], name: Optional[str] = None) -> FinAlg:
    theta = filter_to_congruence(alg, f)
    reps = sorted(set(theta))
    index = {r: i for i, r in enumerate(reps)}
    m = len(reps)
    tables = {}
    for op in ("join", "meet", "prod", "ldiv", "rdiv"):
        t = getattr(alg, op)
        tables[op] = [[index[theta[t[a][b]]] for b in reps] for a in reps]
    zero = None if alg.zero is None else index[theta[alg.zero]]
    q = make_algebra(m, index[theta[alg.unit]], tables["join"], tables["meet"],
                     tables["prod"], tables["ldiv"], tables["rdiv"], zero,
                     name or (f"{alg.name}/{len(f)}" if alg.name else None))
    return assert_valid(q)


def is_subdirectly_irreducible(alg: FinAlg) -> bool:
    """Exactly one atom in the congruence filter lattice (finite algebras:
    unique atom = monolith)."""
    return len(congruence_filters(alg).atoms()) == 1


def is_simple(alg: FinAlg) -> bool:
    return len(congruence_filters(alg)) == 2


def radical(alg: FinAlg) -> frozenset[int]:
    """Intersection of the maximal proper congruence filters (bounded input).

    For the trivial algebra the intersection is empty and the whole carrier
    is returned.
    """
    if alg.zero is None:
        raise InvalidAlgebra("radical needs a bounded algebra (zero declared)")
    maximal = congruence_filters(alg).maximal_proper()
    rad = frozenset(range(alg.size))
    for f in maximal:
        rad &= f
    return rad
