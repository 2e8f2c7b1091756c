"""Class operators: subalgebras, homomorphic images, HS membership,
and comparison of the varieties generated by finite algebras.

For a finite algebra every ultrapower is isomorphic to the algebra
itself, so the quasivariety-style closure HSP_u collapses to HS on a
finite generator.  By Jonsson's lemma (residuated lattices are
congruence distributive) the subdirectly irreducible members of V(a)
all lie in HS(a), so

    V(a) <= V(b)  iff  every SI member of HS(a) lies in HS(b).

That is what ``var_leq`` computes.  Membership "in HS(b)" is probed
through both operator orders (HS and SH) and the disjunction taken;
for every catalog we have examined the two closures coincide, but the
disjunction costs little and removes any dependence on the order of
operators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .congruence import (
    congruence_filters,
    is_subdirectly_irreducible,
    quotient,
)
from .finalg import FinAlg, InvalidAlgebra, canonical_key, make_algebra

__all__ = [
    "subuniverses",
    "subalgebra",
    "subalgebras",
    "homomorphic_images",
    "AlgebraCatalog",
    "hs_catalog",
    "sh_catalog",
    "closure_catalog",
    "hs_contains",
    "var_leq",
    "var_equal",
    "VarietyPoset",
    "variety_poset",
    "poset_dot",
]


# ---------------------------------------------------------------------------
# subuniverses / subalgebras


def _close_subset(alg: FinAlg, seed: Iterable[int]) -> frozenset[int]:
    """Smallest subuniverse containing seed (and the constants)."""
    cur = set(seed)
    cur.add(alg.unit)
    if alg.zero is not None:
        cur.add(alg.zero)
    tables = (alg.join, alg.meet, alg.prod, alg.ldiv, alg.rdiv)
    changed = True
    while changed:
        changed = False
        members = list(cur)
        for t in tables:
            for a in members:
                row = t[a]
                for b in members:
                    v = row[b]
                    if v not in cur:
                        cur.add(v)
                        changed = True
    return frozenset(cur)


def subuniverses(alg: FinAlg) -> list[frozenset[int]]:
    """All subuniverses, smallest first.

    Grown by closure extension: start from the closure of the
    constants and repeatedly close the union with one more element.
    Every subuniverse is reached this way because it is the closure of
    any of its own generating sets.
    """
    base = _close_subset(alg, ())
    seen = {base}
    frontier = [base]
    while frontier:
        grown = []
        for s in frontier:
            for x in range(alg.size):
                if x not in s:
                    t = _close_subset(alg, s | {x})
                    if t not in seen:
                        seen.add(t)
                        grown.append(t)
        frontier = grown
    return sorted(seen, key=lambda s: (len(s), sorted(s)))


def subalgebra(alg: FinAlg, universe: Iterable[int], name: Optional[str] = None) -> FinAlg:
    """Restrict alg to a subuniverse, relabelled by ascending old label."""
    elems = sorted(set(universe))
    idx = {e: i for i, e in enumerate(elems)}
    for e in elems:
        if not 0 <= e < alg.size:
            raise InvalidAlgebra(f"element {e} out of range")
    if alg.unit not in idx:
        raise InvalidAlgebra("subuniverse must contain the unit")
    if alg.zero is not None and alg.zero not in idx:
        raise InvalidAlgebra("subuniverse must contain the zero")

    def restrict(t):
        out = []
        for a in elems:
            row = []
            for b in elems:
                v = t[a][b]
                if v not in idx:
                    raise InvalidAlgebra(
                        f"subset not closed: {a},{b} -> {v}"
                    )
                row.append(idx[v])
            out.append(tuple(row))
        return tuple(out)

    return make_algebra(
        size=len(elems),
        unit=idx[alg.unit],
        join=restrict(alg.join),
        meet=restrict(alg.meet),
        prod=restrict(alg.prod),
        ldiv=restrict(alg.ldiv),
        rdiv=restrict(alg.rdiv),
        zero=None if alg.zero is None else idx[alg.zero],
        name=name,
    )


# ---------------------------------------------------------------------------
# catalogs


@dataclass
class AlgebraCatalog:
    """Insertion-ordered collection of algebras, one per isomorphism class."""

    entries: list[FinAlg] = field(default_factory=list)
    _by_key: dict = field(default_factory=dict, repr=False)

    def add(self, alg: FinAlg) -> FinAlg:
        """Insert unless an isomorphic entry exists; return the representative."""
        key = canonical_key(alg)
        rep = self._by_key.get(key)
        if rep is None:
            self._by_key[key] = alg
            self.entries.append(alg)
            return alg
        return rep

    def find(self, alg: FinAlg) -> Optional[FinAlg]:
        return self._by_key.get(canonical_key(alg))

    def __contains__(self, alg: FinAlg) -> bool:
        return self.find(alg) is not None

    def __iter__(self) -> Iterator[FinAlg]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


def subalgebras(alg: FinAlg) -> AlgebraCatalog:
    """All subalgebras up to isomorphism (signature-aware: with a zero
    present, every subalgebra contains it)."""
    cat = AlgebraCatalog()
    for s in subuniverses(alg):
        cat.add(subalgebra(alg, s))
    return cat


def homomorphic_images(alg: FinAlg) -> AlgebraCatalog:
    """Quotients by every congruence filter, up to isomorphism."""
    cat = AlgebraCatalog()
    for f in congruence_filters(alg):
        cat.add(quotient(alg, f))
    return cat


_HS_CACHE: dict[FinAlg, AlgebraCatalog] = {}
_SH_CACHE: dict[FinAlg, AlgebraCatalog] = {}
_CLOSURE_CACHE: dict[FinAlg, AlgebraCatalog] = {}


def hs_catalog(alg: FinAlg) -> AlgebraCatalog:
    """Quotients of subalgebras of alg, up to isomorphism."""
    cached = _HS_CACHE.get(alg)
    if cached is not None:
        return cached
    cat = AlgebraCatalog()
    for s in subuniverses(alg):
        sub = subalgebra(alg, s)
        for f in congruence_filters(sub):
            cat.add(quotient(sub, f))
    _HS_CACHE[alg] = cat
    return cat


def sh_catalog(alg: FinAlg) -> AlgebraCatalog:
    """Subalgebras of quotients of alg, up to isomorphism."""
    cached = _SH_CACHE.get(alg)
    if cached is not None:
        return cached
    cat = AlgebraCatalog()
    for f in congruence_filters(alg):
        q = quotient(alg, f)
        for s in subuniverses(q):
            cat.add(subalgebra(q, s))
    _SH_CACHE[alg] = cat
    return cat


def closure_catalog(alg: FinAlg) -> AlgebraCatalog:
    """HS(alg) united with SH(alg), up to isomorphism."""
    cached = _CLOSURE_CACHE.get(alg)
    if cached is not None:
        return cached
    cat = AlgebraCatalog()
    for a in hs_catalog(alg):
        cat.add(a)
    for a in sh_catalog(alg):
        cat.add(a)
    _CLOSURE_CACHE[alg] = cat
    return cat


def hs_contains(b: FinAlg, a: FinAlg) -> bool:
    """Is a (isomorphic to) a quotient of a subalgebra of b?

    Both operator orders are probed (see module docstring).
    """
    if (a.zero is None) != (b.zero is None):
        raise InvalidAlgebra("signature mismatch: one algebra has a zero")
    return a in closure_catalog(b)


# ---------------------------------------------------------------------------
# variety comparison


def var_leq(a: FinAlg, b: FinAlg) -> bool:
    """Does V(a) <= V(b) hold for the generated varieties?"""
    if (a.zero is None) != (b.zero is None):
        raise InvalidAlgebra("signature mismatch: one algebra has a zero")
    target = closure_catalog(b)
    for m in closure_catalog(a):
        if is_subdirectly_irreducible(m) and m not in target:
            return False
    return True


def var_equal(a: FinAlg, b: FinAlg) -> bool:
    return var_leq(a, b) and var_leq(b, a)


# ---------------------------------------------------------------------------
# variety posets


@dataclass(frozen=True)
class VarietyPoset:
    """Preorder of generated varieties over a list of algebras.

    labels   -- one per input algebra, in input order
    relation -- relation[i][j] iff V(inputs[i]) <= V(inputs[j])
    classes  -- indices grouped by mutual containment, each sorted,
                ordered by smallest member
    covers   -- Hasse edges (lower_class, upper_class) of the quotient
                poset, as indices into classes
    """

    labels: tuple[str, ...]
    relation: tuple[tuple[bool, ...], ...]
    classes: tuple[tuple[int, ...], ...]
    covers: tuple[tuple[int, int], ...]

    def class_label(self, c: int) -> str:
        return "/".join(self.labels[i] for i in self.classes[c])


def variety_poset(algs: Iterable[FinAlg]) -> VarietyPoset:
    """Compare the varieties generated by each input pairwise."""
    items = list(algs)
    if not items:
        raise InvalidAlgebra("empty input")
    labels = tuple(
        a.name if a.name is not None else f"A{i}" for i, a in enumerate(items)
    )
    n = len(items)
    rel = tuple(
        tuple(var_leq(items[i], items[j]) for j in range(n)) for i in range(n)
    )

    assigned: dict[int, int] = {}
    classes: list[tuple[int, ...]] = []
    for i in range(n):
        if i in assigned:
            continue
        block = [j for j in range(n) if rel[i][j] and rel[j][i]]
        for j in block:
            assigned[j] = len(classes)
        classes.append(tuple(sorted(block)))

    k = len(classes)

    def cls_lt(c, d):
        i, j = classes[c][0], classes[d][0]
        return c != d and rel[i][j]

    covers = []
    for c in range(k):
        for d in range(k):
            if cls_lt(c, d) and not any(
                cls_lt(c, e) and cls_lt(e, d) for e in range(k)
            ):
                covers.append((c, d))
    return VarietyPoset(
        labels=labels,
        relation=rel,
        classes=tuple(classes),
        covers=tuple(sorted(covers)),
    )


def poset_dot(poset: VarietyPoset) -> str:
    """Render as a DOT digraph (edges point from smaller variety to larger)."""
    lines = ["digraph variety_poset {"]
    for c in range(len(poset.classes)):
        lines.append(f'  n{c} [label="{poset.class_label(c)}"];')
    for lo, hi in poset.covers:
        lines.append(f"  n{lo} -> n{hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"
