"""Exhaustive generation of small lattices and residuated lattices up
to isomorphism, plus predicate-driven counterexample search.

Two generators are kept deliberately separate:

* the optimized search (``enumerate_lattices`` / ``enumerate_rl``)
  grows lattices one ideal at a time and backtracks over product
  tables with forced-value propagation;

* the naive generators (``naive_enumerate_lattices`` /
  ``naive_enumerate_rl``) filter raw tables through ``validate`` and
  exist solely to cross-check the optimized counts.

Element 0 is always the bottom and element n-1 the top of every
generated lattice (labels follow a linear extension and a lattice has
unique extremes).  The unit of a residuated lattice of size >= 2 is
never the bottom: x = x*1 = bottom would collapse the algebra, so
bottom units are skipped by both generators.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations, product as iproduct
from typing import Callable, Optional, Sequence, Union

from . import properties, terms
from .classops import AlgebraCatalog
from .congruence import is_simple, is_subdirectly_irreducible
from .finalg import (
    FinAlg,
    InvalidAlgebra,
    Table,
    canonical_key,
    complete_divisions,
    from_dict,
    is_isomorphic,
    is_valid,
    to_dict,
)

__all__ = [
    "enumerate_lattices",
    "naive_enumerate_lattices",
    "SearchConstraints",
    "enumerate_rl",
    "naive_enumerate_rl",
    "parse_predicate",
    "property_names",
    "find_example",
    "SIZE_CAP",
]

SIZE_CAP = 6


# ---------------------------------------------------------------------------
# lattice generation


def _lattice_tables(le: Sequence[Sequence[bool]], n: int) -> Optional[tuple[Table, Table]]:
    """Join/meet tables of a poset, or None when some pair lacks a
    unique least upper or greatest lower bound."""
    join = [[0] * n for _ in range(n)]
    meet = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            ubs = [z for z in range(n) if le[a][z] and le[b][z]]
            lub = [z for z in ubs if all(le[z][w] for w in ubs)]
            if len(lub) != 1:
                return None
            lbs = [z for z in range(n) if le[z][a] and le[z][b]]
            glb = [z for z in lbs if all(le[w][z] for w in lbs)]
            if len(glb) != 1:
                return None
            join[a][b] = lub[0]
            meet[a][b] = glb[0]
    return tuple(map(tuple, join)), tuple(map(tuple, meet))


def _poset_key(le: Sequence[Sequence[bool]], n: int):
    """Canonical form: minimal relation matrix over relabelings that
    respect the (down-degree, up-degree) invariant."""
    inv = []
    for x in range(n):
        down = sum(1 for y in range(n) if le[y][x])
        up = sum(1 for y in range(n) if le[x][y])
        inv.append((down, up))
    groups: dict[tuple[int, int], list[int]] = {}
    for x in range(n):
        groups.setdefault(inv[x], []).append(x)
    ordered = [groups[k] for k in sorted(groups)]
    best = None
    for combo in iproduct(*(permutations(g) for g in ordered)):
        old_of_new = [x for block in combo for x in block]
        key = tuple(
            le[old_of_new[i]][old_of_new[j]] for i in range(n) for j in range(n)
        )
        if best is None or key < best:
            best = key
    return best


def enumerate_lattices(n: int) -> list[tuple[Table, Table]]:
    """All n-element lattices up to isomorphism as (join, meet) pairs.

    Posets are grown one element at a time; the strict down-set of
    each new element must be an order ideal of what came before (the
    labeling is a linear extension) and must contain the bottom.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if n == 1:
        return [(((0,),), ((0,),))]
    results = []
    seen = set()
    le = [[i == j for j in range(n)] for i in range(n)]

    def grow(k: int) -> None:
        if k == n:
            tabs = _lattice_tables(le, n)
            if tabs is not None:
                key = _poset_key(le, n)
                if key not in seen:
                    seen.add(key)
                    results.append(tabs)
            return
        # candidate strict down-sets: ideals of the current poset,
        # containing the bottom; the last element must be above all
        members = list(range(k))
        for bits in range(1 << (k - 1)):
            ideal = [0] + [x for x in members[1:] if bits >> (x - 1) & 1]
            if k == n - 1 and len(ideal) != k:
                continue
            if any(
                le[y][x] and y not in ideal
                for x in ideal
                for y in members
            ):
                continue
            # each existing element must keep a greatest lower bound with k
            ok = True
            for x in members:
                lbs = [z for z in ideal if le[z][x]]
                if not any(all(le[w][z] for w in lbs) for z in lbs):
                    ok = False
                    break
            if not ok:
                continue
            for x in ideal:
                le[x][k] = True
            grow(k + 1)
            for x in ideal:
                le[x][k] = False

    grow(1)
    return results


def naive_enumerate_lattices(n: int) -> list[tuple[Table, Table]]:
    """Oracle: every upper-triangular relation on n labels, filtered by
    transitivity and the lattice property, deduplicated."""
    if n < 1:
        raise ValueError("need n >= 1")
    if n == 1:
        return [(((0,),), ((0,),))]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    results = []
    seen = set()
    for bits in range(1 << len(pairs)):
        le = [[i == j for j in range(n)] for i in range(n)]
        for p, (i, j) in enumerate(pairs):
            if bits >> p & 1:
                le[i][j] = True
        if any(
            le[a][b] and le[b][c] and not le[a][c]
            for a in range(n)
            for b in range(n)
            for c in range(n)
        ):
            continue
        tabs = _lattice_tables(le, n)
        if tabs is None:
            continue
        key = _poset_key(le, n)
        if key not in seen:
            seen.add(key)
            results.append(tabs)
    return results


# ---------------------------------------------------------------------------
# residuated lattice search


@dataclass(frozen=True)
class SearchConstraints:
    """What to enumerate (or, for find_example, the size cap)."""

    size: int
    commutative: bool = False
    integral: bool = False
    chain: bool = False
    predicate: Union[str, terms.Statement, None] = None

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("size must be >= 1")


def _is_chain_lattice(join: Table, n: int) -> bool:
    return all(join[a][b] in (a, b) for a in range(n) for b in range(n))


def _search_products(
    join: Table,
    meet: Table,
    n: int,
    unit: int,
    commutative: bool,
) -> list[Table]:
    """All completions of the product table for a fixed lattice and
    unit, as plain nested tuples.  Propagates: unit laws and bottom
    absorption (prefilled), monotonicity intervals, forced values at
    join-reducible arguments, the commutative mirror, and incremental
    associativity; leaves are checked for full associativity and
    join-preservation in both arguments."""
    top = n - 1
    down = [0] * n
    up = [0] * n
    for a in range(n):
        for b in range(n):
            if join[a][b] == b:
                down[b] |= 1 << a
                up[a] |= 1 << b
    decomps = [
        [
            (p, q)
            for p in range(n)
            for q in range(p + 1, n)
            if p != x and q != x and join[p][q] == x
        ]
        for x in range(n)
    ]

    prod = [[None] * n for _ in range(n)]
    for x in range(n):
        prod[unit][x] = x
        prod[x][unit] = x
        prod[0][x] = 0
        prod[x][0] = 0
    if n > 1 and unit == 0:
        return []

    cells = [
        (a, b)
        for a in range(n)
        for b in range(n)
        if prod[a][b] is None and not (commutative and a > b)
    ]
    out: list[Table] = []

    def assoc_ok(a: int, b: int, v: int) -> bool:
        P = prod
        for z in range(n):
            vz = P[v][z]
            bz = P[b][z]
            if vz is not None and bz is not None:
                abz = P[a][bz]
                if abz is not None and vz != abz:
                    return False
            xa = P[z][a]
            zv = P[z][v]
            if xa is not None and zv is not None:
                xab = P[xa][b]
                if xab is not None and xab != zv:
                    return False
        for x in range(n):
            for y in range(n):
                if P[x][y] == a:
                    yb = P[y][b]
                    if yb is not None and P[x][yb] is not None and P[x][yb] != v:
                        return False
                if P[x][y] == b and P[a][x] is not None:
                    sx = P[a][x]
                    if P[sx][y] is not None and P[sx][y] != v:
                        return False
        return True

    def leaf_ok() -> bool:
        P = prod
        for a in range(n):
            Pa = P[a]
            for b in range(n):
                ab = Pa[b]
                for c in range(n):
                    if P[ab][c] != Pa[P[b][c]]:
                        return False
                    if Pa[join[b][c]] != join[Pa[b]][Pa[c]]:
                        return False
                    if P[join[b][c]][a] != join[P[b][a]][P[c][a]]:
                        return False
        return True

    def extend(i: int) -> None:
        if i == len(cells):
            if leaf_ok():
                out.append(tuple(tuple(row) for row in prod))
            return
        a, b = cells[i]
        lo, hi = 0, top
        for a2 in range(n):
            if not down[a] >> a2 & 1 and not up[a] >> a2 & 1:
                continue
            row = prod[a2]
            below_a = bool(down[a] >> a2 & 1)
            for b2 in range(n):
                v = row[b2]
                if v is None:
                    continue
                if below_a and down[b] >> b2 & 1:
                    lo = join[lo][v]
                elif up[a] >> a2 & 1 and up[b] >> b2 & 1:
                    hi = meet[hi][v]
        forced = None
        for p, q in decomps[a]:
            vp, vq = prod[p][b], prod[q][b]
            if vp is not None and vq is not None:
                w = join[vp][vq]
                if forced is not None and forced != w:
                    return
                forced = w
        for p, q in decomps[b]:
            vp, vq = prod[a][p], prod[a][q]
            if vp is not None and vq is not None:
                w = join[vp][vq]
                if forced is not None and forced != w:
                    return
                forced = w
        if forced is not None:
            candidates = [forced] if down[forced] >> lo & 1 and down[hi] >> forced & 1 else []
        else:
            candidates = [
                v for v in range(n) if down[v] >> lo & 1 and down[hi] >> v & 1
            ]
        mirror = commutative and a != b
        for v in candidates:
            prod[a][b] = v
            if mirror:
                prod[b][a] = v
            if assoc_ok(a, b, v) and (not mirror or assoc_ok(b, a, v)):
                extend(i + 1)
            prod[a][b] = None
            if mirror:
                prod[b][a] = None

    extend(0)
    return out


def _search_task(args) -> list[dict]:
    """One (lattice, unit) slice of the search; returns serialized
    algebras in deterministic order (used for --jobs partitioning)."""
    join, meet, n, unit, commutative = args
    found = []
    for prod in _search_products(join, meet, n, unit, commutative):
        try:
            alg = complete_divisions(n, unit, join, meet, prod)
        except InvalidAlgebra:
            continue
        if is_valid(alg):
            found.append(alg)
    return [to_dict(a) for a in found]


def _constraint_tasks(c: SearchConstraints) -> list[tuple]:
    n = c.size
    lattices = enumerate_lattices(n)
    if c.chain:
        lattices = [lm for lm in lattices if _is_chain_lattice(lm[0], n)]
    tasks = []
    for join, meet in lattices:
        if n == 1:
            units = [0]
        elif c.integral:
            units = [n - 1]
        else:
            units = list(range(1, n))
        for unit in units:
            tasks.append((join, meet, n, unit, c.commutative))
    return tasks


def enumerate_rl(c: SearchConstraints, cap: int = SIZE_CAP, jobs: int = 1) -> AlgebraCatalog:
    """All residuated lattices matching the constraint flags, up to
    isomorphism, every entry validated.  The search tree is statically
    partitioned by (lattice, unit); the merge order is fixed, so the
    catalog does not depend on the worker count."""
    if c.size > cap:
        raise ValueError(f"size {c.size} exceeds cap {cap}")
    tasks = _constraint_tasks(c)
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_search_task, tasks))
    else:
        chunks = [_search_task(t) for t in tasks]
    keep = _compile_predicate(c.predicate)
    cat = AlgebraCatalog()
    count = 0
    for chunk in chunks:
        for d in chunk:
            alg = from_dict(d)
            if not keep(alg):
                continue
            named = alg.rename(f"rl{c.size}_{count}")
            if cat.add(named) is named:
                count += 1
    return cat


def naive_enumerate_rl(n: int) -> list[FinAlg]:
    """Oracle for n <= 4: product tables filtered by validate alone.

    Only cells forced by the axioms themselves are prefilled — the
    unit row/column at every size and, at size 4, the bottom rows
    (x*bottom = bottom = bottom*x follows from residuation) — so no
    valid table is skipped.  Deduplication is pairwise isomorphism
    search, independent of the canonical-key path."""
    if n > 4:
        raise ValueError("naive generator is capped at size 4")
    found: list[FinAlg] = []
    for join, meet in naive_enumerate_lattices(n):
        for unit in range(n):
            if n > 1 and unit == 0:
                continue  # x = x*1 = bottom collapses the algebra
            fixed = [[None] * n for _ in range(n)]
            for x in range(n):
                fixed[unit][x] = x
                fixed[x][unit] = x
            free = [(a, b) for a in range(n) for b in range(n) if fixed[a][b] is None]
            if n == 4:
                for a, b in list(free):
                    if a == 0 or b == 0:
                        fixed[a][b] = 0
                free = [(a, b) for a, b in free if fixed[a][b] is None]
            for choice in iproduct(range(n), repeat=len(free)):
                prod = [row[:] for row in fixed]
                for (a, b), v in zip(free, choice):
                    prod[a][b] = v
                try:
                    alg = complete_divisions(n, unit, join, meet, prod)
                except InvalidAlgebra:
                    continue
                if not is_valid(alg):
                    continue
                if all(is_isomorphic(alg, other) is None for other in found):
                    found.append(alg)
    return found


# ---------------------------------------------------------------------------
# predicates over algebras


def _satisfies_builtin(name: str) -> Callable[[FinAlg], bool]:
    stmts = terms.builtin(name)

    def check(alg: FinAlg) -> bool:
        return bool(terms.satisfies_all(alg, stmts))

    return check


_PROPERTY_TESTS: dict[str, Callable[[FinAlg], bool]] = {
    "commutative": _satisfies_builtin("commutative"),
    "integral": lambda alg: alg.is_integral(),
    "chain": lambda alg: alg.is_chain(),
    "bounded": lambda alg: alg.zero is not None,
    "divisible": _satisfies_builtin("divisible"),
    "cancellative": _satisfies_builtin("cancellative"),
    "idempotent": _satisfies_builtin("idempotent"),
    "prelinear": _satisfies_builtin("prelinear"),
    "representable": _satisfies_builtin("representable"),
    "one_distributive": _satisfies_builtin("one-distributive"),
    "wajsberg": _satisfies_builtin("wajsberg"),
    "si": is_subdirectly_irreducible,
    "simple": is_simple,
    "normal": properties.is_normal,
    "well_connected": properties.is_well_connected,
    "weakly_well_connected": properties.is_weakly_well_connected,
}

_ALIASES = {
    "wc": "well_connected",
    "wwc": "weakly_well_connected",
    "subdirectly_irreducible": "si",
}


def property_names() -> list[str]:
    return sorted(_PROPERTY_TESTS) + sorted(_ALIASES)


def parse_predicate(expr: str) -> Callable[[FinAlg], bool]:
    """Compile an expression over named properties with & | ! ( )."""
    tokens = []
    i = 0
    while i < len(expr):
        ch = expr[i]
        if ch.isspace():
            i += 1
        elif ch in "&|!()":
            tokens.append(ch)
            i += 1
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(expr) and (expr[j].isalnum() or expr[j] == "_"):
                j += 1
            tokens.append(expr[i:j])
            i = j
        else:
            raise ValueError(f"bad character {ch!r} in predicate")
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        t = peek()
        pos += 1
        return t

    def atom():
        t = take()
        if t == "(":
            f = disj()
            if take() != ")":
                raise ValueError("expected )")
            return f
        if t == "!":
            f = atom()
            return lambda alg: not f(alg)
        if t is None or t in "&|)":
            raise ValueError("expected property name")
        name = _ALIASES.get(t, t)
        if name not in _PROPERTY_TESTS:
            raise ValueError(f"unknown property {t!r} (know {', '.join(property_names())})")
        return _PROPERTY_TESTS[name]

    def conj():
        f = atom()
        while peek() == "&":
            take()
            g = atom()
            f = (lambda f1, g1: lambda alg: f1(alg) and g1(alg))(f, g)
        return f

    def disj():
        f = conj()
        while peek() == "|":
            take()
            g = conj()
            f = (lambda f1, g1: lambda alg: f1(alg) or g1(alg))(f, g)
        return f

    result = disj()
    if pos != len(tokens):
        raise ValueError(f"trailing tokens {tokens[pos:]!r}")
    return result


def _compile_predicate(pred) -> Callable[[FinAlg], bool]:
    if pred is None:
        return lambda alg: True
    if isinstance(pred, str):
        return parse_predicate(pred)

    def check(alg: FinAlg) -> bool:
        return bool(terms.satisfies(alg, pred))

    return check


def find_example(c: SearchConstraints, cap: int = SIZE_CAP, jobs: int = 1) -> Optional[FinAlg]:
    """Smallest witness of the predicate under the constraint flags;
    ties broken by canonical form.  None when nothing exists up to
    c.size (which acts as the size cap)."""
    test = _compile_predicate(c.predicate)
    for size in range(1, c.size + 1):
        per_size = SearchConstraints(
            size=size,
            commutative=c.commutative,
            integral=c.integral,
            chain=c.chain,
        )
        matches = [alg for alg in enumerate_rl(per_size, cap=max(cap, size), jobs=jobs) if test(alg)]
        if matches:
            return min(matches, key=canonical_key)
    return None
