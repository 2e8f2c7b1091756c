"""Finite residuated lattices as operation tables.

An algebra lives on carrier {0, ..., size-1} with total operation tables for
join, meet, product and the two residuals, a designated unit, and optionally a
designated zero (bottom constant).  Conventions used throughout the package:

* ``a <= b``  iff  ``join[a][b] == b`` (order is derived from join; the meet
  table is validated against the lattice axioms rather than trusted).
* ``ldiv[a][b]`` is the left residual ``a \\ b``, the largest y with
  ``a*y <= b``.
* ``rdiv[a][b]`` is the right residual ``a / b``, the largest z with
  ``z*b <= a``.
* Residuation law: ``a*b <= c``  iff  ``b <= a\\c``  iff  ``a <= c/b``.

Tables are tuples of tuples so algebras are hashable and safe to share.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations, product
from typing import Iterable, Optional, Sequence

Table = tuple[tuple[int, ...], ...]

OP_NAMES = ("join", "meet", "prod", "ldiv", "rdiv")


def freeze_table(rows: Sequence[Sequence[int]]) -> Table:
    return tuple(tuple(int(v) for v in row) for row in rows)


class InvalidAlgebra(ValueError):
    """Raised when input data cannot even be interpreted as an algebra."""


@dataclass(frozen=True)
class Violation:
    """One failed axiom, with the witness tuple that breaks it."""

    axiom: str
    witness: tuple
    message: str

    def __str__(self) -> str:
        return f"{self.axiom} fails at {self.witness}: {self.message}"


@dataclass(frozen=True)
class FinAlg:
    size: int
    unit: int
    join: Table
    meet: Table
    prod: Table
    ldiv: Table
    rdiv: Table
    zero: Optional[int] = None
    name: Optional[str] = None

    # -- order helpers -------------------------------------------------

    def le(self, a: int, b: int) -> bool:
        return self.join[a][b] == b

    def lt(self, a: int, b: int) -> bool:
        return a != b and self.join[a][b] == b

    @cached_property
    def bottom(self) -> int:
        b = 0
        for x in range(self.size):
            b = self.meet[b][x]
        return b

    @cached_property
    def top(self) -> int:
        t = 0
        for x in range(self.size):
            t = self.join[t][x]
        return t

    @cached_property
    def down_sets(self) -> tuple[frozenset[int], ...]:
        """down_sets[x] = set of elements <= x."""
        return tuple(
            frozenset(y for y in range(self.size) if self.le(y, x))
            for x in range(self.size)
        )

    def elements(self) -> range:
        return range(self.size)

    def is_chain(self) -> bool:
        return all(
            self.le(a, b) or self.le(b, a)
            for a in range(self.size)
            for b in range(a + 1, self.size)
        )

    def is_integral(self) -> bool:
        return self.unit == self.top

    def has_zero(self) -> bool:
        return self.zero is not None

    def rename(self, name: Optional[str]) -> "FinAlg":
        return FinAlg(self.size, self.unit, self.join, self.meet, self.prod,
                      self.ldiv, self.rdiv, self.zero, name)

    def __repr__(self) -> str:
        tag = self.name or "FinAlg"
        z = "" if self.zero is None else f", zero={self.zero}"
        return f"<{tag}: size={self.size}, unit={self.unit}{z}>"


def make_algebra(size, unit, join, meet, prod, ldiv, rdiv, zero=None, name=None):
    """Build a FinAlg from any nested-sequence tables, checking shape only."""
    alg = FinAlg(int(size), int(unit), freeze_table(join), freeze_table(meet),
                 freeze_table(prod), freeze_table(ldiv), freeze_table(rdiv),
                 None if zero is None else int(zero), name)
    _check_shape(alg)
    return alg


def _check_shape(alg: FinAlg) -> None:
    n = alg.size
    if n < 1:
        raise InvalidAlgebra("size must be at least 1")
    if not 0 <= alg.unit < n:
        raise InvalidAlgebra(f"unit {alg.unit} out of range for size {n}")
    if alg.zero is not None and not 0 <= alg.zero < n:
        raise InvalidAlgebra(f"zero {alg.zero} out of range for size {n}")
    for op in OP_NAMES:
        t = getattr(alg, op)
        if len(t) != n or any(len(row) != n for row in t):
            raise InvalidAlgebra(f"{op} table is not {n}x{n}")
        if any(not 0 <= v < n for row in t for v in row):
            raise InvalidAlgebra(f"{op} table has entries outside 0..{n - 1}")


# ----------------------------------------------------------------------
# validation


def validate(alg: FinAlg) -> list[Violation]:
    """Check every axiom, returning the first witness found per axiom.

    The returned list is empty exactly when the tables describe a residuated
    lattice (with bottom constant, if a zero is declared).  Axioms are checked
    in a fixed order so the first entry names the first violated axiom.
    """
    _check_shape(alg)
    n, out = alg.size, []
    join, meet, prod = alg.join, alg.meet, alg.prod
    ldiv, rdiv, e = alg.ldiv, alg.rdiv, alg.unit

    def le(a, b):
        return join[a][b] == b

    for op, t in (("join", join), ("meet", meet)):
        w = next(((a,) for a in range(n) if t[a][a] != a), None)
        if w:
            out.append(Violation(f"{op}-idempotent", w, f"{op}(a,a) != a"))
        w = next(((a, b) for a in range(n) for b in range(n)
                  if t[a][b] != t[b][a]), None)
        if w:
            out.append(Violation(f"{op}-commutative", w, f"{op}(a,b) != {op}(b,a)"))
        w = next(((a, b, c) for a in range(n) for b in range(n) for c in range(n)
                  if t[t[a][b]][c] != t[a][t[b][c]]), None)
        if w:
            out.append(Violation(f"{op}-associative", w,
                                 f"{op}({op}(a,b),c) != {op}(a,{op}(b,c))"))
    w = next(((a, b) for a in range(n) for b in range(n)
              if meet[a][join[a][b]] != a or join[a][meet[a][b]] != a), None)
    if w:
        out.append(Violation("absorption", w,
                             "meet(a, join(a,b)) or join(a, meet(a,b)) differs from a"))
    if out:
        return out  # order is unreliable below if the lattice part is broken

    if alg.zero is not None:
        z = alg.zero
        w = next(((z, a) for a in range(n) if not le(z, a)), None)
        if w:
            out.append(Violation("zero-bottom", w, "declared zero is not the least element"))

    w = next(((e, a) for a in range(n) if prod[e][a] != a or prod[a][e] != a), None)
    if w:
        out.append(Violation("unit", w, "prod(1,a) or prod(a,1) differs from a"))
    w = next(((a, b, c) for a in range(n) for b in range(n) for c in range(n)
              if prod[prod[a][b]][c] != prod[a][prod[b][c]]), None)
    if w:
        out.append(Violation("prod-associative", w,
                             "prod(prod(a,b),c) != prod(a,prod(b,c))"))

    # residuation: a*b <= c  iff  b <= a\c  iff  a <= c/b
    for a in range(n):
        for b in range(n):
            for c in range(n):
                lhs = le(prod[a][b], c)
                if lhs != le(b, ldiv[a][c]):
                    out.append(Violation("residuation-ldiv", (a, b, c),
                                         "a*b <= c iff b <= a\\c fails"))
                    break
                if lhs != le(a, rdiv[c][b]):
                    out.append(Violation("residuation-rdiv", (a, b, c),
                                         "a*b <= c iff a <= c/b fails"))
                    break
            else:
                continue
            break
        else:
            continue
        break
    return out


def is_valid(alg: FinAlg) -> bool:
    return not validate(alg)


def assert_valid(alg: FinAlg) -> FinAlg:
    bad = validate(alg)
    if bad:
        raise InvalidAlgebra(f"{alg!r}: {bad[0]}")
    return alg


# ----------------------------------------------------------------------
# residual completion


def complete_divisions(size, unit, join, meet, prod, zero=None, name=None) -> FinAlg:
    """Fill in both residual tables from join/prod, or raise InvalidAlgebra.

    ``a\\b`` is the join of ``{y : a*y <= b}``; the candidate set always
    contains the bottom only if bottom is absorbing, so emptiness or a join
    that fails the defining inequality signals a non-residuated product.
    """
    join = freeze_table(join)
    meet = freeze_table(meet)
    prod = freeze_table(prod)
    n = size

    def le(a, b):
        return join[a][b] == b

    def residual(pick):
        table = []
        for a in range(n):
            row = []
            for b in range(n):
                best = None
                for y in range(n):
                    if le(pick(a, y), b):
                        best = y if best is None else join[best][y]
                if best is None or not le(pick(a, best), b):
                    raise InvalidAlgebra(
                        f"product is not residuated at ({a}, {b})")
                row.append(best)
            table.append(tuple(row))
        return tuple(table)

    ldiv = residual(lambda a, y: prod[a][y])
    # rdiv[a][b] = a/b = max{z : z*b <= a}
    rdiv_t = residual(lambda b, z: prod[z][b])  # indexed [b][a]; transpose sense
    rdiv = tuple(tuple(rdiv_t[b][a] for b in range(n)) for a in range(n))
    return make_algebra(n, unit, join, meet, prod, ldiv, rdiv, zero, name)


def complete(alg_like: FinAlg) -> FinAlg:
    """complete_divisions applied to an existing algebra (recompute residuals)."""
    return complete_divisions(alg_like.size, alg_like.unit, alg_like.join,
                              alg_like.meet, alg_like.prod, alg_like.zero,
                              alg_like.name)


# ----------------------------------------------------------------------
# signature tweaks and products


def drop_zero(alg: FinAlg) -> FinAlg:
    """Forget the zero constant (same tables, zero-free signature)."""
    if alg.zero is None:
        return alg
    return FinAlg(alg.size, alg.unit, alg.join, alg.meet, alg.prod,
                  alg.ldiv, alg.rdiv, None, alg.name)


def with_zero(alg: FinAlg) -> FinAlg:
    """Declare the lattice bottom as the zero constant."""
    return FinAlg(alg.size, alg.unit, alg.join, alg.meet, alg.prod,
                  alg.ldiv, alg.rdiv, alg.bottom, alg.name)


def positive_cone(alg: FinAlg) -> frozenset[int]:
    """Elements >= 1 (the least congruence-filter-in-waiting)."""
    return frozenset(a for a in range(alg.size) if alg.le(alg.unit, a))


def direct_product(a: FinAlg, b: FinAlg, name: Optional[str] = None) -> FinAlg:
    """Componentwise product; pairs are numbered (i, j) -> i*|B| + j."""
    if (a.zero is None) != (b.zero is None):
        raise InvalidAlgebra("direct_product needs matching signatures")
    nb = b.size

    def idx(i, j):
        return i * nb + j

    n = a.size * nb
    tables = {}
    for op in OP_NAMES:
        ta, tb = getattr(a, op), getattr(b, op)
        t = [[0] * n for _ in range(n)]
        for i in range(a.size):
            for j in range(nb):
                for k in range(a.size):
                    for l in range(nb):
                        t[idx(i, j)][idx(k, l)] = idx(ta[i][k], tb[j][l])
        tables[op] = t
    zero = None if a.zero is None else idx(a.zero, b.zero)
    return make_algebra(n, idx(a.unit, b.unit), tables["join"], tables["meet"],
                        tables["prod"], tables["ldiv"], tables["rdiv"], zero, name)


# ----------------------------------------------------------------------
# isomorphism and canonical forms


def _color_refine(alg: FinAlg) -> tuple[int, ...]:
    """Stable per-element invariants, refined until fixpoint.

    Colours are integer ranks computed from sorted signature multisets, so
    they are label-independent: isomorphic algebras refine identically.
    """
    n = alg.size
    init = []
    for x in range(n):
        below = sum(alg.le(y, x) for y in range(n))
        above = sum(alg.le(x, y) for y in range(n))
        init.append((x == alg.unit, x == alg.zero, below, above,
                     alg.prod[x][x] == x))
    ranking = {c: i for i, c in enumerate(sorted(set(init)))}
    colors = [ranking[c] for c in init]
    tables = [getattr(alg, op) for op in OP_NAMES]
    while True:
        sigs = []
        for x in range(n):
            sig = (colors[x], tuple(
                tuple(sorted((colors[y], colors[t[x][y]], colors[t[y][x]])
                             for y in range(n)))
                for t in tables))
            sigs.append(sig)
        ranking = {c: i for i, c in enumerate(sorted(set(sigs)))}
        fresh = [ranking[s] for s in sigs]
        if len(set(fresh)) == len(set(colors)):
            return tuple(fresh)
        colors = fresh


def _color_classes(colors: Sequence) -> dict:
    classes: dict = {}
    for x, c in enumerate(colors):
        classes.setdefault(c, []).append(x)
    return classes


def is_isomorphic(a: FinAlg, b: FinAlg) -> Optional[tuple[int, ...]]:
    """Return a table-preserving bijection (as perm[i] = image of i), or None.

    Raises InvalidAlgebra when the signatures differ (one has a zero constant,
    the other does not); compare reducts explicitly via drop_zero instead.
    """
    if (a.zero is None) != (b.zero is None):
        raise InvalidAlgebra("cannot compare algebras of different signatures")
    if a.size != b.size:
        return None
    ca, cb = _color_refine(a), _color_refine(b)
    if sorted(ca) != sorted(cb):
        return None
    cand = [[y for y in range(b.size) if cb[y] == ca[x]] for x in range(a.size)]
    order = sorted(range(a.size), key=lambda x: len(cand[x]))
    img: list[Optional[int]] = [None] * a.size
    used = [False] * b.size
    ta = [getattr(a, op) for op in OP_NAMES]
    tb = [getattr(b, op) for op in OP_NAMES]

    def consistent(x, y) -> bool:
        for fa, fb in zip(ta, tb):
            for u in range(a.size):
                v = img[u]
                if v is None and u != x:
                    continue
                v = y if u == x else v
                for (p, q, r, s) in ((x, u, y, v), (u, x, v, y)):
                    w = img[fa[p][q]]
                    if w is not None and w != fb[r][s]:
                        return False
        return True

    def extend(k: int) -> bool:
        if k == a.size:
            return True
        x = order[k]
        for y in cand[x]:
            if not used[y] and consistent(x, y):
                img[x] = y
                used[y] = True
                if extend(k + 1):
                    return True
                img[x] = None
                used[y] = False
        return False

    if not extend(0):
        return None
    perm = tuple(img)  # fully checked below, belt and braces
    for fa, fb in zip(ta, tb):
        for x in range(a.size):
            for y in range(a.size):
                if perm[fa[x][y]] != fb[perm[x]][perm[y]]:
                    return None
    if perm[a.unit] != b.unit or (a.zero is not None and perm[a.zero] != b.zero):
        return None
    return perm


def relabel(alg: FinAlg, perm: Sequence[int]) -> FinAlg:
    """Apply the bijection perm (perm[i] = new label of i) to all tables."""
    n = alg.size
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    tables = {}
    for op in OP_NAMES:
        t = getattr(alg, op)
        tables[op] = [[perm[t[inv[i]][inv[j]]] for j in range(n)] for i in range(n)]
    zero = None if alg.zero is None else perm[alg.zero]
    return make_algebra(n, perm[alg.unit], tables["join"], tables["meet"],
                        tables["prod"], tables["ldiv"], tables["rdiv"],
                        zero, alg.name)


def canonical_key(alg: FinAlg):
    """A label-independent key: equal keys iff isomorphic.

    Minimises the flattened table tuple over all colour-respecting
    relabellings.  Colour refinement keeps the candidate permutation count
    tiny for every algebra this package produces.
    """
    colors = _color_refine(alg)
    classes = _color_classes(colors)
    slots: list[list[int]] = [sorted(v) for _, v in sorted(classes.items())]
    total = 1
    for s in slots:
        f = 1
        for i in range(2, len(s) + 1):
            f *= i
        total *= f
        if total > 1_000_000:
            raise InvalidAlgebra("canonical_key: automorphism search too large")
    best = None
    for parts in product(*(permutations(s) for s in slots)):
        # class c's elements are relabelled into the block of positions
        # reserved for that class, in the order the permutation dictates
        perm = [0] * alg.size
        offset = 0
        for slot, part in zip(slots, parts):
            for k, src in enumerate(part):
                perm[src] = offset + k
            offset += len(slot)
        r = relabel(alg, perm)
        key = (r.size, r.unit, r.zero, r.join, r.meet, r.prod, r.ldiv, r.rdiv)
        if best is None or key < best:
            best = key
    return best


# ----------------------------------------------------------------------
# JSON


def to_dict(alg: FinAlg) -> dict:
    d = {
        "size": alg.size,
        "unit": alg.unit,
        "zero": alg.zero,
        "join": [list(r) for r in alg.join],
        "meet": [list(r) for r in alg.meet],
        "prod": [list(r) for r in alg.prod],
        "ldiv": [list(r) for r in alg.ldiv],
        "rdiv": [list(r) for r in alg.rdiv],
    }
    if alg.name is not None:
        d["name"] = alg.name
    return d


def from_dict(d: dict) -> FinAlg:
    try:
        size = d["size"]
        unit = d["unit"]
        join = d["join"]
        meet = d["meet"]
        prod = d["prod"]
    except (KeyError, TypeError) as exc:
        raise InvalidAlgebra(f"missing field: {exc}") from exc
    zero = d.get("zero")
    name = d.get("name")
    if "ldiv" in d and "rdiv" in d:
        return make_algebra(size, unit, join, meet, prod, d["ldiv"], d["rdiv"],
                            zero, name)
    return complete_divisions(size, unit, join, meet, prod, zero, name)


def dumps(alg: FinAlg) -> str:
    return json.dumps(to_dict(alg), indent=2, sort_keys=True) + "\n"


def loads(text: str) -> FinAlg:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidAlgebra(f"not valid JSON: {exc}") from exc
    if not isinstance(d, dict):
        raise InvalidAlgebra("top-level JSON value must be an object")
    return from_dict(d)


def save(alg: FinAlg, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(alg))


def load(path) -> FinAlg:
    with open(path) as fh:
        return loads(fh.read())
