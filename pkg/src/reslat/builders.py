"""Constructors: named chains, ordinal sums, generalized rotations.

All builders return validated algebras with ``zero`` set to the lattice
bottom, except that ``ordinal_sum`` keeps a zero only when its first summand
has one (interior bottoms of later summands stop being bounds), and
``rotate`` ignores any zero declared on its base — the construction consumes
only the base's lattice, product and residuals, and the rotation's zero is
the new bottom 1'.  Strip constants explicitly with ``finalg.drop_zero`` when
zero-free reducts are wanted.
"""
from __future__ import annotations

from typing import Optional, Sequence

from .finalg import (FinAlg, InvalidAlgebra, assert_valid, complete_divisions,
                     make_algebra, validate)


def trivial(name: str = "triv") -> FinAlg:
    t = [[0]]
    return make_algebra(1, 0, t, t, t, t, t, zero=0, name=name)


def lukasiewicz(n: int, name: Optional[str] = None) -> FinAlg:
    """The (n+1)-element chain 0 < 1 < ... < n with a*b = max(a+b-n, 0).

    Residuals are the truncated differences a\\b = min(n-a+b, n).
    """
    if n < 1:
        raise ValueError("lukasiewicz needs n >= 1")
    m = n + 1
    join = [[max(a, b) for b in range(m)] for a in range(m)]
    meet = [[min(a, b) for b in range(m)] for a in range(m)]
    prod = [[max(a + b - n, 0) for b in range(m)] for a in range(m)]
    ldiv = [[min(n - a + b, n) for b in range(m)] for a in range(m)]
    rdiv = [[min(n - b + a, n) for b in range(m)] for a in range(m)]
    alg = make_algebra(m, n, join, meet, prod, ldiv, rdiv, zero=0,
                       name=name or f"L{n}")
    return assert_valid(alg)


def godel(n: int, name: Optional[str] = None) -> FinAlg:
    """The (n+1)-element idempotent chain: product = meet."""
    if n < 0:
        raise ValueError("godel needs n >= 0")
    if n == 0:
        return trivial(name or "G0")
    m = n + 1
    join = [[max(a, b) for b in range(m)] for a in range(m)]
    meet = [[min(a, b) for b in range(m)] for a in range(m)]
    alg = complete_divisions(m, n, join, meet, meet, zero=0,
                             name=name or f"G{n}")
    return assert_valid(alg)


# ----------------------------------------------------------------------
# ordinal sums


def _ascending(alg: FinAlg) -> list[int]:
    """Elements sorted bottom-to-top (ties broken by label, for non-chains)."""
    rank = [sum(alg.le(y, x) for y in range(alg.size)) for x in range(alg.size)]
    return sorted(range(alg.size), key=lambda x: (rank[x], x))


def ordinal_sum(components: Sequence[FinAlg], name: Optional[str] = None) -> FinAlg:
    """Stack integral chains one over the other, sharing a single unit.

    The carrier is relabelled contiguously bottom-to-top with the unit last.
    For x in a lower summand and y in a higher one (both non-units):
    x*y = y*x = x, x\\y = 1, y\\x = x, x/y = x, y/x = 1.  The result keeps a
    zero constant only when the first summand has one that lands on the
    global bottom.
    """
    if not components:
        raise InvalidAlgebra("ordinal_sum needs at least one component")
    for c in components:
        bad = validate(c)
        if bad:
            raise InvalidAlgebra(f"component {c!r} is invalid: {bad[0]}")
        if not c.is_integral():
            raise InvalidAlgebra(f"component {c!r} is not integral")
        if not c.is_chain():
            raise InvalidAlgebra(f"component {c!r} is not totally ordered")

    sizes = [c.size for c in components]
    total = 1 + sum(s - 1 for s in sizes)
    unit = total - 1
    # glob[i][local] = global label; non-units stack, all units merge
    glob: list[dict[int, int]] = []
    offset = 0
    for c in components:
        asc = _ascending(c)           # chain: strictly ascending, unit last
        m = {e: offset + p for p, e in enumerate(asc[:-1])}
        m[asc[-1]] = unit
        glob.append(m)
        offset += c.size - 1

    join = [[max(a, b) for b in range(total)] for a in range(total)]
    meet = [[min(a, b) for b in range(total)] for a in range(total)]
    prod = [[0] * total for _ in range(total)]
    ldiv = [[0] * total for _ in range(total)]
    rdiv = [[0] * total for _ in range(total)]

    # within one summand (covers every pair involving the shared unit)
    for c, m in zip(components, glob):
        for x in range(c.size):
            for y in range(c.size):
                gx, gy = m[x], m[y]
                prod[gx][gy] = m[c.prod[x][y]]
                ldiv[gx][gy] = m[c.ldiv[x][y]]
                rdiv[gx][gy] = m[c.rdiv[x][y]]
    # across summands, non-units only: lower element absorbs
    bounds = []
    offset = 0
    for s in sizes:
        bounds.append(range(offset, offset + s - 1))
        offset += s - 1
    for i in range(len(components)):
        for j in range(i + 1, len(components)):
            for x in bounds[i]:
                for y in bounds[j]:
                    prod[x][y] = prod[y][x] = x
                    ldiv[x][y] = unit
                    ldiv[y][x] = x
                    rdiv[x][y] = x
                    rdiv[y][x] = unit

    zero = None
    first = components[0]
    if first.zero is not None and glob[0][first.zero] == 0:
        zero = 0
    alg = make_algebra(total, unit, join, meet, prod, ldiv, rdiv, zero,
                       name or "+".join(c.name or "?" for c in components))
    return assert_valid(alg)


# ----------------------------------------------------------------------
# generalized rotations

DELTAS = ("id", "one")


def rotate_with_embedding(base: FinAlg, n: int, delta: str,
                          name: Optional[str] = None) -> tuple[FinAlg, tuple[int, ...]]:
    """Generalized rotation, plus the map sending base labels into the result.

    Carrier: the dualized image {(delta(a))' : a in base} at the bottom, a
    ladder of n-2 new elements, then the base on top.  The unit is the base's
    unit, the zero is 1'.  Products follow the case tables
    a*b' = (a\\b)', coradical pairs and coradical-ladder pairs go to 0,
    a*l_i = l_i, and the ladder multiplies as a Lukasiewicz chain with
    l_0 = 1' and l_{n-1} = 1; residuals come from residual completion.
    """
    if n < 2:
        raise InvalidAlgebra("rotation needs n >= 2")
    if delta not in DELTAS:
        raise InvalidAlgebra(f"delta must be one of {DELTAS}")
    bad = validate(base)
    if bad:
        raise InvalidAlgebra(f"rotation base is invalid: {bad[0]}")
    if not base.is_integral():
        raise InvalidAlgebra("rotation base must be integral")
    if any(base.prod[a][b] != base.prod[b][a]
           for a in range(base.size) for b in range(base.size)):
        raise InvalidAlgebra("rotation base must be commutative")

    m = base.size
    asc = _ascending(base)
    d = (lambda a: a) if delta == "id" else (lambda a: base.unit)
    image = sorted({d(a) for a in range(m)}, key=asc.index)
    K = len(image)
    size = K + (n - 2) + m
    # labels: 0..K-1 coradical ascending (so (image[K-1-j])' gets label j,
    # putting 1' at 0), then ladder l_1..l_{n-2}, then base bottom-to-top
    prime = {b: K - 1 - j for j, b in enumerate(image)}
    ladder = {i: K + i - 1 for i in range(1, n - 1)}   # l_i -> label
    emb = {e: K + n - 2 + p for p, e in enumerate(asc)}
    unit = emb[base.unit]

    def le(x: int, y: int) -> bool:
        xc, yc = x < K, y < K
        xl, yl = K <= x < K + n - 2, K <= y < K + n - 2
        if xc:
            return True if not yc else base.le(image[K - 1 - y], image[K - 1 - x])
        if xl:
            return (yl and x <= y) or (not yc and not yl)
        return (not yc and not yl) and base.le(asc[x - K - n + 2], asc[y - K - n + 2])

    def bound(x: int, y: int, upper: bool) -> int:
        if upper:
            cands = [z for z in range(size) if le(x, z) and le(y, z)]
            for z in cands:
                if all(le(z, w) for w in cands):
                    return z
        else:
            cands = [z for z in range(size) if le(z, x) and le(z, y)]
            for z in cands:
                if all(le(w, z) for w in cands):
                    return z
        raise InvalidAlgebra("rotation order is not a lattice")

    join = [[bound(x, y, True) for y in range(size)] for x in range(size)]
    meet = [[bound(x, y, False) for y in range(size)] for x in range(size)]

    prod = [[0] * size for _ in range(size)]
    # base x base
    for a in range(m):
        for b in range(m):
            prod[emb[a]][emb[b]] = emb[base.prod[a][b]]
    # base x coradical: a * b' = (a \ b)'  (needs a\b in the delta image)
    for a in range(m):
        for b in image:
            v = base.ldiv[a][b]
            if v not in prime:
                raise InvalidAlgebra("rotation: residual leaves the delta image")
            prod[emb[a]][prime[b]] = prod[prime[b]][emb[a]] = prime[v]
    # coradical x coradical -> 0; coradical x ladder -> 0 (label 0 is 1')
    for x in range(K):
        for y in range(K):
            prod[x][y] = 0
        for i in range(1, n - 1):
            prod[x][ladder[i]] = prod[ladder[i]][x] = 0
    # base x ladder
    for a in range(m):
        for i in range(1, n - 1):
            prod[emb[a]][ladder[i]] = prod[ladder[i]][emb[a]] = ladder[i]
    # ladder x ladder: Lukasiewicz with l_0 = 1' (label 0) and l_{n-1} = 1
    for i in range(1, n - 1):
        for j in range(1, n - 1):
            k = max(i + j - (n - 1), 0)
            prod[ladder[i]][ladder[j]] = 0 if k == 0 else ladder[k]

    alg = complete_divisions(size, unit, join, meet, prod, zero=0,
                             name=name or f"rot[{delta},{n}]({base.name or '?'})")
    alg = assert_valid(alg)
    return alg, tuple(emb[a] for a in range(m))


def rotate(base: FinAlg, n: int, delta: str, name: Optional[str] = None) -> FinAlg:
    return rotate_with_embedding(base, n, delta, name)[0]
