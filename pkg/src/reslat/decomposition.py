"""Ordinal-sum decomposition of finite integral chains.

A cut position splits the nonunit elements of a chain into a lower and
an upper part; the cut is valid when every operation between the parts
matches the cross tables of an ordinal sum (lower absorbs products;
divisions degenerate to the unit or to the lower argument) and each
part is closed.  Cutting at every valid position at once yields the
sum-irreducible components; the decomposition is unique because
validity of a position does not depend on the other cuts.

Rank and divisibility index apply to bounded Wajsberg chains only:
rank n means the quotient by the radical is the (n+1)-element
Lukasiewicz chain, and the divisibility index is the largest k whose
Lukasiewicz chain embeds as a subalgebra (in the signature with 0).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import terms
from .builders import lukasiewicz, ordinal_sum
from .classops import subalgebra, subalgebras
from .congruence import quotient, radical
from .finalg import FinAlg, InvalidAlgebra, assert_valid, drop_zero, is_isomorphic, validate

__all__ = [
    "valid_cuts",
    "ChainDecomposition",
    "sum_decompose",
    "index",
    "is_wajsberg",
    "rank",
    "divisibility_index",
    "chains_equivalent",
]


def _require_integral_chain(alg: FinAlg) -> None:
    bad = validate(alg)
    if bad:
        raise InvalidAlgebra(f"input fails validation: {bad[0].message}")
    if not alg.is_chain():
        raise InvalidAlgebra("input is not totally ordered")
    if not alg.is_integral():
        raise InvalidAlgebra("input is not integral")


def _ascending_nonunits(alg: FinAlg) -> list[int]:
    order = sorted(range(alg.size), key=lambda x: len(alg.down_sets[x]))
    assert order[-1] == alg.unit
    return order[:-1]


def valid_cuts(alg: FinAlg) -> list[int]:
    """Positions j (1 <= j < size-1, over the ascending nonunit
    elements) where the chain splits as lower-part (+) upper-part."""
    _require_integral_chain(alg)
    nonunits = _ascending_nonunits(alg)
    one = alg.unit
    cuts = []
    for j in range(1, len(nonunits)):
        lower = nonunits[:j]
        upper = nonunits[j:]
        ok = True
        for x in lower:
            for y in upper:
                if not (
                    alg.prod[x][y] == x
                    and alg.prod[y][x] == x
                    and alg.ldiv[x][y] == one
                    and alg.ldiv[y][x] == x
                    and alg.rdiv[x][y] == x
                    and alg.rdiv[y][x] == one
                ):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            for part in (lower, upper):
                allowed = set(part) | {one}
                for t in (alg.join, alg.meet, alg.prod, alg.ldiv, alg.rdiv):
                    if any(t[a][b] not in allowed for a in part for b in part):
                        ok = False
                        break
                if not ok:
                    break
        if ok:
            cuts.append(j)
    return cuts


@dataclass(frozen=True)
class ChainDecomposition:
    """Result of cutting a chain at every valid position.

    cuts index into the ascending nonunit list; components run
    bottom-to-top, the first keeping the zero when the input has one.
    """

    algebra: FinAlg
    cuts: tuple[int, ...]
    components: tuple[FinAlg, ...]

    @property
    def index(self) -> int:
        return len(self.components)


def _extract_component(alg: FinAlg, segment: list[int], keep_zero: bool) -> FinAlg:
    src = alg if keep_zero else drop_zero(alg)
    comp = subalgebra(src, segment + [alg.unit])
    return assert_valid(comp)


def sum_decompose(alg: FinAlg) -> ChainDecomposition:
    """Cut at every valid position; the round-trip back through
    ordinal_sum is asserted, as is sum-irreducibility of each part."""
    cuts = tuple(valid_cuts(alg))
    nonunits = _ascending_nonunits(alg)
    if not nonunits:
        # the trivial algebra is the empty ordinal sum
        return ChainDecomposition(algebra=alg, cuts=(), components=())
    bounds = [0, *cuts, len(nonunits)]
    components = []
    for i in range(len(bounds) - 1):
        segment = nonunits[bounds[i] : bounds[i + 1]]
        components.append(
            _extract_component(alg, segment, keep_zero=(i == 0 and alg.zero is not None))
        )
    dec = ChainDecomposition(algebra=alg, cuts=cuts, components=tuple(components))
    if len(components) > 1:
        rebuilt = ordinal_sum(dec.components)
        assert is_isomorphic(rebuilt, alg) is not None, "round-trip failed"
    for comp in dec.components:
        assert valid_cuts(comp) == [], "component admits a further cut"
    return dec


def index(alg: FinAlg) -> int:
    return sum_decompose(alg).index


# ---------------------------------------------------------------------------
# rank / divisibility index of bounded Wajsberg chains


_WAJSBERG = tuple(terms.builtin("wajsberg"))


def is_wajsberg(alg: FinAlg) -> bool:
    return bool(terms.satisfies_all(alg, _WAJSBERG))


def _require_wajsberg_bounded_chain(alg: FinAlg) -> None:
    _require_integral_chain(alg)
    if alg.zero is None:
        raise InvalidAlgebra("rank needs a bounded chain (no zero present)")
    if not is_wajsberg(alg):
        raise InvalidAlgebra("input fails the Wajsberg equations")


def rank(alg: FinAlg) -> int:
    """n such that the quotient by the radical is the Lukasiewicz
    chain with n+1 elements (0 for the trivial algebra)."""
    _require_wajsberg_bounded_chain(alg)
    q = quotient(alg, radical(alg))
    n = q.size - 1
    if n == 0:
        return 0
    if is_isomorphic(q, lukasiewicz(n)) is None:
        raise InvalidAlgebra("quotient by the radical is not a Lukasiewicz chain")
    return n


def divisibility_index(alg: FinAlg) -> int:
    """Largest k such that the Lukasiewicz chain with k+1 elements is
    a subalgebra (searched in the signature with 0)."""
    _require_wajsberg_bounded_chain(alg)
    best = 0
    for sub in subalgebras(alg):
        k = sub.size - 1
        if k > best and is_isomorphic(sub, lukasiewicz(k)) is not None:
            best = k
    return best


def chains_equivalent(a: FinAlg, b: FinAlg) -> bool:
    """Do two finite integral chains generate the same variety?

    Componentwise test: equal index and pairwise isomorphic
    components.  With finite components, subalgebra/image classes
    coincide with isomorphism classes, so this matches var_equal.
    """
    if (a.zero is None) != (b.zero is None):
        raise InvalidAlgebra("signature mismatch: one chain has a zero")
    da = sum_decompose(a)
    db = sum_decompose(b)
    if da.index != db.index:
        return False
    return all(
        is_isomorphic(x, y) is not None
        for x, y in zip(da.components, db.components)
    )
