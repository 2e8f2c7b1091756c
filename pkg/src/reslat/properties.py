"""Per-algebra decision procedures: equational properties, normality,
well-connectedness variants, iterated-conjugate (Gamma) machinery, B^n
satisfaction, (G_{n,k}) and the quasi-equation (G)."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Optional

from . import terms
from .congruence import (congruence_filters, conjugate,
                         is_subdirectly_irreducible, quotient)
from .finalg import FinAlg

GAMMA_CAP = 3  # default depth for Gamma sweeps; |Gamma^n| <= (2|A|)^n before dedup


def _ge1(alg: FinAlg, a: int) -> bool:
    return alg.le(alg.unit, a)


# ----------------------------------------------------------------------
# normality and well-connectedness


def _normal_witness(alg: FinAlg) -> Optional[tuple[int, int]]:
    """A pair (a, b) violating (a^1)^n b <= ba or b (a^1)^n <= ab at the
    stabilized power of a^1 := a /\\ 1, or None when normal.

    Powers of a /\\ 1 decrease, so they stabilize within |A| steps, and the
    stabilized power is the weakest instance of the condition.
    """
    n = alg.size
    for a in range(n):
        p = alg.meet[a][alg.unit]
        seen = {p}
        while True:
            q = alg.prod[p][alg.meet[a][alg.unit]]
            if q in seen:
                break
            seen.add(q)
            p = q
        for b in range(n):
            if not alg.le(alg.prod[p][b], alg.prod[b][a]):
                return (a, b)
            if not alg.le(alg.prod[b][p], alg.prod[a][b]):
                return (a, b)
    return None


def is_normal(alg: FinAlg) -> bool:
    return _normal_witness(alg) is None


def _wc_witness(alg: FinAlg) -> Optional[tuple[int, int]]:
    for a in range(alg.size):
        for b in range(alg.size):
            if _ge1(alg, alg.join[a][b]) and not (_ge1(alg, a) or _ge1(alg, b)):
                return (a, b)
    return None


def is_well_connected(alg: FinAlg) -> bool:
    """1 is join prime: a \\/ b >= 1 implies a >= 1 or b >= 1."""
    return _wc_witness(alg) is None


def _wwc_witness(alg: FinAlg) -> Optional[tuple[int, int]]:
    one = alg.unit
    # form (3): (a /\ 1) \/ (b /\ 1) = 1  implies  a >= 1 or b >= 1
    wit = None
    for a in range(alg.size):
        for b in range(alg.size):
            if alg.join[alg.meet[a][one]][alg.meet[b][one]] == one \
                    and not (_ge1(alg, a) or _ge1(alg, b)):
                wit = (a, b)
                break
        if wit:
            break
    # form (2): 1 is join irreducible: a \/ b = 1 implies a = 1 or b = 1
    irr = all(alg.join[a][b] != one or a == one or b == one
              for a in range(alg.size) for b in range(alg.size))
    assert irr == (wit is None), "forms (2) and (3) of weak well-connectedness disagree"
    return wit


def is_weakly_well_connected(alg: FinAlg) -> bool:
    return _wwc_witness(alg) is None


# ----------------------------------------------------------------------
# Gamma machinery


@dataclass(frozen=True)
class GammaSet:
    n: int
    tables: frozenset[tuple[int, ...]]

    def __len__(self) -> int:
        return len(self.tables)

    def __iter__(self):
        return iter(sorted(self.tables))


def gamma_set(alg: FinAlg, n: int) -> GammaSet:
    """Iterated conjugates of length n as deduplicated value tables.

    Gamma^0 = {x -> x /\\ 1}; Gamma^(n+1) = {gamma_b . g : g in Gamma^n,
    b in A, gamma in {l, r}}.
    """
    if n < 0:
        raise ValueError("gamma_set needs n >= 0")
    size = alg.size
    tables = {tuple(alg.meet[x][alg.unit] for x in range(size))}
    if n:
        conj = [conjugate(alg, k, b) for k in ("l", "r") for b in range(size)]
        for _ in range(n):
            tables = {tuple(c[f[x]] for x in range(size))
                      for f in tables for c in conj}
    return GammaSet(n, frozenset(tables))


def satisfies_Bn(alg: FinAlg, a: int, b: int, n: int,
                 gamma: Optional[GammaSet] = None) -> bool:
    """gamma1(a) \\/ gamma2(b) = 1 for every pair from Gamma^n."""
    g = gamma if gamma is not None and gamma.n == n else gamma_set(alg, n)
    one = alg.unit
    return all(alg.join[g1[a]][g2[b]] == one
               for g1 in g.tables for g2 in g.tables)


def is_gamma_connected(alg: FinAlg, n: int) -> bool:
    """B^n(a,b) forces a >= 1 or b >= 1, for every pair."""
    g = gamma_set(alg, n)
    for a in range(alg.size):
        for b in range(alg.size):
            if satisfies_Bn(alg, a, b, n, g) and not (_ge1(alg, a) or _ge1(alg, b)):
                return False
    return True


def satisfies_Gnk(alg: FinAlg, n: int, k: int) -> bool:
    """(G_{n,k}): B^n(a,b) implies B^k(a,b), pairwise."""
    gn, gk = gamma_set(alg, n), gamma_set(alg, k)
    for a in range(alg.size):
        for b in range(alg.size):
            if satisfies_Bn(alg, a, b, n, gn) and not satisfies_Bn(alg, a, b, k, gk):
                return False
    return True


def satisfies_G_quasi(alg: FinAlg) -> bool:
    """The quasi-equation (G): x \\/ y = 1 => l_w(x) \\/ r_z(y) = 1."""
    return bool(terms.satisfies(alg, terms.builtin("G")[0]))


# ----------------------------------------------------------------------
# the property report


_EQUATIONAL_FLAGS = (
    ("integral", "integral"),
    ("commutative", "commutative"),
    ("divisible", "divisible"),
    ("cancellative", "cancellative"),
    ("idempotent", "idempotent"),
    ("prelinear", "prelinear"),
    ("one_distributive", "one-distributive"),
)


@dataclass(frozen=True)
class PropertyReport:
    integral: bool
    commutative: bool
    divisible: bool
    cancellative: bool
    idempotent: bool
    prelinear: bool
    representable: bool
    one_distributive: bool
    normal: bool
    well_connected: bool
    weakly_well_connected: bool
    witnesses: dict = field(default_factory=dict, compare=False)

    FLAGS = ("integral", "commutative", "divisible", "cancellative",
             "idempotent", "prelinear", "representable", "one_distributive",
             "normal", "well_connected", "weakly_well_connected")

    def as_dict(self) -> dict:
        return {"flags": {f: getattr(self, f) for f in self.FLAGS},
                "witnesses": dict(self.witnesses)}


def _representable_semantic(alg: FinAlg) -> bool:
    """Every subdirectly irreducible quotient is a chain."""
    for f in congruence_filters(alg):
        q = quotient(alg, f)
        if is_subdirectly_irreducible(q) and not q.is_chain():
            return False
    return True


def basic_properties(alg: FinAlg) -> PropertyReport:
    flags: dict = {}
    wits: dict = {}
    for flag, bname in _EQUATIONAL_FLAGS:
        verdict = terms.satisfies_all(alg, terms.builtin(bname))
        flags[flag] = verdict.holds
        if verdict.witness is not None:
            wits[flag] = verdict.witness

    eq = terms.satisfies_all(alg, terms.builtin("representable"))
    semantic = _representable_semantic(alg)
    if eq.holds != semantic:
        raise AssertionError(
            f"representability routes disagree on {alg!r}: "
            f"equation={eq.holds}, SI-quotients-are-chains={semantic}")
    flags["representable"] = eq.holds
    if eq.witness is not None:
        wits["representable"] = eq.witness

    nw = _normal_witness(alg)
    flags["normal"] = nw is None
    if nw is not None:
        wits["normal"] = {"a": nw[0], "b": nw[1]}
    ww = _wc_witness(alg)
    flags["well_connected"] = ww is None
    if ww is not None:
        wits["well_connected"] = {"a": ww[0], "b": ww[1]}
    wwc = _wwc_witness(alg)
    flags["weakly_well_connected"] = wwc is None
    if wwc is not None:
        wits["weakly_well_connected"] = {"a": wwc[0], "b": wwc[1]}
    return PropertyReport(witnesses=wits, **flags)
