"""Terms, equations and quasi-equations over the residuated-lattice signature.

Grammar (ASCII):

    statement  :=  simple | simple ('&' simple)* '=>' simple
    simple     :=  term ('=' | '<=' | '>=') term
    term       :=  join
    join       :=  meet ('\\/' meet)*
    meet       :=  div ('/\\' div)*
    div        :=  prodt (('\\' | '/' | '->') prodt)*      # left-assoc
    prodt      :=  atom ('*' atom)*
    atom       :=  '1' | '0' | variable | '(' term ')'

Binding from tightest to loosest: ``*``, then ``\\`` ``/`` ``->`` (equal,
left-associative), then ``/\\``, then ``\\/``.  ``x -> y`` is sugar for
``x \\ y``.  Variables match ``[a-zA-Z][a-zA-Z0-9]*``.

``a >= b`` parses to the inequality ``b <= a``; pretty-printing always emits
``<=``, and pretty followed by parse is the identity on that normal form.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Optional, Union


class ParseError(ValueError):
    pass


# ----------------------------------------------------------------------
# AST

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    symbol: str  # "1" or "0"


@dataclass(frozen=True)
class BinOp:
    op: str  # join | meet | prod | ldiv | rdiv
    left: "Term"
    right: "Term"


Term = Union[Var, Const, BinOp]


@dataclass(frozen=True)
class Equation:
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Inequality:
    """lhs <= rhs."""

    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class QuasiEquation:
    premises: tuple[Union[Equation, Inequality], ...]
    conclusion: Union[Equation, Inequality]


Statement = Union[Equation, Inequality, QuasiEquation]


# ----------------------------------------------------------------------
# lexer / parser

_TWO_CHAR = {"/\\": "MEET", "\\/": "JOIN", "->": "LDIV", "=>": "IMPL",
             "<=": "LE", ">=": "GE"}
_ONE_CHAR = {"*": "PROD", "\\": "LDIV", "/": "RDIV", "(": "LP", ")": "RP",
             "=": "EQ", "&": "AMP"}
_NAME = re.compile(r"[a-zA-Z][a-zA-Z0-9]*")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        two = text[i:i + 2]
        if two in _TWO_CHAR:
            toks.append((_TWO_CHAR[two], two, i))
            i += 2
            continue
        if ch in _ONE_CHAR:
            toks.append((_ONE_CHAR[ch], ch, i))
            i += 1
            continue
        if ch == "1" or ch == "0":
            toks.append(("CONST", ch, i))
            i += 1
            continue
        m = _NAME.match(text, i)
        if m:
            toks.append(("VAR", m.group(), i))
            i = m.end()
            continue
        raise ParseError(f"unexpected character {ch!r} at position {i}")
    toks.append(("END", "", n))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self) -> str:
        return self.toks[self.pos][0]

    def take(self, kind: Optional[str] = None) -> tuple[str, str, int]:
        tok = self.toks[self.pos]
        if kind is not None and tok[0] != kind:
            raise ParseError(
                f"expected {kind} at position {tok[2]}, found {tok[1]!r}")
        self.pos += 1
        return tok

    def atom(self) -> Term:
        kind, text, at = self.take()
        if kind == "CONST":
            return Const(text)
        if kind == "VAR":
            return Var(text)
        if kind == "LP":
            t = self.term()
            self.take("RP")
            return t
        raise ParseError(f"expected a term at position {at}, found {text!r}")

    def prodt(self) -> Term:
        t = self.atom()
        while self.peek() == "PROD":
            self.take()
            t = BinOp("prod", t, self.atom())
        return t

    def div(self) -> Term:
        t = self.prodt()
        while self.peek() in ("LDIV", "RDIV"):
            kind, _, _ = self.take()
            t = BinOp("ldiv" if kind == "LDIV" else "rdiv", t, self.prodt())
        return t

    def meet(self) -> Term:
        t = self.div()
        while self.peek() == "MEET":
            self.take()
            t = BinOp("meet", t, self.div())
        return t

    def term(self) -> Term:
        t = self.meet()
        while self.peek() == "JOIN":
            self.take()
            t = BinOp("join", t, self.meet())
        return t

    def simple(self) -> Union[Equation, Inequality]:
        lhs = self.term()
        kind, text, at = self.take()
        if kind == "EQ":
            return Equation(lhs, self.term())
        if kind == "LE":
            return Inequality(lhs, self.term())
        if kind == "GE":
            return Inequality(self.term(), lhs)
        raise ParseError(f"expected =, <= or >= at position {at}, found {text!r}")

    def statement(self) -> Statement:
        first = self.simple()
        if self.peek() not in ("AMP", "IMPL"):
            return first
        premises = [first]
        while self.peek() == "AMP":
            self.take()
            premises.append(self.simple())
        self.take("IMPL")
        return QuasiEquation(tuple(premises), self.simple())


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    p.take("END")
    return t


def parse_statement(text: str) -> Statement:
    p = _Parser(text)
    s = p.statement()
    p.take("END")
    return s


# ----------------------------------------------------------------------
# printing

_LEVEL = {"join": 1, "meet": 2, "ldiv": 3, "rdiv": 3, "prod": 4}
_SYM = {"join": "\\/", "meet": "/\\", "ldiv": "\\", "rdiv": "/", "prod": "*"}


def pretty_term(t: Term) -> str:
    def go(t: Term, level: int, right: bool) -> str:
        if isinstance(t, Var):
            return t.name
        if isinstance(t, Const):
            return t.symbol
        mine = _LEVEL[t.op]
        s = f"{go(t.left, mine, False)} {_SYM[t.op]} {go(t.right, mine, True)}"
        # parenthesise when binding looser than context, or equal binding in
        # the right slot (all binary ops here associate to the left)
        if mine < level or (mine == level and right):
            return f"({s})"
        return s

    return go(t, 0, False)


def pretty(stmt: Statement) -> str:
    if isinstance(stmt, Equation):
        return f"{pretty_term(stmt.lhs)} = {pretty_term(stmt.rhs)}"
    if isinstance(stmt, Inequality):
        return f"{pretty_term(stmt.lhs)} <= {pretty_term(stmt.rhs)}"
    parts = " & ".join(pretty(p) for p in stmt.premises)
    return f"{parts} => {pretty(stmt.conclusion)}"


def free_vars(obj) -> frozenset[str]:
    if isinstance(obj, Var):
        return frozenset((obj.name,))
    if isinstance(obj, Const):
        return frozenset()
    if isinstance(obj, BinOp):
        return free_vars(obj.left) | free_vars(obj.right)
    if isinstance(obj, (Equation, Inequality)):
        return free_vars(obj.lhs) | free_vars(obj.rhs)
    return frozenset().union(*(free_vars(p) for p in obj.premises),
                             free_vars(obj.conclusion))


# ----------------------------------------------------------------------
# evaluation

def eval_term(alg, t: Term, env: dict[str, int]) -> int:
    if isinstance(t, Var):
        try:
            return env[t.name]
        except KeyError:
            raise ValueError(f"unbound variable {t.name!r}") from None
    if isinstance(t, Const):
        if t.symbol == "1":
            return alg.unit
        if alg.zero is None:
            raise ValueError("term uses 0 but the algebra declares no zero")
        return alg.zero
    table = getattr(alg, t.op)
    return table[eval_term(alg, t.left, env)][eval_term(alg, t.right, env)]


def holds_at(alg, stmt: Statement, env: dict[str, int]) -> bool:
    if isinstance(stmt, Equation):
        return eval_term(alg, stmt.lhs, env) == eval_term(alg, stmt.rhs, env)
    if isinstance(stmt, Inequality):
        return alg.le(eval_term(alg, stmt.lhs, env),
                      eval_term(alg, stmt.rhs, env))
    if all(holds_at(alg, p, env) for p in stmt.premises):
        return holds_at(alg, stmt.conclusion, env)
    return True


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: Optional[dict[str, int]] = None

    def __bool__(self) -> bool:
        return self.holds


def assignments(alg, names: list[str]) -> Iterator[dict[str, int]]:
    """All assignments in lexicographic (mixed-radix) order of sorted names."""
    names = sorted(names)
    for values in product(range(alg.size), repeat=len(names)):
        yield dict(zip(names, values))


def satisfies(alg, stmt: Statement) -> Verdict:
    """Exhaustively check stmt; on failure report the lexicographically least
    failing assignment (variables ordered by name)."""
    names = sorted(free_vars(stmt))
    for env in assignments(alg, names):
        if not holds_at(alg, stmt, env):
            return Verdict(False, env)
    return Verdict(True, None)


def satisfies_all(alg, stmts) -> Verdict:
    """First failure among a conjunction of statements, if any."""
    for s in stmts:
        v = satisfies(alg, s)
        if not v:
            return v
    return Verdict(True, None)


# ----------------------------------------------------------------------
# builtin equations and quasi-equations

def _lambda_statement(n: int) -> Statement:
    if n < 1:
        raise ValueError("lambda index must be >= 1")
    meets = [f"x{i} / (x{i} / (x{i + 1} \\ x{i}))" for i in range(n)]
    joins = [f"x{i}" for i in range(n + 1)]
    return parse_statement(
        "(" + ") /\\ (".join(meets) + ") <= " + " \\/ ".join(joins))


def _finite_chain_statement(n: int) -> Statement:
    if n < 1:
        raise ValueError("finite-chain index must be >= 1")
    joins = [f"(x{i + 1} / x{i})" for i in range(n)]
    return parse_statement(" \\/ ".join(joins) + " >= 1")


def _normal_statements(n: int) -> list[Statement]:
    if n < 0:
        raise ValueError("normal degree must be >= 0")
    p = " * ".join(["(x /\\ 1)"] * n) if n else "1"
    return [parse_statement(f"{p} * y <= y * x"),
            parse_statement(f"y * {p} <= x * y")]


_FIXED_BUILTINS: dict[str, list[str]] = {
    "integral": ["x <= 1"],
    "commutative": ["x * y = y * x"],
    "divisible": ["(x / y) * y = x /\\ y", "y * (y \\ x) = x /\\ y"],
    "cancellative": ["(x * y) / y = x", "x \\ (x * y) = y"],
    "idempotent": ["x * x = x"],
    "prelinear": ["(x / y) \\/ (y / x) >= 1"],
    "representable": [
        "u \\ (((x \\/ y) \\ x) * u) \\/ (v * ((x \\/ y) \\ y)) / v >= 1"],
    "one-distributive": ["(x \\/ y) /\\ 1 <= (x /\\ 1) \\/ (y /\\ 1)"],
    "wajsberg": ["(y / x) \\ y = (x / y) \\ x", "y / (x \\ y) = x / (y \\ x)"],
    "product-hoop": ["(y -> z) \\/ ((y -> x * y) -> x) = 1"],
    "G": ["x \\/ y = 1 => (w \\ (x * w)) /\\ 1 \\/ ((z * y) / z) /\\ 1 = 1"],
}

_PARAMETRIC = {"normal", "lambda", "finite-chain"}


def builtin_names() -> list[str]:
    return sorted(_FIXED_BUILTINS) + sorted(_PARAMETRIC)


def builtin(name: str, param: Optional[int] = None) -> list[Statement]:
    """Named axiom families.  Conjunctive families return several statements;
    an algebra satisfies the family when it satisfies all of them."""
    if name in _FIXED_BUILTINS:
        if param is not None:
            raise ValueError(f"builtin {name!r} takes no parameter")
        return [parse_statement(s) for s in _FIXED_BUILTINS[name]]
    if name == "normal":
        return _normal_statements(1 if param is None else param)
    if name == "lambda":
        if param is None:
            raise ValueError("builtin 'lambda' needs a parameter")
        return [_lambda_statement(param)]
    if name == "finite-chain":
        if param is None:
            raise ValueError("builtin 'finite-chain' needs a parameter")
        return [_finite_chain_statement(param)]
    raise ValueError(f"unknown builtin {name!r}")
