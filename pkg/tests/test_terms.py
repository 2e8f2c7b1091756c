"""Term language: parsing, printing, evaluation, builtin axiom families."""
import pytest

from reslat.builders import godel, lukasiewicz
from reslat.terms import (Equation, Inequality, ParseError, QuasiEquation,
                          assignments, builtin, builtin_names, eval_term,
                          free_vars, parse_statement, parse_term, pretty,
                          pretty_term, satisfies, satisfies_all)


def test_parse_precedence():
    l3 = lukasiewicz(3)
    # prod binds tighter than the divisions, divisions tighter than meet,
    # meet tighter than join
    t1 = parse_term("x * y \\ z")
    t2 = parse_term("(x * y) \\ z")
    t3 = parse_term("x \\/ y /\\ z")
    t4 = parse_term("x \\/ (y /\\ z)")
    for x in range(l3.size):
        for y in range(l3.size):
            for z in range(l3.size):
                env = {"x": x, "y": y, "z": z}
                assert eval_term(l3, t1, env) == eval_term(l3, t2, env)
                assert eval_term(l3, t3, env) == eval_term(l3, t4, env)


def test_arrow_is_left_division():
    l2 = lukasiewicz(2)
    a = parse_term("x -> y")
    b = parse_term("x \\ y")
    for x in range(3):
        for y in range(3):
            assert (eval_term(l2, a, {"x": x, "y": y})
                    == eval_term(l2, b, {"x": x, "y": y}))


def test_constants_and_eval():
    l2 = lukasiewicz(2)
    assert eval_term(l2, parse_term("1"), {}) == 2
    assert eval_term(l2, parse_term("0"), {}) == 0
    assert eval_term(l2, parse_term("x \\ 0"), {"x": 1}) == 1  # negation


def test_pretty_round_trip():
    samples = [
        "x * y \\ z >= x /\\ 1",
        "(x \\/ y) /\\ 1 <= (x /\\ 1) \\/ (y /\\ 1)",
        "x * y = y * x",
        "(x / y) \\/ (y / x) >= 1",
        "x \\/ y = 1 => (w \\ (x * w)) /\\ 1 \\/ ((z * y) / z) /\\ 1 = 1",
    ]
    l3 = lukasiewicz(3)
    for s in samples:
        stmt = parse_statement(s)
        again = parse_statement(pretty(stmt))
        names = sorted(free_vars(stmt))
        for env in assignments(l3, names):
            from reslat.terms import holds_at
            assert holds_at(l3, stmt, env) == holds_at(l3, again, env)


def test_statement_kinds():
    assert isinstance(parse_statement("x = y"), Equation)
    assert isinstance(parse_statement("x <= y"), Inequality)
    assert isinstance(parse_statement("x >= y"), Inequality)
    assert isinstance(parse_statement("x = 1 => y = 1"), QuasiEquation)


def test_parse_errors():
    for bad in ["x +", "(x \\/ y", "x ? y", "", "x = ", "x = y = z"]:
        with pytest.raises(ParseError):
            parse_statement(bad)
    with pytest.raises(ParseError):
        parse_term("x <= y")  # statements are not terms


def test_assignments_order():
    l2 = lukasiewicz(2)
    envs = list(assignments(l2, ["y", "x"]))
    assert len(envs) == 9
    assert envs[0] == {"x": 0, "y": 0}
    assert envs[1] == {"x": 0, "y": 1}  # names sorted, last varies fastest
    assert envs[-1] == {"x": 2, "y": 2}


def test_satisfies_witness():
    l2 = lukasiewicz(2)
    v = satisfies(l2, parse_statement("x * x = x"))
    assert not v
    assert v.witness == {"x": 1}  # 1*1 = 0 on the 3-chain
    g = godel(2)
    assert satisfies(g, parse_statement("x * x = x"))
    assert satisfies(g, parse_statement("x * x = x")).witness is None


def test_satisfies_all_reports_first_failure():
    l2 = lukasiewicz(2)
    stmts = [parse_statement("x = x"), parse_statement("x * x = x")]
    v = satisfies_all(l2, stmts)
    assert not v and v.witness == {"x": 1}


def test_builtin_names_cover_the_table():
    names = builtin_names()
    for expected in ["integral", "commutative", "divisible", "cancellative",
                     "idempotent", "prelinear", "representable",
                     "one-distributive", "wajsberg", "product-hoop", "G",
                     "normal", "lambda", "finite-chain"]:
        assert expected in names


def test_builtin_flags_on_standard_chains():
    l4 = lukasiewicz(4)
    g3 = godel(3)
    for name in ["integral", "commutative", "divisible", "prelinear",
                 "wajsberg"]:
        assert satisfies_all(l4, builtin(name)), name
    assert not satisfies_all(l4, builtin("idempotent"))
    for name in ["integral", "commutative", "divisible", "prelinear",
                 "idempotent"]:
        assert satisfies_all(g3, builtin(name)), name
    assert not satisfies_all(g3, builtin("wajsberg"))
    assert not satisfies_all(g3, builtin("cancellative"))


def test_builtin_non_integral_example(rl_by_size):
    # some size-3 residuated lattice has its unit strictly below the top
    hits = [a for a in rl_by_size[3]
            if not satisfies_all(a, builtin("integral"))]
    assert hits
    v = satisfies_all(hits[0], builtin("integral"))
    x = v.witness["x"]
    assert not hits[0].le(x, hits[0].unit)


def test_builtin_param_validation():
    with pytest.raises(ValueError):
        builtin("integral", 2)
    with pytest.raises(ValueError):
        builtin("lambda")
    with pytest.raises(ValueError):
        builtin("finite-chain")
    with pytest.raises(ValueError):
        builtin("nosuch")
    with pytest.raises(ValueError):
        builtin("lambda", 0)


def test_lambda_statement_shape_and_l2_failure():
    (stmt,) = builtin("lambda", 1)
    text = pretty(stmt)
    assert "x0 / (x0 / (x1 \\ x0))" in text
    assert "<=" in text and "x0 \\/ x1" in text
    v = satisfies(lukasiewicz(2), stmt)
    assert not v
    assert v.witness == {"x0": 0, "x1": 0}  # 0/0 = 1 collapses the meetand


def test_finite_chain_indexing():
    # a bounded k-element chain satisfies the k-indexed family and the
    # (k-1)-indexed one pinpoints a strictly descending run
    l2 = lukasiewicz(2)  # 3 elements
    assert satisfies_all(l2, builtin("finite-chain", 3))
    v = satisfies_all(l2, builtin("finite-chain", 2))
    assert not v
    assert v.witness == {"x0": 2, "x1": 1, "x2": 0}
    g3 = godel(3)  # 4 elements
    assert satisfies_all(g3, builtin("finite-chain", 4))
    assert not satisfies_all(g3, builtin("finite-chain", 3))


def test_normal_family_defaults():
    stmts = builtin("normal")
    assert len(stmts) == 2
    assert satisfies_all(lukasiewicz(3), stmts)  # commutative -> normal
    assert builtin("normal", 2)


def test_g_quasi_on_commutative():
    for alg in [lukasiewicz(2), godel(3)]:
        assert satisfies_all(alg, builtin("G"))


def test_pretty_term_compact():
    t = parse_term("(x * y) \\ z")
    assert pretty_term(t) == "x * y \\ z"
    t2 = parse_term("x * (y \\ z)")
    assert pretty_term(t2) == "x * (y \\ z)"
