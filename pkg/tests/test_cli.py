"""End-to-end CLI coverage through the click test runner."""
import json

import pytest
from click.testing import CliRunner

from reslat.builders import godel, lukasiewicz, ordinal_sum
from reslat.cli import main
from reslat.finalg import FinAlg, drop_zero, loads, save


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture()
def files(tmp_path):
    paths = {}
    for name, alg in [("l2", lukasiewicz(2)), ("l3", lukasiewicz(3)),
                      ("l6", lukasiewicz(6)), ("g2", godel(2)),
                      ("g3", godel(3)),
                      ("sum22", ordinal_sum([lukasiewicz(1, name="2")] * 2)),
                      ("s2l2", ordinal_sum([lukasiewicz(1, name="2"),
                                            lukasiewicz(2)]))]:
        p = tmp_path / f"{name}.json"
        save(alg, p)
        paths[name] = str(p)
    return paths


def test_validate_ok(runner, files):
    r = runner.invoke(main, ["validate", files["l2"]])
    assert r.exit_code == 0
    assert "ok: L2 (size 3)" in r.output


def test_validate_broken_table(runner, tmp_path, files):
    alg = lukasiewicz(2)
    prod = [list(row) for row in alg.prod]
    prod[1][1] = 2
    broken = FinAlg(alg.size, alg.unit, alg.join, alg.meet,
                    tuple(tuple(r) for r in prod), alg.ldiv, alg.rdiv,
                    alg.zero)
    p = tmp_path / "broken.json"
    save(broken, p)
    r = runner.invoke(main, ["validate", str(p)])
    assert r.exit_code == 2


def test_validate_garbage_json(runner, tmp_path):
    p = tmp_path / "junk.json"
    p.write_text("{\"size\": 3}")
    r = runner.invoke(main, ["validate", str(p)])
    assert r.exit_code == 2


def test_build_lukasiewicz_stdout(runner):
    r = runner.invoke(main, ["build", "lukasiewicz", "3"])
    assert r.exit_code == 0
    alg = loads(r.output)
    assert alg.size == 4 and alg.name == "L3"


def test_build_and_validate_round_trip(runner, tmp_path):
    out = tmp_path / "g4.json"
    r = runner.invoke(main, ["build", "godel", "4", "-o", str(out)])
    assert r.exit_code == 0 and str(out) in r.output
    r2 = runner.invoke(main, ["validate", str(out)])
    assert r2.exit_code == 0


def test_build_sum_and_rotate(runner, tmp_path, files):
    out = tmp_path / "s.json"
    r = runner.invoke(main, ["build", "sum", files["l2"], files["l3"],
                             "-o", str(out)])
    assert r.exit_code == 0
    s = loads(out.read_text())
    assert s.size == 3 + 4 - 1

    rot = tmp_path / "r.json"
    r = runner.invoke(main, ["build", "rotate", files["g2"], "--n", "3",
                             "--delta", "id", "-o", str(rot)])
    assert r.exit_code == 0
    rr = loads(rot.read_text())
    assert rr.size == 2 * 3 + 3 - 2


def test_build_rotate_rejects_bad_delta(runner, files):
    r = runner.invoke(main, ["build", "rotate", files["g2"], "--n", "3",
                             "--delta", "flip"])
    assert r.exit_code == 2


def test_check_builtin_holds(runner, files):
    r = runner.invoke(main, ["check", files["l2"], "--builtin", "wajsberg"])
    assert r.exit_code == 0
    assert r.output.strip() == "holds"


def test_check_builtin_fails_with_witness(runner, files):
    r = runner.invoke(main, ["check", files["g2"], "--builtin", "wajsberg"])
    assert r.exit_code == 1
    assert r.output.startswith("fails at ")
    assert "x=" in r.output and "y=" in r.output


def test_check_parametric_and_json(runner, files):
    r = runner.invoke(main, ["check", files["l2"], "--builtin",
                             "finite-chain", "--param", "3", "--json"])
    assert r.exit_code == 0
    assert json.loads(r.output) == {"holds": True, "witness": None}
    r2 = runner.invoke(main, ["check", files["l2"], "--builtin",
                              "finite-chain", "--param", "2", "--json"])
    assert r2.exit_code == 1
    d = json.loads(r2.output)
    assert d["holds"] is False and d["witness"] == {"x0": 2, "x1": 1, "x2": 0}


def test_check_statement(runner, files):
    r = runner.invoke(main, ["check", files["g2"], "--statement",
                             "x * x = x"])
    assert r.exit_code == 0
    r2 = runner.invoke(main, ["check", files["l2"], "--statement",
                              "x * x = x"])
    assert r2.exit_code == 1
    assert r2.output.strip() == "fails at x=1"


def test_check_statement_parse_error(runner, files):
    r = runner.invoke(main, ["check", files["l2"], "--statement", "x *"])
    assert r.exit_code == 2


def test_check_list(runner, files):
    r = runner.invoke(main, ["check", files["l2"], "--list"])
    assert r.exit_code == 0
    assert "wajsberg" in r.output.split()


def test_check_needs_an_input(runner, files):
    r = runner.invoke(main, ["check", files["l2"]])
    assert r.exit_code == 2


def test_props_json(runner, files):
    r = runner.invoke(main, ["props", files["l3"], "--json"])
    assert r.exit_code == 0
    d = json.loads(r.output)
    assert d["flags"]["commutative"] is True
    assert d["flags"]["idempotent"] is False
    assert d["witnesses"]["idempotent"]


def test_props_text(runner, files):
    r = runner.invoke(main, ["props", files["g2"]])
    assert r.exit_code == 0
    assert "idempotent: true" in r.output
    assert "well_connected: true" in r.output


def test_congruences_text(runner, files):
    r = runner.invoke(main, ["congruences", files["g2"]])
    assert r.exit_code == 0
    lines = r.output.strip().splitlines()
    assert lines[0] == "F0 = {2}"
    assert lines[1] == "F1 = {1, 2}"
    assert lines[2] == "F2 = {0, 1, 2}"
    assert "F0 -< F1" in lines and "F1 -< F2" in lines
    assert "subdirectly irreducible: true" in lines
    assert "simple: false" in lines


def test_congruences_json(runner, files):
    r = runner.invoke(main, ["congruences", files["l3"], "--json"])
    d = json.loads(r.output)
    assert d["simple"] is True and d["subdirectly_irreducible"] is True
    assert d["filters"] == [[3], [0, 1, 2, 3]]


def test_decompose_text(runner, files):
    r = runner.invoke(main, ["decompose", files["l6"]])
    assert r.exit_code == 0
    assert "index: 1" in r.output
    assert "rank: 6" in r.output
    assert "divisibility index: 6" in r.output


def test_decompose_json(runner, files):
    r = runner.invoke(main, ["decompose", files["sum22"], "--json"])
    d = json.loads(r.output)
    assert d["sizes"] == [2, 2] and d["index"] == 2
    assert d["wajsberg"] == [True, True]
    assert d["rank"] is None  # the sum is not Wajsberg


def test_decompose_rejects_non_chain(runner, tmp_path):
    from reslat.finalg import direct_product
    p = tmp_path / "prod.json"
    save(direct_product(lukasiewicz(1), lukasiewicz(1)), p)
    r = runner.invoke(main, ["decompose", str(p)])
    assert r.exit_code == 2


def test_varleq_exit_codes(runner, files):
    r = runner.invoke(main, ["varleq", files["l2"], files["l6"]])
    assert r.exit_code == 0 and r.output.strip() == "true"
    r2 = runner.invoke(main, ["varleq", files["l6"], files["l2"]])
    assert r2.exit_code == 1 and r2.output.strip() == "false"


def test_poset_with_dot(runner, files, tmp_path):
    dot = tmp_path / "p.dot"
    r = runner.invoke(main, ["poset", files["l2"], files["l3"], files["l6"],
                             "--dot", str(dot)])
    assert r.exit_code == 0
    assert "class 0: L2" in r.output
    text = dot.read_text()
    assert text.startswith("digraph variety_poset {")
    assert 'label="L6"' in text


def test_enumerate_count_only(runner):
    r = runner.invoke(main, ["enumerate", "--size", "4", "--count-only"])
    assert r.exit_code == 0
    assert r.output.strip() == "count: 20"


def test_enumerate_writes_files(runner, tmp_path):
    out = tmp_path / "algs"
    r = runner.invoke(main, ["enumerate", "--size", "3", "--commutative",
                             "--out", str(out)])
    assert r.exit_code == 0
    assert r.output.splitlines()[0] == "count: 3"
    written = sorted(out.glob("*.json"))
    assert len(written) == 3
    for p in written:
        assert loads(p.read_text()).size == 3


def test_enumerate_respects_cap(runner):
    r = runner.invoke(main, ["enumerate", "--size", "9", "--count-only"])
    assert r.exit_code == 2


def test_enumerate_jobs_deterministic(runner):
    a = runner.invoke(main, ["enumerate", "--size", "4"])
    b = runner.invoke(main, ["enumerate", "--size", "4", "--jobs", "2"])
    assert a.output == b.output


def test_find_witness(runner, tmp_path):
    out = tmp_path / "w.json"
    r = runner.invoke(main, ["find", "--size-max", "6", "--integral",
                             "--pred", "!normal", "--out", str(out)])
    assert r.exit_code == 0
    w = loads(out.read_text())
    assert w.size == 4


def test_find_none(runner):
    r = runner.invoke(main, ["find", "--size-max", "6", "--commutative",
                             "--pred", "si & !wwc"])
    assert r.exit_code == 1
    assert r.output.strip() == "none"


def test_find_bad_predicate(runner):
    r = runner.invoke(main, ["find", "--size-max", "4", "--pred", "nosuch"])
    assert r.exit_code == 2


def test_report_lambda(runner, tmp_path):
    out = tmp_path / "rep"
    r = runner.invoke(main, ["report", "lambda", "--out", str(out)])
    assert r.exit_code == 0
    assert (out / "lambda_probe.csv").exists()
    assert (out / "lambda_probe.png").exists()
    assert "chains: 43, with index/lambda mismatch: 43" in r.output


def test_report_lambda_deterministic_unless_stamped(runner, tmp_path):
    a = tmp_path / "a"
    b = tmp_path / "b"
    c = tmp_path / "c"
    for d in (a, b):
        r = runner.invoke(main, ["report", "lambda", "--out", str(d)])
        assert r.exit_code == 0
    r = runner.invoke(main, ["report", "lambda", "--out", str(c), "--stamp"])
    assert r.exit_code == 0
    csv_a = (a / "lambda_probe.csv").read_bytes()
    assert csv_a == (b / "lambda_probe.csv").read_bytes()
    assert csv_a != (c / "lambda_probe.csv").read_bytes()
