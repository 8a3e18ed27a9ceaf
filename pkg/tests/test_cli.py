import json

import pytest

from conftest import TEST_FIXTURES, fixture_path
from datum.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", ["char_alphanum.dt", "alphanum_char.dt", "cycle.dt", "complex.dt",
                                  "characteristics.dt", "arith.dt"])
def test_check_fixtures(capsys, name):
    code, out, _ = run(capsys, "check", fixture_path(name))
    assert code == 0, out
    assert out.rstrip().endswith(": ok")


def test_check_json(capsys):
    code, out, _ = run(capsys, "check", fixture_path("cycle.dt"), "--json")
    data = json.loads(out)
    assert code == 0 and data["ok"]
    assert data["cycles"] == [["T=Tprime", "Text"]]
    dim = next(r for r in data["reports"] if r["subject"] == "dimension acyclicity")
    assert dim["details"]["hypothesis_held"] is False


def test_check_corrupt_projection(capsys):
    code, out, _ = run(capsys, "check", TEST_FIXTURES / "corrupt_projection.dt")
    assert code == 1
    assert "idempotence" in out and "SubtypeRejected" in out


def test_check_missing_file(capsys):
    code, _, err = run(capsys, "check", "does-not-exist.dt")
    assert code == 2 and "cannot read" in err


def test_eval(capsys):
    assert run(capsys, "eval", fixture_path("complex.dt"), "mul_C", "(0,1)", "(0,1)")[:2] == (0, "(-1,0)\n")
    assert run(capsys, "eval", fixture_path("complex.dt"), "add_C", "(1,2)", "(3,4)")[:2] == (0, "(4,6)\n")
    assert run(capsys, "eval", fixture_path("succ.dt"), "succ", "3")[:2] == (0, "(4)\n")


def test_eval_divergence(capsys):
    code, _, err = run(capsys, "eval", fixture_path("arith.dt"), "never", "3")
    assert code == 1 and "MuDivergence" in err


def test_eval_budget(capsys, monkeypatch):
    code, _, err = run(capsys, "eval", fixture_path("arith.dt"), "add", "5", "5", "--budget", "3")
    assert code == 1 and "BudgetExhausted" in err
    monkeypatch.setenv("DATUM_BUDGET", "3")
    assert run(capsys, "eval", fixture_path("arith.dt"), "add", "5", "5")[0] == 1
    monkeypatch.setenv("DATUM_BUDGET", "many")
    assert run(capsys, "eval", fixture_path("arith.dt"), "add", "5", "5")[0] == 2


def test_eval_unknown_op(capsys):
    assert run(capsys, "eval", fixture_path("arith.dt"), "nope", "1")[0] == 1


def test_cast(capsys):
    path = fixture_path("cycle.dt")
    assert run(capsys, "cast", path, "Tprime", "Text", "'a'")[1] == "'a'\nvia Tprime -R-> Text\n"
    assert run(capsys, "cast", path, "Text", "T", "'b'")[1] == "'a'\nvia Text -P-> T\n"


def test_cast_unsafe_direction(capsys):
    path = fixture_path("char_alphanum.dt")
    code, _, err = run(capsys, "cast", path, "Char", "Alphanum", "'%'")
    assert code == 1 and "NoPath" in err
    code, _, err = run(capsys, "cast", path, "Alphanum", "Char", "'%'")
    assert code == 1 and "DomainViolation" in err
    assert run(capsys, "cast", path, "Alphanum", "Char", "'z'")[:2] == (0, "'z'\nvia Alphanum -R-> Char\n")


def test_graph(capsys):
    code, out, _ = run(capsys, "graph", fixture_path("char_alphanum.dt"))
    assert code == 0 and out.count("->") == 1 and out.count("label=\"Char") == 1
    code, out, _ = run(capsys, "graph", fixture_path("characteristics.dt"))
    assert out.count("style=dashed") == 2 and out.count("style=solid") == 2
    code, out, _ = run(capsys, "graph", fixture_path("cycle.dt"), "--format", "json")
    assert json.loads(out)["edges"][0]["kind"] in ("R", "P")
    code, _, err = run(capsys, "graph", fixture_path("cycle.dt"), "--format", "yaml")
    assert code == 2 and "UnsupportedFormat" in err


def test_closure(capsys):
    code, out, _ = run(capsys, "closure", fixture_path("succ.dt"), "--depth", "0")
    assert code == 0 and out.endswith("# 1 operation(s)\n")
    code, out, _ = run(capsys, "closure", fixture_path("succ.dt"), "--depth", "1")
    assert "comp(succ,succ)" in out
    first = out
    assert run(capsys, "closure", fixture_path("succ.dt"), "--depth", "1")[1] == first


def test_closure_cap(capsys):
    code, out, err = run(capsys, "closure", fixture_path("arith.dt"), "--depth", "3", "--cap", "30")
    assert code == 1 and "ClosureCapExceeded" in err
    assert "operation(s)" in out


def test_dump_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "dump", fixture_path("alphanum_char.dt"))
    copy = tmp_path / "copy.dt"
    copy.write_text(out)
    assert run(capsys, "dump", copy)[1] == out


def test_commands_leave_inputs_untouched(capsys, tmp_path):
    src = fixture_path("cycle.dt").read_bytes()
    path = tmp_path / "cycle.dt"
    path.write_bytes(src)
    for argv in (["check", path], ["graph", path], ["closure", path], ["dump", path],
                 ["cast", path, "Text", "T", "'b'"], ["eval", path, "keep", "'a'"]):
        run(capsys, *argv)
    assert path.read_bytes() == src
