import itertools

import pytest

from datum.curry import curry
from datum.errors import EmptyWitness, FocalDomainMismatch, SignatureMismatch
from datum.kernel import Alphabet, NatSegment, builtin_op, evaluate, table_op
from datum.typesys import (
    ProductSpec,
    check_witness,
    datum_check,
    extensionally_equal,
    make_type,
    product_type,
    type_system,
)


@pytest.fixture(scope="module")
def chars():
    return Alphabet("Char", [chr(c) for c in range(32, 127)])


def test_char_type(chars):
    up = builtin_op("toUpper", [chars], chars, "upper")
    t = make_type("Char", chars, [curry(up, 1)])
    assert check_witness(t).passed
    assert datum_check(t, "a")
    assert not datum_check(t, ("1", "2"))


def test_empty_witness(chars):
    with pytest.raises(EmptyWitness):
        make_type("Char", chars, [])


def test_focal_domain_must_be_the_alphabet(chars):
    nat = NatSegment(3)
    succ = builtin_op("succ", [nat], nat, "succ")
    with pytest.raises(FocalDomainMismatch):
        make_type("Char", chars, [curry(succ, 1)])


def test_alphanum_does_not_contain_percent(load):
    ws = load("char_alphanum.dt")
    assert datum_check(ws.types["Char"], "%")
    assert not datum_check(ws.types["Alphanum"], "%")


def test_complex_product(load):
    ws = load("complex.dt")
    c = ws.types["C"]
    assert c.alphabet.dimension == 2
    # create_C only produces complex numbers; add_C and mul_C take them in both slots
    assert sorted(o.label for o in c.ops) == ["add_C@1", "add_C@2", "mul_C@1", "mul_C@2"]
    ops = ws.ops
    assert evaluate(ops["mul_C"], [("0", "1"), ("0", "1")]) == ("-1", "0")
    assert evaluate(ops["add_C"], [("1", "2"), ("3", "4")]) == ("4", "6")


def test_product_dimension_is_the_sum(load):
    real = load("complex.dt").types["Real"]
    cube = Alphabet("V3", itertools.product(range(-1, 7), repeat=3))
    mk = builtin_op("mk", [real.alphabet] * 3, cube, "concat")
    first = builtin_op("first", [cube], real.alphabet, "component", 1)
    t = product_type("C3", ProductSpec([real, real, real], [mk, first]))
    assert t.alphabet.dimension == 3 * real.alphabet.dimension
    assert [o.label for o in t.ops] == ["first@1"]


def test_product_needs_operations_over_the_product(load):
    ws = load("complex.dt")
    real = ws.types["Real"]
    with pytest.raises(SignatureMismatch):
        product_type("C", ProductSpec([real, real], [ws.ops["plus"]]))


def test_complex_laws_on_the_grid(load):
    ws = load("complex.dt")
    add, mul = ws.ops["add_C"], ws.ops["mul_C"]
    grid = add.domain[0]
    outcomes = {}
    for x, y in itertools.product(grid, repeat=2):
        for op in (add, mul):
            try:
                outcomes[op.name, x, y] = evaluate(op, [x, y])
            except Exception:
                outcomes[op.name, x, y] = None
    for x, y in itertools.product(grid, repeat=2):
        assert outcomes["add_C", x, y] == outcomes["add_C", y, x]
        assert outcomes["mul_C", x, y] == outcomes["mul_C", y, x]
    for x in grid:
        assert outcomes["add_C", x, ("0", "0")] == x
        assert outcomes["mul_C", x, ("1", "0")] == x


def test_type_system_one_type_per_alphabet():
    a = Alphabet("A", ["x", "y"])
    seg = NatSegment(2)
    f = table_op("f", [a, seg], a, {k: "x" for k in itertools.product("xy", range(3))})
    ts = type_system([a, seg], [f])
    assert [t.name for t in ts.types] == ["A", "N2"]
    assert [c.index for c in ts.type_named("A").ops] == [1]
    assert [c.index for c in ts.type_named("N2").ops] == [2]


def test_extensional_equality_ignores_names():
    a = Alphabet("A", ["x", "y"])
    b = Alphabet("B", ["x", "y"])
    f = table_op("f", [a], a, {"x": "y", "y": "x"})
    g = table_op("g", [b], b, {"x": "y", "y": "x"})
    h = table_op("h", [b], b, {"x": "x", "y": "x"})
    assert extensionally_equal(make_type("S", a, [curry(f, 1)]), make_type("T", b, [curry(g, 1)]))
    assert not extensionally_equal(make_type("S", a, [curry(f, 1)]), make_type("T", b, [curry(h, 1)]))


def test_check_witness_reports_undefined_rows():
    a = Alphabet("A", ["x", "y"])
    f = table_op("f", [a], a, {"x": "y"}, total=False)
    report = check_witness(make_type("T", a, [curry(f, 1)]))
    assert not report.passed
    assert "'y'" in report.check("witness processability").counterexamples[0]


def test_range_limits_are_not_processing_failures():
    seg = NatSegment(3)
    succ = builtin_op("succ", [seg], seg, "succ")
    report = check_witness(make_type("N", seg, [curry(succ, 1)]))
    assert report.passed
    assert "range bound" in report.check("witness processability").note
