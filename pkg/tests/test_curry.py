import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from datum.curry import (
    CurriedOp,
    ResidualFunction,
    apply_curried,
    curried_fingerprint,
    curried_table,
    curry,
    curry_over,
    restrict_curried,
)
from datum.errors import DomainViolation, IndexOutOfRange, NotASubAlphabet
from datum.kernel import Alphabet, NatSegment, builtin_op, evaluate, nat, table_op

N10 = NatSegment(10)


@pytest.fixture
def add():
    return builtin_op("add", [N10, N10], N10, "add")


def test_curry_add_at_zero_is_identity(add):
    r = apply_curried(curry(add, 2), nat(0))
    assert isinstance(r, ResidualFunction)
    assert all(r(nat(i)) == nat(i) for i in range(11))


def test_apply_curried_defining_equation(add):
    assert apply_curried(curry(add, 1), nat(3))(nat(4)) == nat(7)


def test_apply_outside_focal_domain(add):
    with pytest.raises(DomainViolation):
        apply_curried(curry(add, 1), nat(11))


def test_curry_index_bounds(add):
    with pytest.raises(IndexOutOfRange):
        curry(add, 3)
    with pytest.raises(IndexOutOfRange):
        curry(add, 0)


def test_unary_curry_is_the_operation_itself():
    succ = builtin_op("succ", [N10], N10, "succ")
    c = curry(succ, 1)
    assert c.rest_domain == ()
    for i in range(10):
        assert apply_curried(c, nat(i)).output == evaluate(succ, [nat(i)])


def test_complex_multiplication_at_one_is_identity(load):
    ws = load("complex.dt")
    mul = ws.ops["mul_C"]
    r = apply_curried(curry(mul, 1), ("1", "0"))
    assert all(r(z) == z for z in mul.domain[1])


def test_restrict_keeps_outputs(load):
    ws = load("char_alphanum.dt")
    to_upper = curry(ws.ops["toUpper"], 1)
    alnum = ws.alphabets["Alphanum"]
    small = restrict_curried(to_upper, alnum)
    for c in alnum:
        assert apply_curried(small, c).output == apply_curried(to_upper, c).output


def test_restrict_to_full_alphabet_is_identical(add):
    c = curry(add, 1)
    assert curried_fingerprint(restrict_curried(c, N10)) == curried_fingerprint(c)


def test_restrict_to_disjoint_alphabet(add):
    with pytest.raises(NotASubAlphabet):
        restrict_curried(curry(add, 1), Alphabet("L", ["a"]))


def test_curry_over_counts_slots(add, load):
    assert [c.index for c in curry_over([add], N10)] == [1, 2]
    assert curry_over([add], Alphabet("L", ["a"])) == []
    assert curry_over([load("char_alphanum.dt").ops["toUpper"]], N10) == []
    ws = load("complex.dt")
    assert len(curry_over([ws.ops["mul_C"]], ws.alphabets["VC"])) == 2


def test_curry_over_matches_members_not_names():
    a = Alphabet("A", ["x", "y"])
    b = Alphabet("B", ["x", "y"])
    f = table_op("f", [a, a], a, {k: "x" for k in itertools.product("xy", repeat=2)})
    assert len(curry_over([f], b)) == 2


SEG = NatSegment(4)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=125, max_size=125), st.integers(1, 3))
def test_defining_equation_holds_exhaustively(values, slot):
    rows = {k: (values[i],) for i, k in enumerate(itertools.product(range(5), repeat=3))}
    f = table_op("f", [SEG, SEG, SEG], SEG, rows)
    c = curry(f, slot)
    for alpha in SEG:
        r = apply_curried(c, alpha)
        for rest in r.inputs():
            full = rest[: slot - 1] + (alpha,) + rest[slot - 1:]
            assert r(*rest) == evaluate(f, full)


@settings(max_examples=30, deadline=None)
@given(st.sets(st.integers(0, 4), min_size=1))
def test_restriction_coherence(members):
    f = builtin_op("d", [SEG, SEG], SEG, "absdiff")
    c = curry(f, 2)
    sub = Alphabet("S", members)
    small = restrict_curried(c, sub)
    assert isinstance(small, CurriedOp)
    full = curried_table(c)
    for key, out in curried_table(small).items():
        assert full[key] == out
