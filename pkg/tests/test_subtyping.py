import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _workspaces import mutate_projection, random_workspace
from datum.curry import curry
from datum.errors import (
    DomainViolation,
    EmptyAlphabet,
    KindMismatch,
    NotASubAlphabet,
    SubtypeRejected,
)
from datum.kernel import Alphabet, compose, evaluate, outcome, table_op
from datum.subtyping import (
    P,
    R,
    check_contains_restricted,
    check_substitutability,
    compose_projections,
    derive_extension,
    derive_restriction,
    make_edge,
    make_projection,
    p_cast,
    r_cast,
    validate_projection,
)
from datum.typesys import check_witness, extensionally_equal, make_type

A = Alphabet("A", ["a"])
AB = Alphabet("AB", ["a", "b"])


@pytest.fixture
def circle():
    keep = table_op("keep", [A], A, {"a": "a"})
    t = make_type("T", A, [curry(keep, 1)])
    ext, p_edge = derive_extension(t, "Text", AB, make_projection(AB, A, {"b": "a"}))
    t2, r_edge = derive_restriction(ext, "Tprime", Alphabet("A2", ["a"]))
    return t, ext, t2, p_edge, r_edge


# ---------------------------------------------------------------- restriction


def test_alphanum_restricts_char(load):
    ws = load("char_alphanum.dt")
    char, alnum = ws.types["Char"], ws.types["Alphanum"]
    assert check_contains_restricted(char, alnum.alphabet).passed
    assert check_contains_restricted(char, char.alphabet).passed
    edge = ws.graph.out_edges("Alphanum")[0]
    assert edge.kind == R and edge.verified
    for c in alnum.alphabet:
        assert r_cast(c, edge) == c and c in char.alphabet
    with pytest.raises(DomainViolation):
        r_cast("%", edge)


def test_partial_table_names_the_missing_member():
    ab = Alphabet("AB", ["a", "b", "c"])
    f = table_op("f", [ab], ab, {"a": "a", "c": "a"}, total=False)
    t = make_type("T", ab, [curry(f, 1)])
    report = check_contains_restricted(t, Alphabet("S", ["a", "b"]))
    assert not report.passed
    assert "'b'" in report.checks[0].counterexamples[0]
    with pytest.raises(SubtypeRejected):
        derive_restriction(t, "S", Alphabet("S", ["a", "b"]))


def test_restriction_preconditions(circle):
    t = circle[0]
    with pytest.raises(EmptyAlphabet):
        derive_restriction(t, "E", Alphabet("E", []))
    with pytest.raises(NotASubAlphabet):
        derive_restriction(t, "E", Alphabet("E", ["z"]))


def test_restriction_of_extension_recovers_t(circle):
    t, _, t2, _, _ = circle
    assert extensionally_equal(t, t2)


# ---------------------------------------------------------------- projections


def test_identity_projection_is_valid():
    assert validate_projection(make_projection(AB, AB, {})).passed


def test_projection_moving_a_target_member_fails():
    p = make_projection(AB, AB, {"a": "b"})
    report = validate_projection(p)
    # a -> b, b -> b is idempotent, but it does not fix the target pointwise
    assert [c.name for c in report.failed_checks()] == ["identity on target"]


def test_projection_leaving_the_target_is_listed():
    abc = Alphabet("ABC", ["a", "b", "c"])
    p = make_projection(abc, A, {"b": "c", "c": "a"})
    report = validate_projection(p)
    assert "'b' -> 'c' not in A" in report.check("image within target").counterexamples


def test_truncate_and_default_projection(load):
    ws = load("alphanum_char.dt")
    edge = ws.graph.out_edges("Char8")[0]
    p = edge.projection
    assert validate_projection(p).passed
    assert p(("a", "%", "7", "%", "a", "a", "a", "a")) == ("a", "unknown", "7", "unknown")
    assert p(("a", "7", "a", "7")) == ("a", "7", "a", "7")


def test_empty_projected_image_is_rejected():
    xs = Alphabet("X", ["x"])
    t = make_type("T", A, [curry(table_op("keep", [A], A, {"a": "a"}), 1)])
    p = make_projection(xs, A, {"x": "x"})
    with pytest.raises(SubtypeRejected):
        derive_extension(t, "X", xs, p)


def test_circle_casts(circle):
    _, ext, _, p_edge, r_edge = circle
    assert p_cast("b", p_edge) == ("a",)
    assert p_cast("a", p_edge) == ("a",)
    assert r_cast("a", r_edge) == ("a",)
    with pytest.raises(KindMismatch):
        r_cast("a", p_edge)
    with pytest.raises(KindMismatch):
        p_cast("a", r_edge)


def test_extension_default_witness_is_lifted(circle):
    _, ext, _, _, _ = circle
    assert check_witness(ext).passed
    (c,) = ext.ops
    assert evaluate(c.base, ["b"]) == ("a",)


def test_edge_kinds():
    t = make_type("T", A, [curry(table_op("keep", [A], A, {"a": "a"}), 1)])
    with pytest.raises(KindMismatch):
        make_edge("Q", t, t)
    with pytest.raises(KindMismatch):
        make_edge(P, t, t)


# ---------------------------------------------------------------- properties


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_generated_edges_verify(seed):
    ws = random_workspace(seed)
    for e in ws.edges:
        report = check_substitutability(e)
        assert report.passed
        universe = sum(c.universe for c in report.checks if "substitutability" in c.name)
        # P-edges exercise the super type's operations once per projected character
        sub_size = len(e.sub.alphabet) if e.kind == R else len({e.projection(c) for c in e.sub.alphabet})
        rest = sum(
            len(list(itertools.product(*(a.members for a in c.rest_domain)))) for c in e.super.ops
        )
        assert universe == sub_size * rest


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_projection_laws_on_generated_edges(seed):
    ws = random_workspace(seed)
    for e in ws.p_edges():
        p = e.projection
        for c in p.universe():
            assert p(p(c)) == p(c)
        for v in p.target:
            assert p(v) == v


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_mutated_projection_is_caught(seed):
    ws = random_workspace(seed)
    rng = random.Random(seed)
    for e in ws.p_edges():
        bad = mutate_projection(e.projection, rng)
        assert not validate_projection(bad).passed


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_closure_preservation(seed):
    """Composing two witness operations keeps processing the subtype alphabet."""
    ws = random_workspace(seed)
    rng = random.Random(seed)
    unary = [o for o in ws.base_ops if o.arity == 1]
    if len(unary) < 1:
        return
    f, g = rng.choice(unary), rng.choice(unary)
    fg = compose(f, [g])
    for e in ws.edges:
        if e.kind != R or not e.super.alphabet.same_members(ws.base.alphabet):
            continue
        for x in e.sub.alphabet:
            assert not isinstance(outcome(fg, [x]), Exception)


def test_compose_projections_nested_chain(load):
    ws = load("characteristics.dt")
    (e1,) = ws.graph.out_edges("InductiveFlowMeter")
    (e2,) = ws.graph.out_edges("FlowMeter")
    p = compose_projections(e1.projection, e2.projection)
    assert validate_projection(p).passed
    assert p(("high", "DN25", "c5")) == ("high",)
    assert make_edge(P, e1.sub, e2.super, p).verified
