"""Restriction (R) and extension (P) subtypes, projections and safe casts.

Both relations are verified exhaustively over the finite alphabets
involved.  Edges always point from the subtype (the derived type) to the
supertype, the direction in which characters can be cast safely.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .curry import CurriedOp, curry, restrict_curried
from .errors import (
    DatumError,
    DomainViolation,
    KindMismatch,
    NotASubAlphabet,
    SignatureMismatch,
    SubtypeRejected,
)
from .kernel import (
    Alphabet,
    Character,
    Operation,
    as_char,
    builtin_op,
    compose,
    format_char,
    table_op,
)
from .report import Check, VerificationReport
from .typesys import DataType, exercise, make_type

R = "R"
P = "P"


@dataclass(frozen=True, eq=False)
class Projection:
    """Map from ``source | target`` onto ``target``; ``target`` is the truncated alphabet."""

    source: Alphabet
    target: Alphabet
    mapping: Mapping[Character, Character]

    def __call__(self, c) -> Character:
        c = as_char(c)
        try:
            return self.mapping[c]
        except KeyError:
            raise DomainViolation(f"projection onto {self.target.name} is undefined at {format_char(c)}") from None

    def universe(self) -> list[Character]:
        seen = dict.fromkeys(self.target.members)
        seen.update(dict.fromkeys(self.source.members))
        return list(seen)

    def image_of_source(self, name: str) -> Alphabet:
        return Alphabet(name, {self.mapping[c] for c in self.source if c in self.mapping})

    def as_operation(self, name: str, codomain: Alphabet | None = None) -> Operation:
        """The projection restricted to ``source`` as a table operation."""
        return table_op(name, [self.source], codomain or self.target,
                        {(c,): self.mapping[c] for c in self.source})

    def with_entry(self, c, image) -> "Projection":
        m = dict(self.mapping)
        m[as_char(c)] = as_char(image)
        return Projection(self.source, self.target, m)


def make_projection(
    source: Alphabet,
    target: Alphabet,
    mapping: Mapping | None = None,
    *,
    truncate: int | None = None,
    default=None,
) -> Projection:
    """Build a projection table.

    ``mapping`` lists explicit rows; target members without a row map to
    themselves.  Without ``mapping`` the table is generated: drop trailing
    components beyond ``truncate``, then replace every component that never
    occurs at that position in ``target`` by the ``default`` atom (or, when
    ``default`` has the target's dimension, replace the whole character).
    """
    if mapping is not None:
        m = {as_char(k): as_char(v) for k, v in mapping.items()}
        for v in target:
            m.setdefault(v, v)
        return Projection(source, target, m)

    dflt = as_char(default) if default is not None else None
    positions = [set() for _ in range(target.dimension)]
    for v in target:
        for i, a in enumerate(v):
            positions[i].add(a)
    m: dict[Character, Character] = {}
    for c in (*target.members, *source.members):
        if c in m:
            continue
        d = c[:truncate] if truncate is not None else c
        if d not in target and dflt is not None:
            if len(dflt) == 1 and len(d) == target.dimension:
                d = tuple(a if a in positions[i] else dflt[0] for i, a in enumerate(d))
            if d not in target and len(dflt) == target.dimension:
                d = dflt
        m[c] = d
    return Projection(source, target, m)


def validate_projection(p: Projection) -> VerificationReport:
    report = VerificationReport(f"projection {p.source.name} -> {p.target.name}")
    universe = p.universe()
    m = p.mapping
    report.add(Check("totality", len(universe),
                     [f"no image for {format_char(c)}" for c in universe if c not in m]))
    report.add(Check("image within target", len(m),
                     [f"{format_char(c)} -> {format_char(v)} not in {p.target.name}"
                      for c, v in m.items() if v not in p.target]))
    idem = []
    for c, v in m.items():
        if v not in m:
            idem.append(f"pi({format_char(c)}) = {format_char(v)} has no image itself")
        elif m[v] != v:
            idem.append(f"pi(pi({format_char(c)})) = {format_char(m[v])} != pi({format_char(c)}) = {format_char(v)}")
    report.add(Check("idempotence", len(m), idem))
    report.add(Check("identity on target", len(p.target),
                     [f"pi({format_char(v)}) = {format_char(m[v])}" if v in m else f"pi({format_char(v)}) undefined"
                      for v in p.target if m.get(v) != v]))
    image = {m[c] for c in p.source if c in m and m[c] in p.target}
    report.add(Check("non-empty projected image", len(p.source),
                     [] if image else [f"no character of {p.source.name} projects into {p.target.name}"]))
    return report


@dataclass(frozen=True, eq=False)
class SubtypeEdge:
    kind: str
    sub: DataType
    super: DataType
    projection: Projection | None
    report: VerificationReport

    @property
    def name(self) -> str:
        return f"{self.kind}:{self.sub.name}->{self.super.name}"

    @property
    def verified(self) -> bool:
        return self.report.passed

    def __repr__(self) -> str:
        return f"SubtypeEdge({self.name}, {'verified' if self.verified else 'unverified'})"


def check_contains_restricted(super_t: DataType, sub: Alphabet) -> VerificationReport:
    """Every witness of ``super_t`` restricted to ``sub`` still processes all of ``sub``."""
    if not sub.issubset(super_t.alphabet):
        raise NotASubAlphabet(f"{sub.name} is not a subset of {super_t.alphabet.name}")
    report = VerificationReport(f"{super_t.name} restricted to {sub.name}")
    total, bad, limited = 0, [], 0
    for c in super_t.ops:
        n, b, lim = exercise(restrict_curried(c, sub), sub)
        total, bad, limited = total + n, bad + b, limited + lim
    report.add(Check("contains restricted", total, bad,
                     note=f"{limited} evaluation(s) hit a range bound" if limited else ""))
    return report


def derive_restriction(t: DataType, name: str, sub: Alphabet) -> tuple[DataType, SubtypeEdge]:
    contained = check_contains_restricted(t, sub)
    if not contained.passed:
        raise SubtypeRejected(f"{name} is not a restriction of {t.name}", contained)
    new = make_type(name, sub, [restrict_curried(c, sub) for c in t.ops])
    return new, make_edge(R, new, t)


def lift_through(c: CurriedOp, p: Projection, suffix: str) -> CurriedOp:
    """``c`` precomposed with ``p`` in its focal slot, curried over ``p.source``."""
    f, l = c.base, c.index
    pi = p.as_operation(f"pi_{suffix}", codomain=f.domain[l - 1])
    if f.arity == 1:
        lifted = compose(f, [pi], name=f"{f.name}.{suffix}")
    else:
        dom = f.domain[: l - 1] + (p.source,) + f.domain[l:]
        gs = []
        for i in range(1, f.arity + 1):
            sel = builtin_op(f"proj{i}", dom, dom[i - 1], "proj", i)
            gs.append(compose(pi, [sel]) if i == l else sel)
        lifted = compose(f, gs, name=f"{f.name}.{suffix}")
    return curry(lifted, l)


def derive_extension(
    t: DataType,
    name: str,
    ext: Alphabet,
    p: Projection,
    ops: Iterable[CurriedOp] | None = None,
) -> tuple[DataType, SubtypeEdge]:
    """Extend ``t`` to alphabet ``ext`` with projection ``p`` back onto ``t``.

    Without ``ops`` the new type is witnessed by ``t``'s operations applied
    after projecting.
    """
    if not p.target.same_members(t.alphabet):
        raise SignatureMismatch(f"projection targets {p.target.name}, not the alphabet of {t.name}")
    if not p.source.same_members(ext):
        raise SignatureMismatch(f"projection starts from {p.source.name}, not {ext.name}")
    valid = validate_projection(p)
    if not valid.passed:
        raise SubtypeRejected(f"projection for {name} is invalid", valid)
    image = p.image_of_source(f"pi({name})")
    contained = check_contains_restricted(t, image)
    if not contained.passed:
        raise SubtypeRejected(f"{t.name} does not process the projection of {name}", contained)
    witness = list(ops) if ops is not None else [lift_through(c, p, f"pi_{name}") for c in t.ops]
    new = make_type(name, ext, witness)
    edge = make_edge(P, new, t, p)
    return new, edge


def check_substitutability(edge: SubtypeEdge) -> VerificationReport:
    """Exhaustively check the substitution property the edge kind promises."""
    sub, sup = edge.sub, edge.super
    report = VerificationReport(f"{edge.name}")
    if edge.kind == R:
        outside = [format_char(c) for c in sub.alphabet if c not in sup.alphabet]
        report.add(Check("alphabet inclusion", len(sub.alphabet), [f"{c} not in {sup.alphabet.name}" for c in outside]))
        total, bad = 0, []
        for c in sup.ops:
            n, b, _ = exercise(c, sub.alphabet)
            total, bad = total + n, bad + b
        report.add(Check("R-substitutability", total, bad))
        return report
    if edge.kind != P:
        raise KindMismatch(f"unknown edge kind {edge.kind!r}")
    p = edge.projection
    if p is None:
        raise KindMismatch(f"{edge.name} has no projection")
    preimages: dict[Character, list[Character]] = {}
    undefined = []
    for x in sub.alphabet:
        if x in p.mapping:
            preimages.setdefault(p.mapping[x], []).append(x)
        else:
            undefined.append(f"pi({format_char(x)}) undefined")
    report.add(Check("projection defined", len(sub.alphabet), undefined))

    def what(y):
        xs = preimages[y]
        more = f" and {len(xs) - 1} more" if len(xs) > 1 else ""
        return f"pi({format_char(xs[0])}{more}) = {format_char(y)}"

    total, bad = 0, []
    for c in sup.ops:
        n, b, _ = exercise(c, preimages, what)
        total, bad = total + n, bad + b
    report.add(Check("P-substitutability", total, bad))
    return report


def make_edge(kind: str, sub: DataType, sup: DataType, projection: Projection | None = None) -> SubtypeEdge:
    """Relate two existing types; the edge carries its verification report."""
    if kind not in (R, P):
        raise KindMismatch(f"unknown edge kind {kind!r}")
    if kind == P and projection is None:
        raise KindMismatch("P-edges need a projection")
    stub = SubtypeEdge(kind, sub, sup, projection, VerificationReport("pending"))
    report = check_substitutability(stub)
    if kind == P:
        report = validate_projection(projection).merge(report)
        report.subject = stub.name
    return SubtypeEdge(kind, sub, sup, projection, report)


def r_cast(c, edge: SubtypeEdge) -> Character:
    if edge.kind != R:
        raise KindMismatch(f"{edge.name} is not a restriction edge")
    c = as_char(c)
    if c not in edge.sub.alphabet:
        raise DomainViolation(f"{format_char(c)} is not a datum of {edge.sub.name}")
    assert c in edge.super.alphabet
    return c


def p_cast(c, edge: SubtypeEdge) -> Character:
    if edge.kind != P:
        raise KindMismatch(f"{edge.name} is not an extension edge")
    c = as_char(c)
    if c not in edge.sub.alphabet:
        raise DomainViolation(f"{format_char(c)} is not a datum of {edge.sub.name}")
    out = edge.projection(c)
    if out not in edge.super.alphabet:
        raise DomainViolation(f"pi({format_char(c)}) = {format_char(out)} is not a datum of {edge.super.name}")
    return out


def cast(c, edge: SubtypeEdge) -> Character:
    return r_cast(c, edge) if edge.kind == R else p_cast(c, edge)


def compose_projections(first: Projection, second: Projection) -> Projection:
    """``second . first``: from ``first.source`` onto ``second.target``."""
    m: dict[Character, Character] = {}
    for c in second.target:
        m[c] = second.mapping.get(c, c)
    for c in first.source:
        mid = first.mapping.get(c)
        if mid is not None and mid in second.mapping:
            m[c] = second.mapping[mid]
        elif c in m:
            del m[c]
    return Projection(first.source, second.target, m)
