"""Data types as (alphabet, witness curried operations) pairs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .curry import CurriedOp, apply_curried, curried_fingerprint, curry_over
from .errors import (
    DatumError,
    EmptyWitness,
    FocalDomainMismatch,
    RangeLimit,
    SignatureMismatch,
)
from .kernel import Alphabet, Character, Operation, as_char, format_char, product_alphabet
from .report import Check, VerificationReport


@dataclass(frozen=True, eq=False)
class DataType:
    name: str
    alphabet: Alphabet
    ops: tuple[CurriedOp, ...]

    def __contains__(self, c) -> bool:
        return datum_check(self, c)

    def __repr__(self) -> str:
        return f"DataType({self.name!r}, {self.alphabet.name}, ops=[{', '.join(o.label for o in self.ops)}])"


def make_type(name: str, alphabet: Alphabet, ops: Iterable[CurriedOp]) -> DataType:
    ops = tuple(ops)
    if not ops:
        raise EmptyWitness(f"type {name} needs at least one operation")
    for c in ops:
        if not c.focal_domain.same_members(alphabet):
            raise FocalDomainMismatch(
                f"type {name}: {c.label} has focal domain {c.focal_domain.name}, not {alphabet.name}"
            )
    return DataType(name, alphabet, ops)


def datum_check(t: DataType, c) -> bool:
    try:
        return as_char(c) in t.alphabet
    except DatumError:
        return False


def exercise(c: CurriedOp, values: Iterable[Character], what=format_char) -> tuple[int, list[str], int]:
    """Apply ``c`` to each value and evaluate the residual on every remaining input.

    Returns ``(evaluations, counterexamples, range_limited)``.  Hitting the
    bound of a finite stand-in (``RangeLimit``) is not a processing failure;
    every other error, or a result outside the codomain, is.
    """
    n = 0
    bad: list[str] = []
    limited = 0
    for v in values:
        try:
            r = apply_curried(c, v)
        except DatumError as exc:
            n += 1
            bad.append(f"{c.label} rejects {what(v)}: {exc.code}")
            continue
        for rest in r.inputs():
            n += 1
            try:
                out = r(*rest)
            except RangeLimit:
                limited += 1
                continue
            except DatumError as exc:
                where = f" with rest ({', '.join(map(format_char, rest))})" if rest else ""
                bad.append(f"{c.label} fails on {what(v)}{where}: {exc.code}: {exc}")
                continue
            if out not in c.codomain:
                bad.append(f"{c.label}({what(v)}) = {format_char(out)} outside {c.codomain.name}")
    return n, bad, limited


def check_witness(t: DataType) -> VerificationReport:
    """Every witness operation processes every character of the type."""
    report = VerificationReport(f"type {t.name}")
    total, bad, limited = 0, [], 0
    for c in t.ops:
        n, b, lim = exercise(c, t.alphabet)
        total += n
        bad += b
        limited += lim
    report.add(Check("witness processability", total, bad,
                     note=f"{limited} evaluation(s) hit a range bound" if limited else ""))
    return report


@dataclass
class TypeSystem:
    base_alphabets: list[Alphabet]
    base_ops: list[Operation]
    types: list[DataType] = field(default_factory=list)

    def type_named(self, name: str) -> DataType:
        for t in self.types:
            if t.name == name:
                return t
        raise KeyError(name)


def type_system(base_alphabets: Sequence[Alphabet], base_ops: Sequence[Operation]) -> TypeSystem:
    """One type per base alphabet, witnessed by every base-op slot over it."""
    types = [make_type(a.name, a, curry_over(base_ops, a)) for a in base_alphabets]
    return TypeSystem(list(base_alphabets), list(base_ops), types)


@dataclass
class ProductSpec:
    factors: list[DataType]
    comp_ops: list[Operation]


def product_type(name: str, spec: ProductSpec, alphabet_name: str | None = None) -> DataType:
    if not spec.factors:
        raise SignatureMismatch(f"product {name} needs at least one factor")
    product = product_alphabet(alphabet_name or f"V_{name}", [t.alphabet for t in spec.factors])
    assert len(product) > 0
    for op in spec.comp_ops:
        slots = (*op.domain, op.codomain)
        matching = [a for a in slots if a.same_members(product)]
        if not matching:
            raise SignatureMismatch(f"{op.name} does not mention the product alphabet of {name}")
        if alphabet_name is None:
            # reuse the alphabet object the operations were declared over
            product = matching[0]
    ops = curry_over(spec.comp_ops, product)
    return make_type(name, product, ops)


def extensionally_equal(a: DataType, b: DataType) -> bool:
    """Same alphabet members and the same witness tables (as a set)."""
    if not a.alphabet.same_members(b.alphabet):
        return False
    return {curried_fingerprint(c) for c in a.ops} == {curried_fingerprint(c) for c in b.ops}
