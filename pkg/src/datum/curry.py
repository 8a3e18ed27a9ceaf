"""Curried operations: one argument slot singled out as the focal domain."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import DatumError, DomainViolation, EmptyAlphabet, IndexOutOfRange, NotASubAlphabet
from .kernel import Alphabet, Args, Character, Operation, StepBudget, as_char, evaluate, format_char


@dataclass(frozen=True, eq=False)
class CurriedOp:
    base: Operation
    index: int  # 1-based slot
    focal_domain: Alphabet

    @property
    def label(self) -> str:
        return f"{self.base.name}@{self.index}"

    @property
    def rest_domain(self) -> tuple[Alphabet, ...]:
        d = self.base.domain
        return d[: self.index - 1] + d[self.index :]

    @property
    def codomain(self) -> Alphabet:
        return self.base.codomain

    def __call__(self, value) -> "ResidualFunction":
        return apply_curried(self, value)

    def __repr__(self) -> str:
        return f"CurriedOp({self.label}, focal={self.focal_domain.name})"


@dataclass(frozen=True, eq=False)
class ResidualFunction:
    """``base`` with slot ``index`` pinned to ``value``."""

    base: Operation
    index: int
    value: Character

    @property
    def rest_domain(self) -> tuple[Alphabet, ...]:
        d = self.base.domain
        return d[: self.index - 1] + d[self.index :]

    @property
    def codomain(self) -> Alphabet:
        return self.base.codomain

    def full_args(self, rest) -> Args:
        rest = tuple(as_char(r) for r in rest)
        return rest[: self.index - 1] + (self.value,) + rest[self.index - 1 :]

    def __call__(self, *rest, budget: StepBudget | None = None) -> Character:
        return evaluate(self.base, self.full_args(rest), budget)

    @property
    def output(self) -> Character:
        """Result of a residual with no remaining arguments."""
        return self()

    def inputs(self) -> Iterator[Args]:
        return itertools.product(*(a.members for a in self.rest_domain))

    def table(self, budget: StepBudget | None = None) -> dict[Args, Character | DatumError]:
        out: dict[Args, Character | DatumError] = {}
        for rest in self.inputs():
            try:
                out[rest] = self(*rest, budget=budget)
            except DatumError as exc:
                out[rest] = exc
        return out


def curry(op: Operation, l: int) -> CurriedOp:
    if not 1 <= l <= op.arity:
        raise IndexOutOfRange(f"{op.name} has {op.arity} slots; cannot curry slot {l}")
    return CurriedOp(op, l, op.domain[l - 1])


def apply_curried(c: CurriedOp, value) -> ResidualFunction:
    value = as_char(value)
    if value not in c.focal_domain:
        raise DomainViolation(f"{format_char(value)} is not in focal domain {c.focal_domain.name} of {c.label}")
    return ResidualFunction(c.base, c.index, value)


def restrict_curried(c: CurriedOp, sub: Alphabet) -> CurriedOp:
    if len(sub) == 0:
        raise EmptyAlphabet(f"cannot restrict {c.label} to an empty alphabet")
    if not sub.issubset(c.focal_domain):
        raise NotASubAlphabet(f"{sub.name} is not a subset of {c.focal_domain.name}")
    return CurriedOp(c.base, c.index, sub)


def curry_over(ops: Iterable[Operation], x: Alphabet) -> list[CurriedOp]:
    """Every ``curry(op, l)`` whose slot ``l`` ranges over ``x``."""
    return [
        curry(op, l)
        for op in ops
        for l in range(1, op.arity + 1)
        if op.domain[l - 1].same_members(x)
    ]


def curried_table(c: CurriedOp, budget: StepBudget | None = None) -> dict:
    """``(focal, rest) -> outcome`` over the focal domain and all remaining slots."""
    table = {}
    for v in c.focal_domain:
        for rest, out in apply_curried(c, v).table(budget).items():
            table[(v, rest)] = out
    return table


def curried_fingerprint(c: CurriedOp) -> frozenset:
    """Hashable extensional summary; errors collapse to their code."""
    return frozenset(
        (k, v if isinstance(v, tuple) else ("!" + v.code,)) for k, v in curried_table(c).items()
    )
