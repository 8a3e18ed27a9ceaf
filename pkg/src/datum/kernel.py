"""Alphabets, characters and operations.

A character is a tuple of atoms (strings).  Operations are built from
tables and a small builtin catalog, then combined by composition,
primitive recursion and minimisation.  The natural numbers used as
recursion counters are a bounded segment ``{0..N}``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping, Sequence, Union

from .errors import (
    ArityMismatch,
    BudgetExhausted,
    ClosureCapExceeded,
    DatumError,
    DomainViolation,
    DuplicateMember,
    EmptyAlphabet,
    MixedDimension,
    MuDivergence,
    OutOfRange,
    SignatureMismatch,
    SuccessorOverflow,
    UndefinedInput,
)

Character = tuple[str, ...]
Args = tuple[Character, ...]

DEFAULT_BUDGET = 1_000_000
_INT_RE = re.compile(r"-?\d+\Z")


def is_int_atom(atom: str) -> bool:
    return bool(_INT_RE.match(atom))


def as_char(value) -> Character:
    """Normalise ``'a'``, ``3`` or ``('a', 3)`` to a character."""
    if isinstance(value, str):
        return (value,)
    if isinstance(value, int):
        return (str(value),)
    c = tuple(str(a) for a in value)
    if not c:
        raise MixedDimension("a character needs at least one atom")
    return c


def nat(n: int) -> Character:
    return (str(n),)


def _atom_key(atom: str):
    return (0, int(atom), "") if is_int_atom(atom) else (1, 0, atom)


def char_key(c: Character):
    return tuple(_atom_key(a) for a in c)


def format_atom(atom: str) -> str:
    if is_int_atom(atom):
        return atom
    return "'" + atom.replace("\\", "\\\\").replace("'", "\\'") + "'"


def format_char(c: Character) -> str:
    if len(c) == 1 and not is_int_atom(c[0]):
        return format_atom(c[0])
    return "(" + ",".join(format_atom(a) for a in c) + ")"


class Alphabet:
    """A named, non-empty finite set of characters of one dimension."""

    __slots__ = ("name", "members", "dimension", "_set")

    def __init__(self, name: str, members: Iterable) -> None:
        chars = [as_char(m) for m in members]
        if not chars:
            raise EmptyAlphabet(f"alphabet {name!r} has no members")
        dims = {len(c) for c in chars}
        if len(dims) > 1:
            raise MixedDimension(f"alphabet {name!r} mixes dimensions {sorted(dims)}")
        as_set = frozenset(chars)
        if len(as_set) != len(chars):
            seen: set = set()
            dup = next(c for c in chars if c in seen or seen.add(c))
            raise DuplicateMember(f"alphabet {name!r} lists {format_char(dup)} twice")
        self.name = name
        self.members: tuple[Character, ...] = tuple(sorted(as_set, key=char_key))
        self.dimension = dims.pop()
        self._set = as_set

    def __contains__(self, c) -> bool:
        return c in self._set

    def __iter__(self) -> Iterator[Character]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Alphabet):
            return NotImplemented
        return self.name == other.name and self._set == other._set

    def __hash__(self) -> int:
        return hash((self.name, len(self._set)))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name!r}, dim={self.dimension}, size={len(self)})"

    @property
    def member_set(self) -> frozenset:
        return self._set

    def same_members(self, other: "Alphabet") -> bool:
        return self._set == other._set

    def issubset(self, other: "Alphabet") -> bool:
        return self._set <= other._set

    def renamed(self, name: str) -> "Alphabet":
        return Alphabet(name, self.members)


class NatSegment(Alphabet):
    """``{0, 1, ..., bound}``; successor is undefined at ``bound``."""

    __slots__ = ("bound",)

    def __init__(self, bound: int, name: str | None = None) -> None:
        if bound < 0:
            raise EmptyAlphabet("segment bound must be non-negative")
        super().__init__(name or f"N{bound}", (nat(i) for i in range(bound + 1)))
        self.bound = bound

    def successor(self, c: Character) -> Character:
        n = int(c[0])
        if n >= self.bound:
            raise SuccessorOverflow(f"successor of {n} leaves {self.name}")
        return nat(n + 1)


def make_alphabet(name: str, members: Iterable) -> Alphabet:
    return Alphabet(name, members)


def product_alphabet(name: str, factors: Sequence[Alphabet]) -> Alphabet:
    """All concatenations of factor members, dimension = sum of factor dimensions."""
    if not factors:
        raise EmptyAlphabet("a product needs at least one factor")
    return Alphabet(
        name,
        (tuple(itertools.chain.from_iterable(parts)) for parts in itertools.product(*factors)),
    )


def _is_nat(a: Alphabet) -> bool:
    return isinstance(a, NatSegment)


@dataclass(frozen=True)
class StepBudget:
    max_steps: int = DEFAULT_BUDGET

    def __post_init__(self) -> None:
        if self.max_steps < 1:
            raise ValueError("max_steps must be positive")


class _Meter:
    __slots__ = ("left", "limit")

    def __init__(self, budget: StepBudget) -> None:
        self.left = budget.max_steps
        self.limit = budget.max_steps

    def tick(self) -> None:
        self.left -= 1
        if self.left < 0:
            raise BudgetExhausted(f"evaluation exceeded {self.limit} steps")


# ---------------------------------------------------------------- semantics


@dataclass(frozen=True, eq=False)
class Table:
    rows: Mapping[Args, Character]


@dataclass(frozen=True)
class Builtin:
    name: str
    params: tuple = ()


@dataclass(frozen=True, eq=False)
class Comp:
    h: "Operation"
    gs: tuple["Operation", ...]


@dataclass(frozen=True, eq=False)
class PrimRec:
    g: "Operation"
    h: "Operation"


@dataclass(frozen=True, eq=False)
class MuRec:
    g: "Operation"


Semantics = Union[Table, Builtin, Comp, PrimRec, MuRec]


@dataclass(frozen=True, eq=False)
class Operation:
    name: str
    domain: tuple[Alphabet, ...]
    codomain: Alphabet
    semantics: Semantics

    @property
    def arity(self) -> int:
        return len(self.domain)

    @property
    def is_elementary(self) -> bool:
        return isinstance(self.semantics, (Table, Builtin))

    def signature(self) -> str:
        return " x ".join(a.name for a in self.domain) + f" -> {self.codomain.name}"

    def inputs(self) -> Iterator[Args]:
        return itertools.product(*(a.members for a in self.domain))

    def __call__(self, *args, budget: StepBudget | None = None) -> Character:
        return evaluate(self, args, budget)

    def __repr__(self) -> str:
        return f"Operation({self.name!r}: {self.signature()})"


# ---------------------------------------------------------------- builtins


def _ints(args: Args) -> list[int]:
    return [int(a[0]) for a in args]


def _b_succ(op, params, args):
    return nat(int(args[0][0]) + 1)


def _b_id(op, params, args):
    return args[0]


def _b_const(op, params, args):
    return params[0]


def _b_proj(op, params, args):
    return args[params[0] - 1]


def _b_component(op, params, args):
    return (args[0][params[0] - 1],)


def _b_concat(op, params, args):
    return tuple(itertools.chain.from_iterable(args))


def _b_absdiff(op, params, args):
    a, b = _ints(args)
    return nat(abs(a - b))


def _b_add(op, params, args):
    a, b = _ints(args)
    return nat(a + b)


def _b_sub(op, params, args):
    a, b = _ints(args)
    return nat(a - b)


def _b_mul(op, params, args):
    a, b = _ints(args)
    return nat(a * b)


def _b_cadd(op, params, args):
    (x1, x2), (y1, y2) = ((int(a), int(b)) for a, b in args)
    return (str(x1 + y1), str(x2 + y2))


def _b_cmul(op, params, args):
    (x1, x2), (y1, y2) = ((int(a), int(b)) for a, b in args)
    return (str(x1 * y1 - x2 * y2), str(x1 * y2 + x2 * y1))


def _b_upper(op, params, args):
    return tuple(a.upper() if len(a) == 1 else a for a in args[0])


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise SignatureMismatch(msg)


def _all_int(alphabets: Iterable[Alphabet]) -> bool:
    return all(is_int_atom(x) for a in alphabets for c in a for x in c)


def _chk_unary_same_dim(dom, cod, params):
    _need(len(dom) == 1, "expects exactly one argument")
    _need(dom[0].dimension == cod.dimension, "argument and result dimensions differ")


def _chk_succ(dom, cod, params):
    _chk_unary_same_dim(dom, cod, params)
    _need(dom[0].dimension == 1 and _all_int(dom), "succ needs an integer alphabet")


def _chk_const(dom, cod, params):
    _need(len(params) == 1, "const takes one character")
    _need(params[0] in cod, f"constant {format_char(params[0])} not in {cod.name}")


def _chk_proj(dom, cod, params):
    _need(len(params) == 1 and 1 <= params[0] <= len(dom), "proj index out of range")
    _need(dom[params[0] - 1].dimension == cod.dimension, "proj result dimension differs")


def _chk_component(dom, cod, params):
    _need(len(dom) == 1, "component expects one argument")
    _need(len(params) == 1 and 1 <= params[0] <= dom[0].dimension, "component index out of range")
    _need(cod.dimension == 1, "component returns a 1-dimensional character")


def _chk_concat(dom, cod, params):
    _need(sum(a.dimension for a in dom) == cod.dimension, "concat dimensions do not add up")


def _chk_binary_int(dom, cod, params):
    _need(len(dom) == 2, "expects two arguments")
    _need(all(a.dimension == 1 for a in dom) and cod.dimension == 1, "expects scalar characters")
    _need(_all_int(dom), "expects integer alphabets")


def _chk_binary_pair(dom, cod, params):
    _need(len(dom) == 2, "expects two arguments")
    _need(all(a.dimension == 2 for a in dom) and cod.dimension == 2, "expects pairs")
    _need(_all_int(dom), "expects integer alphabets")


@dataclass(frozen=True)
class _BuiltinSpec:
    fn: Callable
    check: Callable
    params: str  # "", "int" or "char"
    doc: str


BUILTINS: dict[str, _BuiltinSpec] = {
    "succ": _BuiltinSpec(_b_succ, _chk_succ, "", "n -> n+1; overflows at the segment bound"),
    "id": _BuiltinSpec(_b_id, _chk_unary_same_dim, "", "identity"),
    "const": _BuiltinSpec(_b_const, _chk_const, "char", "ignores its arguments, returns the constant"),
    "proj": _BuiltinSpec(_b_proj, _chk_proj, "int", "proj(i): the i-th argument (1-based)"),
    "component": _BuiltinSpec(_b_component, _chk_component, "int", "component(i): i-th atom of a vector"),
    "concat": _BuiltinSpec(_b_concat, _chk_concat, "", "tuple concatenation of all arguments"),
    "absdiff": _BuiltinSpec(_b_absdiff, _chk_binary_int, "", "|a - b|"),
    "add": _BuiltinSpec(_b_add, _chk_binary_int, "", "a + b"),
    "sub": _BuiltinSpec(_b_sub, _chk_binary_int, "", "a - b"),
    "mul": _BuiltinSpec(_b_mul, _chk_binary_int, "", "a * b"),
    "cadd": _BuiltinSpec(_b_cadd, _chk_binary_pair, "", "componentwise sum of pairs"),
    "cmul": _BuiltinSpec(_b_cmul, _chk_binary_pair, "", "(x1*y1 - x2*y2, x1*y2 + x2*y1)"),
    "upper": _BuiltinSpec(_b_upper, _chk_unary_same_dim, "", "upper-cases single-letter atoms"),
}


# ---------------------------------------------------------------- constructors


def _normalize_row_key(key, arity: int) -> Args:
    if isinstance(key, (str, int)):
        key = (key,)
    key = tuple(key)
    if arity == 1 and key and all(isinstance(x, (str, int)) for x in key):
        return (as_char(key),)
    return tuple(as_char(k) for k in key)


def table_op(
    name: str,
    domain: Sequence[Alphabet],
    codomain: Alphabet,
    rows: Mapping,
    *,
    total: bool = True,
) -> Operation:
    """An operation given by an explicit input -> output map.

    With ``total=False`` missing rows are allowed; evaluating one raises
    :class:`UndefinedInput`.  Used to model corrupted declarations.
    """
    domain = tuple(domain)
    if not domain:
        raise SignatureMismatch(f"{name}: operations need at least one argument")
    norm: dict[Args, Character] = {}
    for key, out in rows.items():
        args = _normalize_row_key(key, len(domain))
        out = as_char(out)
        if len(args) != len(domain):
            raise ArityMismatch(f"{name}: row {key!r} has {len(args)} inputs, expected {len(domain)}")
        for a, alpha in zip(args, domain):
            if a not in alpha:
                raise DomainViolation(f"{name}: row input {format_char(a)} not in {alpha.name}")
        if out not in codomain:
            raise OutOfRange(f"{name}: row output {format_char(out)} not in {codomain.name}")
        if args in norm:
            raise DuplicateMember(f"{name}: input {', '.join(map(format_char, args))} listed twice")
        norm[args] = out
    if total:
        size = 1
        for a in domain:
            size *= len(a)
        if len(norm) != size:
            missing = next(args for args in itertools.product(*domain) if args not in norm)
            raise UndefinedInput(
                f"{name}: table covers {len(norm)} of {size} inputs; "
                f"missing {', '.join(map(format_char, missing))}"
            )
    return Operation(name, domain, codomain, Table(norm))


def builtin_op(name: str, domain: Sequence[Alphabet], codomain: Alphabet, ident: str, *params) -> Operation:
    domain = tuple(domain)
    if not domain:
        raise SignatureMismatch(f"{name}: operations need at least one argument")
    spec = BUILTINS.get(ident)
    if spec is None:
        raise SignatureMismatch(f"{name}: unknown builtin {ident!r}")
    if spec.params == "char":
        params = tuple(as_char(p) for p in params)
    elif spec.params == "int":
        params = tuple(int(p) for p in params)
    elif params:
        raise SignatureMismatch(f"{name}: builtin {ident} takes no parameters")
    try:
        spec.check(domain, codomain, params)
    except SignatureMismatch as exc:
        raise SignatureMismatch(f"{name}: builtin {ident}: {exc}") from None
    return Operation(name, domain, codomain, Builtin(ident, params))


def _same_domain(a: Sequence[Alphabet], b: Sequence[Alphabet]) -> bool:
    return len(a) == len(b) and all(x.same_members(y) for x, y in zip(a, b))


def compose(h: Operation, gs: Sequence[Operation], name: str | None = None) -> Operation:
    """``f(x) = h(g1(x), ..., gn(x))``; all ``gs`` share one domain."""
    gs = tuple(gs)
    if len(gs) != h.arity:
        raise SignatureMismatch(f"{h.name} takes {h.arity} arguments, got {len(gs)} operations")
    for i, g in enumerate(gs):
        if not g.codomain.same_members(h.domain[i]):
            raise SignatureMismatch(
                f"codomain {g.codomain.name} of {g.name} does not match slot {i + 1} "
                f"({h.domain[i].name}) of {h.name}"
            )
    for g in gs[1:]:
        if not _same_domain(g.domain, gs[0].domain):
            raise SignatureMismatch(f"{g.name} and {gs[0].name} have different domains")
    name = name or f"comp({h.name},{','.join(g.name for g in gs)})"
    return Operation(name, gs[0].domain, h.codomain, Comp(h, gs))


def prim_rec(g: Operation, h: Operation, name: str | None = None) -> Operation:
    """``f(a, 0) = g(a)``, ``f(a, b+1) = h(a, b, f(a, b))``."""
    n = g.arity
    if h.arity != n + 2:
        raise SignatureMismatch(f"{h.name} must take {n + 2} arguments, takes {h.arity}")
    if not _same_domain(h.domain[:n], g.domain):
        raise SignatureMismatch(f"leading slots of {h.name} must match the domain of {g.name}")
    counter = h.domain[n]
    if not _is_nat(counter):
        raise SignatureMismatch(f"slot {n + 1} of {h.name} must be a natural segment")
    y = g.codomain
    if not (h.domain[n + 1].same_members(y) and h.codomain.same_members(y)):
        raise SignatureMismatch(f"{h.name} must map {y.name} back into {y.name}")
    name = name or f"primrec({g.name},{h.name})"
    return Operation(name, g.domain + (counter,), y, PrimRec(g, h))


def mu_rec(g: Operation, name: str | None = None) -> Operation:
    """``f(a) = smallest b with g(a, b) = 0``."""
    if g.arity < 2:
        raise SignatureMismatch(f"{g.name} needs a search slot after at least one argument")
    search = g.domain[-1]
    if not _is_nat(search):
        raise SignatureMismatch(f"last slot of {g.name} must be a natural segment")
    if not _is_nat(g.codomain):
        raise SignatureMismatch(f"{g.name} must return a natural segment")
    name = name or f"murec({g.name})"
    return Operation(name, g.domain[:-1], search, MuRec(g))


# ---------------------------------------------------------------- evaluation

_ZERO = nat(0)


def evaluate(op: Operation, args: Sequence, budget: StepBudget | None = None) -> Character:
    """Evaluate ``op`` on ``args``; errors are raised, never turned into values."""
    meter = _Meter(budget or StepBudget())
    return _eval(op, tuple(as_char(a) for a in args), meter)


def _eval(op: Operation, args: Args, meter: _Meter) -> Character:
    meter.tick()
    if len(args) != op.arity:
        raise ArityMismatch(f"{op.name} takes {op.arity} arguments, got {len(args)}")
    for i, (a, alpha) in enumerate(zip(args, op.domain)):
        if a not in alpha:
            raise DomainViolation(f"{op.name}: argument {i + 1} {format_char(a)} not in {alpha.name}")
    sem = op.semantics
    if isinstance(sem, Table):
        try:
            return sem.rows[args]
        except KeyError:
            raise UndefinedInput(f"{op.name}: no row for {', '.join(map(format_char, args))}") from None
    if isinstance(sem, Builtin):
        out = BUILTINS[sem.name].fn(op, sem.params, args)
        if out not in op.codomain:
            exc = SuccessorOverflow if sem.name == "succ" else OutOfRange
            raise exc(f"{op.name}: result {format_char(out)} not in {op.codomain.name}")
        return out
    if isinstance(sem, Comp):
        inner = tuple(_eval(g, args, meter) for g in sem.gs)
        return _eval(sem.h, inner, meter)
    if isinstance(sem, PrimRec):
        a, b = args[:-1], int(args[-1][0])
        acc = _eval(sem.g, a, meter)
        for i in range(b):
            acc = _eval(sem.h, a + (nat(i), acc), meter)
        return acc
    if isinstance(sem, MuRec):
        search = sem.g.domain[-1]
        for b in search.members:
            if _eval(sem.g, args + (b,), meter) == _ZERO:
                return b
        raise MuDivergence(f"{op.name}: no zero of {sem.g.name} within {search.name} for {', '.join(map(format_char, args))}")
    raise TypeError(f"unknown semantics {sem!r}")


def outcome(op: Operation, args: Sequence, budget: StepBudget | None = None) -> Character | DatumError:
    """Like :func:`evaluate` but returns the error instead of raising it."""
    try:
        return evaluate(op, args, budget)
    except DatumError as exc:
        return exc


def extension(op: Operation, budget: StepBudget | None = None) -> tuple[Character | None, ...]:
    """Outputs over the whole domain product in canonical order; ``None`` where undefined."""
    out = []
    for args in op.inputs():
        r = outcome(op, args, budget)
        out.append(None if isinstance(r, DatumError) else r)
    return tuple(out)


def derivation(op: Operation, indent: str = "") -> str:
    """Indented derivation tree of ``op`` down to its elementary operations."""
    sem = op.semantics
    if isinstance(sem, Table):
        return f"{indent}{op.name} : {op.signature()} [table]"
    if isinstance(sem, Builtin):
        params = f"({','.join(format_char(p) if isinstance(p, tuple) else str(p) for p in sem.params)})" if sem.params else ""
        return f"{indent}{op.name} : {op.signature()} [builtin {sem.name}{params}]"
    if isinstance(sem, Comp):
        kids, rule = (sem.h, *sem.gs), "comp"
    elif isinstance(sem, PrimRec):
        kids, rule = (sem.g, sem.h), "primrec"
    else:
        kids, rule = (sem.g,), "murec"
    lines = [f"{indent}{op.name} : {op.signature()} [{rule}]"]
    lines.extend(derivation(k, indent + "  ") for k in kids)
    return "\n".join(lines)


# ---------------------------------------------------------------- closure


class _TableCache:
    """Full input -> output tables (``None`` where undefined), built bottom-up
    from the tables of sub-operations instead of re-evaluating nested trees."""

    def __init__(self) -> None:
        self._tables: dict[int, dict[Args, Character | None]] = {}
        self._keep: list[Operation] = []

    def table(self, op: Operation) -> dict[Args, Character | None]:
        t = self._tables.get(id(op))
        if t is None:
            t = self._build(op)
            self._tables[id(op)] = t
            self._keep.append(op)
        return t

    def _build(self, op: Operation) -> dict[Args, Character | None]:
        sem = op.semantics
        out: dict[Args, Character | None] = {}
        if isinstance(sem, (Table, Builtin)):
            for args in op.inputs():
                r = outcome(op, args)
                out[args] = None if isinstance(r, DatumError) else r
        elif isinstance(sem, Comp):
            gts = [self.table(g) for g in sem.gs]
            ht = self.table(sem.h)
            for args in op.inputs():
                inner = tuple(gt[args] for gt in gts)
                out[args] = None if None in inner else ht[inner]
        elif isinstance(sem, PrimRec):
            gt, ht = self.table(sem.g), self.table(sem.h)
            for args in op.inputs():
                a, b = args[:-1], int(args[-1][0])
                acc = gt[a]
                for i in range(b):
                    if acc is None:
                        break
                    acc = ht[a + (nat(i), acc)]
                out[args] = acc
        else:
            gt = self.table(sem.g)
            search = sem.g.domain[-1].members
            for args in op.inputs():
                found = None
                for b in search:
                    r = gt[args + (b,)]
                    if r is None:
                        break
                    if r == _ZERO:
                        found = b
                        break
                out[args] = found
        return out

    def key(self, op: Operation):
        t = self.table(op)
        return (tuple(a.name for a in op.domain), op.codomain.name, tuple(t[args] for args in op.inputs()))


def closure_enumerate(
    alphabets: Iterable[Alphabet],
    elems: Iterable[Operation],
    depth: int,
    cap: int = 5000,
    max_attempts: int | None = None,
) -> list[Operation]:
    """Operations reachable from ``elems`` with at most ``depth`` rule applications.

    Results are deduplicated by their full evaluation table and listed by
    depth, then by name.  Raises :class:`ClosureCapExceeded` with the
    partial listing once more than ``cap`` distinct operations exist or
    more than ``max_attempts`` (default ``50 * cap``) candidates were tried.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    max_attempts = 50 * cap if max_attempts is None else max_attempts
    alphabets = list(alphabets)
    known = {a.member_set for a in alphabets}
    cache = _TableCache()
    pool: list[Operation] = []
    seen: set = set()
    for op in elems:
        for a in (*op.domain, op.codomain):
            if a.member_set not in known:
                raise SignatureMismatch(f"{op.name} uses {a.name}, which is not among the given alphabets")
        key = cache.key(op)
        if key not in seen:
            seen.add(key)
            pool.append(op)

    frontier = list(pool)
    attempts = 0
    for _ in range(depth):
        fresh: list[Operation] = []
        new_ids = {id(op) for op in frontier}
        for cand in _candidates(pool, new_ids):
            attempts += 1
            key = cache.key(cand)
            if key not in seen:
                seen.add(key)
                fresh.append(cand)
            if len(pool) + len(fresh) > cap or attempts > max_attempts:
                what = f"{cap} operations" if len(pool) + len(fresh) > cap else f"{max_attempts} candidates"
                raise ClosureCapExceeded(
                    f"closure exceeded {what}", pool + sorted(fresh, key=lambda o: o.name)
                )
        fresh.sort(key=lambda o: o.name)
        pool.extend(fresh)
        frontier = fresh
        if not frontier:
            break
    return pool


def _sig(domain: Sequence[Alphabet]) -> tuple[frozenset, ...]:
    return tuple(a.member_set for a in domain)


def _candidates(pool: list[Operation], new_ids: set[int]) -> Iterator[Operation]:
    """One-step rule applications with at least one operand from the newest level."""
    by_cod: dict[frozenset, list[Operation]] = {}
    for op in pool:
        by_cod.setdefault(op.codomain.member_set, []).append(op)

    def is_new(op):
        return id(op) in new_ids

    for h in sorted(pool, key=lambda o: o.name):
        slots = [by_cod.get(a.member_set, []) for a in h.domain]
        if not all(slots):
            continue
        domains = {_sig(g.domain) for g in slots[0]}
        for dom in sorted(domains, key=repr):
            per_slot = [[g for g in s if _sig(g.domain) == dom] for s in slots]
            if not all(per_slot):
                continue
            # first position holding a new operand is j: earlier slots old, later anything
            positions = range(len(per_slot)) if not is_new(h) else [None]
            for j in positions:
                if j is None:
                    choices = per_slot
                else:
                    choices = [
                        [g for g in s if not is_new(g)] if i < j else ([g for g in s if is_new(g)] if i == j else s)
                        for i, s in enumerate(per_slot)
                    ]
                for gs in itertools.product(*choices):
                    yield compose(h, gs)

    for g in sorted(pool, key=lambda o: o.name):
        n = g.arity
        for h in sorted(pool, key=lambda o: o.name):
            if not (is_new(g) or is_new(h)):
                continue
            if h.arity != n + 2 or not _is_nat(h.domain[n]):
                continue
            if not _same_domain(h.domain[:n], g.domain):
                continue
            if not (h.domain[n + 1].same_members(g.codomain) and h.codomain.same_members(g.codomain)):
                continue
            yield prim_rec(g, h)

    for g in sorted(pool, key=lambda o: o.name):
        if is_new(g) and g.arity >= 2 and _is_nat(g.domain[-1]) and _is_nat(g.codomain):
            yield mu_rec(g)
