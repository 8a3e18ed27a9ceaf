"""Declaration language for alphabets, operations, types and subtype derivations.

::

    # comment
    alphabet Bit = { 0 1 }
    alphabet Pair = Bit x Bit
    alphabet Word = Bit ^ 4
    nat N bound 10
    op succ : N -> N = builtin succ
    op flip : Bit -> Bit = table { 0 -> 1, 1 -> 0 }
    op two : N -> N = comp(succ, succ)
    op add : N, N -> N = primrec(g, h)
    op inv : N -> N = murec(g)
    type T = (Bit ; flip, other@2)
    restrict S from T alphabet { 0 }
    extend E from T alphabet Pair projection truncate 1 default 0
    product C = A x B with create, plus

Characters are quoted atoms (``'a'``), bare integers (``3``) or
parenthesised tuples (``(0,'x')``).  Table rows list one character per
argument before the arrow.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Iterator

from .curry import CurriedOp, curried_fingerprint, curry, curry_over
from .errors import DatumError, SignatureMismatch, SubtypeRejected
from .hierarchy import TypeGraph, add_edge
from .kernel import (
    Alphabet,
    Character,
    NatSegment,
    Operation,
    builtin_op,
    compose,
    extension,
    format_char,
    mu_rec,
    prim_rec,
    product_alphabet,
    table_op,
)
from .subtyping import SubtypeEdge, derive_extension, derive_restriction, make_projection
from .typesys import DataType, ProductSpec, TypeSystem, make_type, product_type

KEYWORDS = ("alphabet", "nat", "op", "type", "restrict", "extend", "product")


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    file: str
    line: int
    col: int
    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.col}: {self.severity}[{self.code}]: {self.message}"

    def to_dict(self) -> dict:
        return {
            "severity": self.severity,
            "location": f"{self.file}:{self.line}:{self.col}",
            "code": self.code,
            "message": self.message,
        }


# ---------------------------------------------------------------- lexing


@dataclass(frozen=True)
class Token:
    kind: str  # ident, int, str, punct, eof
    text: str
    line: int
    col: int
    first_on_line: bool = False


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<str>'(?:\\.|[^'\\\n])*')
  | (?P<int>-?\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>->|[{}(),;:=@^])
    """,
    re.VERBOSE,
)


class ParseError(Exception):
    def __init__(self, message: str, token: Token, code: str = "Syntax") -> None:
        super().__init__(message)
        self.token = token
        self.code = code


def _unquote(s: str) -> str:
    return re.sub(r"\\(.)", r"\1", s[1:-1])


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    line, line_start, pos = 1, 0, 0
    fresh_line = True
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        col = pos - line_start + 1
        if m is None:
            bad = Token("punct", source[pos], line, col)
            raise ParseError(f"unexpected character {source[pos]!r}", bad)
        kind = m.lastgroup
        text = m.group()
        if kind == "nl":
            line += 1
            line_start = m.end()
            fresh_line = True
        elif kind not in ("ws", "comment"):
            value = _unquote(text) if kind == "str" else text
            tokens.append(Token(kind, value, line, col, fresh_line))
            fresh_line = False
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1, True))
    return tokens


# ---------------------------------------------------------------- syntax tree

CharLit = Character


@dataclass
class AlphabetDecl:
    name: str
    members: list[CharLit] | None = None
    factors: list[str] | None = None
    power: int | None = None
    loc: tuple[int, int] = (0, 0)

    def render(self) -> str:
        if self.members is not None:
            return f"alphabet {self.name} = {{ {' '.join(map(format_char, self.members))} }}"
        if self.power is not None:
            return f"alphabet {self.name} = {self.factors[0]} ^ {self.power}"
        return f"alphabet {self.name} = {' x '.join(self.factors)}"


@dataclass
class NatDecl:
    name: str
    bound: int
    loc: tuple[int, int] = (0, 0)

    def render(self) -> str:
        return f"nat {self.name} bound {self.bound}"


def _render_rows(rows) -> str:
    parts = [" ".join(map(format_char, ins)) + " -> " + format_char(out) for ins, out in rows]
    if len(parts) <= 4:
        return "{ " + ", ".join(parts) + " }"
    return "{\n" + ",\n".join("    " + p for p in parts) + "\n}"


@dataclass
class OpDecl:
    name: str
    domain: list[str]
    codomain: str
    kind: str  # table | builtin | comp | primrec | murec
    rows: list[tuple[list[CharLit], CharLit]] = field(default_factory=list)
    builtin: str = ""
    params: list = field(default_factory=list)
    refs: list[str] = field(default_factory=list)
    loc: tuple[int, int] = (0, 0)

    def render(self) -> str:
        head = f"op {self.name} : {', '.join(self.domain)} -> {self.codomain} = "
        if self.kind == "table":
            return head + "table " + _render_rows(self.rows)
        if self.kind == "builtin":
            ps = ""
            if self.params:
                ps = "(" + ", ".join(str(p) if isinstance(p, int) else format_char(p) for p in self.params) + ")"
            return head + f"builtin {self.builtin}{ps}"
        return head + f"{self.kind}({', '.join(self.refs)})"


def _render_refs(refs) -> str:
    return ", ".join(n if s is None else f"{n}@{s}" for n, s in refs)


@dataclass
class TypeDecl:
    name: str
    alphabet: str
    ops: list[tuple[str, int | None]]
    loc: tuple[int, int] = (0, 0)

    def render(self) -> str:
        return f"type {self.name} = ({self.alphabet} ; {_render_refs(self.ops)})"


@dataclass
class RestrictDecl:
    name: str
    source: str
    members: list[CharLit] | None = None
    alphabet: str | None = None
    loc: tuple[int, int] = (0, 0)

    def render(self) -> str:
        alpha = self.alphabet if self.alphabet else "{ " + " ".join(map(format_char, self.members)) + " }"
        return f"restrict {self.name} from {self.source} alphabet {alpha}"


@dataclass
class ExtendDecl:
    name: str
    source: str
    members: list[CharLit] | None = None
    alphabet: str | None = None
    rows: list[tuple[list[CharLit], CharLit]] | None = None
    truncate: int | None = None
    default: CharLit | None = None
    ops: list[tuple[str, int | None]] | None = None
    loc: tuple[int, int] = (0, 0)

    def render(self) -> str:
        alpha = self.alphabet if self.alphabet else "{ " + " ".join(map(format_char, self.members)) + " }"
        if self.rows is not None:
            proj = _render_rows(self.rows)
        else:
            bits = []
            if self.truncate is not None:
                bits.append(f"truncate {self.truncate}")
            if self.default is not None:
                bits.append(f"default {format_char(self.default)}")
            proj = " ".join(bits)
        text = f"extend {self.name} from {self.source} alphabet {alpha} projection {proj}"
        if self.ops is not None:
            text += f" with {_render_refs(self.ops)}"
        return text


@dataclass
class ProductDecl:
    name: str
    factors: list[str]
    ops: list[str]
    loc: tuple[int, int] = (0, 0)

    def render(self) -> str:
        return f"product {self.name} = {' x '.join(self.factors)} with {', '.join(self.ops)}"


Decl = AlphabetDecl | NatDecl | OpDecl | TypeDecl | RestrictDecl | ExtendDecl | ProductDecl


# ---------------------------------------------------------------- parsing


class _Parser:
    def __init__(self, tokens: list[Token]) -> None:
        self.toks = tokens
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def next(self) -> Token:
        t = self.toks[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.kind in ("punct", "ident") and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise ParseError(f"expected {text!r}, found {self._show(self.tok)}", self.tok)
        return self.next()

    def ident(self, what: str = "name") -> str:
        if self.tok.kind != "ident":
            raise ParseError(f"expected {what}, found {self._show(self.tok)}", self.tok)
        return self.next().text

    def integer(self) -> int:
        if self.tok.kind != "int":
            raise ParseError(f"expected integer, found {self._show(self.tok)}", self.tok)
        return int(self.next().text)

    @staticmethod
    def _show(t: Token) -> str:
        return "end of file" if t.kind == "eof" else repr(t.text)

    def is_char_start(self) -> bool:
        return self.tok.kind in ("str", "int") or self.at("(")

    def char(self) -> CharLit:
        t = self.tok
        if t.kind in ("str", "int"):
            self.next()
            return (t.text,)
        if self.at("("):
            self.next()
            atoms = [self.atom()]
            while self.at(","):
                self.next()
                atoms.append(self.atom())
            self.expect(")")
            return tuple(atoms)
        raise ParseError(f"expected a character, found {self._show(t)}", t)

    def atom(self) -> str:
        t = self.tok
        if t.kind in ("str", "int"):
            self.next()
            return t.text
        raise ParseError(f"expected a quoted atom or integer, found {self._show(t)}", t)

    def char_set(self) -> list[CharLit]:
        self.expect("{")
        out = []
        while not self.at("}"):
            if self.at(","):
                self.next()
                continue
            out.append(self.char())
        self.expect("}")
        return out

    def rows(self) -> list[tuple[list[CharLit], CharLit]]:
        self.expect("{")
        rows = []
        while not self.at("}"):
            ins = [self.char()]
            while not self.at("->"):
                ins.append(self.char())
            self.expect("->")
            rows.append((ins, self.char()))
            if not self.at("}"):
                self.expect(",")
        self.expect("}")
        return rows

    def op_refs(self) -> list[tuple[str, int | None]]:
        refs = [self.op_ref()]
        while self.at(","):
            self.next()
            refs.append(self.op_ref())
        return refs

    def op_ref(self) -> tuple[str, int | None]:
        name = self.ident("operation name")
        if self.at("@"):
            self.next()
            return name, self.integer()
        return name, None

    def declaration(self) -> Decl:
        t = self.tok
        if t.kind != "ident" or t.text not in KEYWORDS:
            raise ParseError(f"expected a declaration ({', '.join(KEYWORDS)}), found {self._show(t)}", t)
        self.next()
        loc = (t.line, t.col)
        return getattr(self, "d_" + t.text)(loc)

    def d_alphabet(self, loc) -> AlphabetDecl:
        name = self.ident("alphabet name")
        self.expect("=")
        if self.at("{"):
            return AlphabetDecl(name, members=self.char_set(), loc=loc)
        factors = [self.ident("alphabet name")]
        if self.at("^"):
            self.next()
            return AlphabetDecl(name, factors=factors, power=self.integer(), loc=loc)
        if not self.at("x"):
            raise ParseError(f"expected '{{', 'x' or '^' in alphabet {name}", self.tok)
        while self.at("x"):
            self.next()
            factors.append(self.ident("alphabet name"))
        return AlphabetDecl(name, factors=factors, loc=loc)

    def d_nat(self, loc) -> NatDecl:
        name = self.ident("segment name")
        self.expect("bound")
        return NatDecl(name, self.integer(), loc)

    def d_op(self, loc) -> OpDecl:
        name = self.ident("operation name")
        self.expect(":")
        domain = [self.ident("alphabet name")]
        while self.at(","):
            self.next()
            domain.append(self.ident("alphabet name"))
        self.expect("->")
        codomain = self.ident("alphabet name")
        self.expect("=")
        kind = self.ident("'table', 'builtin', 'comp', 'primrec' or 'murec'")
        decl = OpDecl(name, domain, codomain, kind, loc=loc)
        if kind == "table":
            decl.rows = self.rows()
        elif kind == "builtin":
            decl.builtin = self.ident("builtin name")
            if self.at("("):
                self.next()
                while not self.at(")"):
                    if self.tok.kind == "int" and self.toks[self.i + 1].text in (",", ")"):
                        decl.params.append(int(self.next().text))
                    else:
                        decl.params.append(self.char())
                    if not self.at(")"):
                        self.expect(",")
                self.expect(")")
        elif kind in ("comp", "primrec", "murec"):
            self.expect("(")
            decl.refs.append(self.ident("operation name"))
            while self.at(","):
                self.next()
                decl.refs.append(self.ident("operation name"))
            self.expect(")")
        else:
            raise ParseError(f"unknown operation form {kind!r}", self.toks[self.i - 1])
        return decl

    def d_type(self, loc) -> TypeDecl:
        name = self.ident("type name")
        self.expect("=")
        self.expect("(")
        alpha = self.ident("alphabet name")
        self.expect(";")
        refs = self.op_refs()
        self.expect(")")
        return TypeDecl(name, alpha, refs, loc)

    def _alphabet_arg(self):
        self.expect("alphabet")
        if self.at("{"):
            return self.char_set(), None
        return None, self.ident("alphabet name")

    def d_restrict(self, loc) -> RestrictDecl:
        name = self.ident("type name")
        self.expect("from")
        source = self.ident("type name")
        members, alpha = self._alphabet_arg()
        return RestrictDecl(name, source, members, alpha, loc)

    def d_extend(self, loc) -> ExtendDecl:
        name = self.ident("type name")
        self.expect("from")
        source = self.ident("type name")
        members, alpha = self._alphabet_arg()
        decl = ExtendDecl(name, source, members, alpha, loc=loc)
        self.expect("projection")
        if self.at("{"):
            decl.rows = self.rows()
        else:
            if not (self.at("truncate") or self.at("default")):
                raise ParseError("expected a projection table, 'truncate' or 'default'", self.tok)
            if self.at("truncate"):
                self.next()
                decl.truncate = self.integer()
            if self.at("default"):
                self.next()
                decl.default = self.char()
        if self.at("with"):
            self.next()
            decl.ops = self.op_refs()
        return decl

    def d_product(self, loc) -> ProductDecl:
        name = self.ident("type name")
        self.expect("=")
        factors = [self.ident("type name")]
        while self.at("x"):
            self.next()
            factors.append(self.ident("type name"))
        self.expect("with")
        ops = [self.ident("operation name")]
        while self.at(","):
            self.next()
            ops.append(self.ident("operation name"))
        return ProductDecl(name, factors, ops, loc)

    def recover(self, start: int) -> None:
        """Skip to the next keyword that starts a line after the failed declaration's first token."""
        if self.i == start:
            self.next()
        while self.tok.kind != "eof" and not (
            self.tok.first_on_line and self.tok.kind == "ident" and self.tok.text in KEYWORDS
        ):
            self.next()


def parse_declarations(source: str, filename: str = "<input>") -> tuple[list[Decl], list[Diagnostic]]:
    try:
        tokens = tokenize(source)
    except ParseError as exc:
        t = exc.token
        return [], [Diagnostic("error", filename, t.line, t.col, exc.code, str(exc))]
    p = _Parser(tokens)
    decls: list[Decl] = []
    diags: list[Diagnostic] = []
    while p.tok.kind != "eof":
        start = p.i
        try:
            decls.append(p.declaration())
            if p.tok.kind != "eof" and not p.tok.first_on_line:
                raise ParseError(f"unexpected {p._show(p.tok)} after declaration", p.tok)
        except ParseError as exc:
            t = exc.token
            diags.append(Diagnostic("error", filename, t.line, t.col, exc.code, str(exc)))
            p.recover(start)
    return decls, diags


# ---------------------------------------------------------------- elaboration


@dataclass
class Workspace:
    filename: str = "<input>"
    declarations: list[Decl] = field(default_factory=list)
    alphabets: dict[str, Alphabet] = field(default_factory=dict)
    ops: dict[str, Operation] = field(default_factory=dict)
    types: dict[str, DataType] = field(default_factory=dict)
    graph: TypeGraph = field(default_factory=TypeGraph)
    source_map: dict[tuple[str, str], tuple[int, int]] = field(default_factory=dict)
    diagnostics: list[Diagnostic] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not any(d.severity == "error" for d in self.diagnostics)

    @property
    def elementary_ops(self) -> list[Operation]:
        return [op for op in self.ops.values() if op.is_elementary]

    @property
    def type_system(self) -> TypeSystem:
        return TypeSystem(list(self.alphabets.values()), self.elementary_ops, list(self.types.values()))

    @property
    def edges(self) -> tuple[SubtypeEdge, ...]:
        return self.graph.edges


class _Unresolved(Exception):
    pass


class _Poisoned(Exception):
    """Reference to a declaration that already failed; its diagnostic suffices."""


class _Elaborator:
    def __init__(self, ws: Workspace) -> None:
        self.ws = ws
        self.poisoned: set[tuple[str, str]] = set()

    def error(self, loc, code: str, message: str) -> None:
        self.ws.diagnostics.append(Diagnostic("error", self.ws.filename, loc[0], loc[1], code, message))

    def lookup(self, space: str, name: str):
        table = {"alphabet": self.ws.alphabets, "op": self.ws.ops, "type": self.ws.types}[space]
        if name in table:
            return table[name]
        if (space, name) in self.poisoned:
            raise _Poisoned(name)
        raise _Unresolved(f"unknown {space} {name!r}")

    def define(self, space: str, name: str, value, loc) -> None:
        table = {"alphabet": self.ws.alphabets, "op": self.ws.ops, "type": self.ws.types}[space]
        if name in table:
            raise SignatureMismatch(f"{space} {name!r} is already defined")
        table[name] = value
        self.ws.source_map[(space, name)] = loc

    def run(self, decl: Decl) -> None:
        space = {
            AlphabetDecl: "alphabet", NatDecl: "alphabet", OpDecl: "op",
        }.get(type(decl), "type")
        try:
            getattr(self, "e_" + type(decl).__name__)(decl)
        except _Poisoned:
            self.poisoned.add((space, decl.name))
        except _Unresolved as exc:
            self.poisoned.add((space, decl.name))
            self.error(decl.loc, "UnresolvedName", str(exc))
        except SubtypeRejected as exc:
            self.poisoned.add((space, decl.name))
            laws = exc.report.failed_checks()
            detail = "; ".join(
                f"{c.name}: {c.counterexamples[0]}" + (f" (+{len(c.counterexamples) - 1} more)" if len(c.counterexamples) > 1 else "")
                for c in laws
            )
            self.error(decl.loc, exc.code, f"{exc}: violated {', '.join(c.name for c in laws)} -- {detail}")
        except DatumError as exc:
            self.poisoned.add((space, decl.name))
            code = "DuplicateName" if "already defined" in str(exc) else exc.code
            self.error(decl.loc, code, str(exc))

    def e_AlphabetDecl(self, d: AlphabetDecl) -> None:
        if d.members is not None:
            alpha = Alphabet(d.name, d.members)
        else:
            factors = [self.lookup("alphabet", f) for f in d.factors]
            if d.power is not None:
                if d.power < 1:
                    raise SignatureMismatch(f"alphabet {d.name}: power must be at least 1")
                factors = factors * d.power
            alpha = product_alphabet(d.name, factors)
        self.define("alphabet", d.name, alpha, d.loc)

    def e_NatDecl(self, d: NatDecl) -> None:
        self.define("alphabet", d.name, NatSegment(d.bound, d.name), d.loc)

    def e_OpDecl(self, d: OpDecl) -> None:
        domain = [self.lookup("alphabet", a) for a in d.domain]
        codomain = self.lookup("alphabet", d.codomain)
        if d.kind == "table":
            rows = {}
            for ins, out in d.rows:
                key = tuple(ins)
                if key in rows:
                    raise SignatureMismatch(f"{d.name}: input {' '.join(map(format_char, ins))} listed twice")
                rows[key] = out
            op = table_op(d.name, domain, codomain, rows)
        elif d.kind == "builtin":
            op = builtin_op(d.name, domain, codomain, d.builtin, *d.params)
        else:
            refs = [self.lookup("op", r) for r in d.refs]
            if d.kind == "comp":
                if len(refs) < 2:
                    raise SignatureMismatch(f"{d.name}: comp needs an outer and at least one inner operation")
                op = compose(refs[0], refs[1:], name=d.name)
            elif d.kind == "primrec":
                if len(refs) != 2:
                    raise SignatureMismatch(f"{d.name}: primrec takes exactly two operations")
                op = prim_rec(refs[0], refs[1], name=d.name)
            else:
                if len(refs) != 1:
                    raise SignatureMismatch(f"{d.name}: murec takes exactly one operation")
                op = mu_rec(refs[0], name=d.name)
            same = len(op.domain) == len(domain) and all(
                a.same_members(b) for a, b in zip(op.domain, domain)
            ) and op.codomain.same_members(codomain)
            if not same:
                raise SignatureMismatch(
                    f"{d.name} is declared {' x '.join(d.domain)} -> {d.codomain} but its rule gives {op.signature()}"
                )
        self.define("op", d.name, op, d.loc)

    def _witness(self, refs, alphabet: Alphabet, type_name: str) -> list[CurriedOp]:
        out = []
        for name, slot in refs:
            op = self.lookup("op", name)
            if slot is None:
                found = curry_over([op], alphabet)
                if not found:
                    raise SignatureMismatch(f"type {type_name}: {name} has no slot over {alphabet.name}")
                out.extend(found)
            else:
                out.append(curry(op, slot))
        return out

    def e_TypeDecl(self, d: TypeDecl) -> None:
        alpha = self.lookup("alphabet", d.alphabet)
        t = make_type(d.name, alpha, self._witness(d.ops, alpha, d.name))
        self._add_type(t, d.loc)

    def _add_type(self, t: DataType, loc, edge: SubtypeEdge | None = None) -> None:
        self.define("type", t.name, t, loc)
        self.ws.graph = self.ws.graph.add_node(t)
        if edge is not None:
            self.ws.graph = add_edge(self.ws.graph, edge)

    def _alphabet_of(self, d) -> Alphabet:
        if d.alphabet is not None:
            return self.lookup("alphabet", d.alphabet)
        alpha = Alphabet(d.name, d.members)
        if d.name not in self.ws.alphabets:
            self.define("alphabet", d.name, alpha, d.loc)
        return alpha

    def e_RestrictDecl(self, d: RestrictDecl) -> None:
        source = self.lookup("type", d.source)
        if d.name in self.ws.types:
            raise SignatureMismatch(f"type {d.name!r} is already defined")
        sub = self._alphabet_of(d)
        t, edge = derive_restriction(source, d.name, sub)
        self._add_type(t, d.loc, edge)

    def e_ExtendDecl(self, d: ExtendDecl) -> None:
        source = self.lookup("type", d.source)
        if d.name in self.ws.types:
            raise SignatureMismatch(f"type {d.name!r} is already defined")
        ext = self._alphabet_of(d)
        if d.rows is not None:
            mapping = {}
            for ins, out in d.rows:
                if len(ins) != 1:
                    raise SignatureMismatch(f"{d.name}: projection rows take exactly one character")
                mapping[ins[0]] = out
            proj = make_projection(ext, source.alphabet, mapping)
        else:
            proj = make_projection(ext, source.alphabet, truncate=d.truncate, default=d.default)
        ops = self._witness(d.ops, ext, d.name) if d.ops is not None else None
        t, edge = derive_extension(source, d.name, ext, proj, ops)
        self._add_type(t, d.loc, edge)

    def e_ProductDecl(self, d: ProductDecl) -> None:
        factors = [self.lookup("type", f) for f in d.factors]
        ops = [self.lookup("op", o) for o in d.ops]
        t = product_type(d.name, ProductSpec(factors, ops))
        self._add_type(t, d.loc)


def elaborate(decls: list[Decl], filename: str = "<input>", diagnostics=()) -> Workspace:
    ws = Workspace(filename=filename, declarations=list(decls), diagnostics=list(diagnostics))
    el = _Elaborator(ws)
    for d in decls:
        el.run(d)
    return ws


def parse(source: str, filename: str = "<input>") -> Workspace:
    """Parse and elaborate; problems end up in ``Workspace.diagnostics``."""
    decls, diags = parse_declarations(source, filename)
    return elaborate(decls, filename, diags)


def parse_file(path) -> Workspace:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read(), str(path))


def dump(ws: Workspace) -> str:
    """Canonical source text for the workspace's declarations."""
    return "".join(d.render() + "\n" for d in ws.declarations)


def parse_char(text: str) -> Character:
    """Parse one character literal such as ``'a'``, ``3`` or ``(0,1)``."""
    p = _Parser(tokenize(text))
    c = p.char()
    if p.tok.kind != "eof":
        raise ParseError(f"trailing input after character: {p._show(p.tok)}", p.tok)
    return c


def fingerprint(ws: Workspace) -> dict:
    """Extensional summary used to compare workspaces."""
    return {
        "alphabets": {n: a.member_set for n, a in ws.alphabets.items()},
        "ops": {n: (tuple(a.member_set for a in op.domain), op.codomain.member_set, extension(op))
                for n, op in ws.ops.items()},
        "types": {n: (t.alphabet.member_set, frozenset(curried_fingerprint(c) for c in t.ops))
                  for n, t in ws.types.items()},
        "edges": sorted(
            (e.kind, e.sub.name, e.super.name,
             tuple(sorted(e.projection.mapping.items())) if e.projection else ())
            for e in ws.edges
        ),
        "diagnostics": [(d.code, d.line, d.col) for d in ws.diagnostics],
    }
