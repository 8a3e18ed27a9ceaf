"""Type graphs with R- and P-edges.

Edges point sub -> super.  ``detect_cycles`` works on the graph whose
nodes are types up to extensional equality, so two separately declared but
equal types count as one node.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field, replace
from typing import Sequence

import networkx as nx

from .errors import DuplicateEdge, UnknownNode, UnsupportedFormat, UnverifiedEdge
from .kernel import Character, as_char
from .report import Check, VerificationReport
from .subtyping import (
    P,
    R,
    SubtypeEdge,
    cast,
    check_contains_restricted,
    check_substitutability,
    compose_projections,
    make_edge,
    make_projection,
    validate_projection,
)
from .typesys import DataType, extensionally_equal


@dataclass(frozen=True)
class TypeGraph:
    nodes: tuple[DataType, ...] = ()
    edges: tuple[SubtypeEdge, ...] = ()

    def node(self, name: str) -> DataType:
        for t in self.nodes:
            if t.name == name:
                return t
        raise UnknownNode(f"no type named {name!r} in the graph")

    def has_node(self, t: DataType | str) -> bool:
        name = t if isinstance(t, str) else t.name
        return any(n.name == name for n in self.nodes)

    def add_node(self, t: DataType) -> "TypeGraph":
        if self.has_node(t):
            return self
        return replace(self, nodes=self.nodes + (t,))

    def add_edge(self, e: SubtypeEdge) -> "TypeGraph":
        return add_edge(self, e)

    def out_edges(self, name: str, kind: str | None = None) -> list[SubtypeEdge]:
        return sorted(
            (e for e in self.edges if e.sub.name == name and (kind is None or e.kind == kind)),
            key=lambda e: e.name,
        )


def add_edge(g: TypeGraph, e: SubtypeEdge, *, require_verified: bool = True) -> TypeGraph:
    """Add a verified edge; ``require_verified=False`` admits forged edges for testing."""
    for t in (e.sub, e.super):
        if not g.has_node(t):
            raise UnknownNode(f"{t.name} is not a node of the graph")
    if require_verified and not e.verified:
        raise UnverifiedEdge(f"{e.name} failed verification")
    if any(x.kind == e.kind and x.sub.name == e.sub.name and x.super.name == e.super.name for x in g.edges):
        raise DuplicateEdge(f"{e.name} already present")
    return replace(g, edges=g.edges + (e,))


def build_graph(types: Sequence[DataType], edges: Sequence[SubtypeEdge] = ()) -> TypeGraph:
    g = TypeGraph()
    for t in types:
        g = g.add_node(t)
    for e in edges:
        g = add_edge(g, e)
    return g


# ---------------------------------------------------------------- order


def _reach_paths(g: TypeGraph, kind: str, start: str) -> dict[str, list[SubtypeEdge]]:
    """Shortest single-kind edge path from ``start`` to every reachable node."""
    paths: dict[str, list[SubtypeEdge]] = {start: []}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for e in g.out_edges(u, kind):
            v = e.super.name
            if v not in paths:
                paths[v] = paths[u] + [e]
                queue.append(v)
    return paths


def _composite(path: list[SubtypeEdge]) -> SubtypeEdge:
    first, last = path[0], path[-1]
    if first.kind == R:
        return make_edge(R, first.sub, last.super)
    proj = first.projection
    for e in path[1:]:
        proj = compose_projections(proj, e.projection)
    return make_edge(P, first.sub, last.super, proj)


def verify_order(g: TypeGraph, kind: str) -> VerificationReport:
    """Reflexivity, transitivity and antisymmetry (up to type equality) of one edge kind.

    The relation is reported as a preorder; antisymmetry only holds
    modulo extensional equality of types.
    """
    report = VerificationReport(f"{kind}-order", details={"relation": "preorder"})

    refl = []
    for t in g.nodes:
        if kind == R:
            ok = check_contains_restricted(t, t.alphabet).passed
        else:
            ident = make_projection(t.alphabet, t.alphabet, {})
            ok = validate_projection(ident).passed and make_edge(P, t, t, ident).verified
        if not ok:
            refl.append(f"{t.name} is not related to itself")
    report.add(Check("reflexivity", len(g.nodes), refl))

    trans, pairs = [], 0
    reach = {t.name: _reach_paths(g, kind, t.name) for t in g.nodes}
    for a, targets in sorted(reach.items()):
        for c, path in sorted(targets.items()):
            if len(path) < 2:
                continue
            pairs += 1
            composite = _composite(path)
            if not composite.verified:
                failed = ", ".join(ch.name for ch in composite.report.failed_checks())
                trans.append(f"{' . '.join(e.name for e in path)} does not compose ({failed})")
    report.add(Check("transitivity", pairs, trans))

    anti, mutual = [], 0
    names = sorted(reach)
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            if b in reach[a] and a in reach[b]:
                mutual += 1
                if not extensionally_equal(g.node(a), g.node(b)):
                    anti.append(f"{a} and {b} are mutually related but not equal")
    report.add(Check("antisymmetry modulo equality", mutual, anti))
    return report


# ---------------------------------------------------------------- cycles


def equality_classes(g: TypeGraph) -> dict[str, str]:
    """Map each node name to the label of its extensional-equality class."""
    classes: list[list[DataType]] = []
    for t in sorted(g.nodes, key=lambda t: t.name):
        for cls in classes:
            if extensionally_equal(cls[0], t):
                cls.append(t)
                break
        else:
            classes.append([t])
    label = {}
    for cls in classes:
        name = "=".join(t.name for t in cls)
        for t in cls:
            label[t.name] = name
    return label


def detect_cycles(g: TypeGraph, *, merge_equal: bool = True) -> list[list[str]]:
    """Elementary cycles over both edge kinds, each rotated to start at its smallest node."""
    label = equality_classes(g) if merge_equal else {t.name: t.name for t in g.nodes}
    dg = nx.DiGraph()
    dg.add_nodes_from(sorted(set(label.values())))
    for e in g.edges:
        u, v = label[e.sub.name], label[e.super.name]
        if u != v:
            dg.add_edge(u, v)
    cycles = []
    for cyc in nx.simple_cycles(dg):
        k = cyc.index(min(cyc))
        cycles.append(cyc[k:] + cyc[:k])
    return sorted(cycles, key=lambda c: (len(c), c))


def check_dimension_acyclicity(g: TypeGraph) -> VerificationReport:
    """If every P-edge adds dimensions, the graph has no cycles."""
    report = VerificationReport("dimension acyclicity")
    same_dim = [e.name for e in g.edges if e.kind == P and e.sub.alphabet.dimension <= e.super.alphabet.dimension]
    p_edges = sum(1 for e in g.edges if e.kind == P)
    hypothesis = not same_dim
    report.details["hypothesis_held"] = hypothesis
    if not hypothesis:
        report.details["conclusion_held"] = None
        report.add(Check("no cycles", len(g.nodes), skipped=True,
                         note=f"hypothesis not met: {', '.join(same_dim)} keep(s) the dimension"))
        return report
    cycles = detect_cycles(g)
    report.details["conclusion_held"] = not cycles
    report.add(Check("dimension-increasing P-edges", p_edges))
    report.add(Check("no cycles", len(g.nodes), [" -> ".join(c) for c in cycles]))
    return report


# ---------------------------------------------------------------- paths


@dataclass(frozen=True)
class CastPath:
    steps: tuple[SubtypeEdge, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        for a, b in zip(self.steps, self.steps[1:]):
            assert a.super.name == b.sub.name, "cast path steps do not chain"

    def apply(self, c) -> Character:
        c = as_char(c)
        for e in self.steps:
            c = cast(c, e)
        return c

    def describe(self) -> str:
        if not self.steps:
            return "(empty path)"
        parts = [self.steps[0].sub.name]
        for e in self.steps:
            parts.append(f"-{e.kind}-> {e.super.name}")
        return " ".join(parts)


def find_cast_path(g: TypeGraph, source: DataType | str, target: DataType | str,
                   kind: str | None = None) -> CastPath | None:
    """Shortest sub -> super path; ties go to the lexicographically smaller edge name."""
    s = g.node(source if isinstance(source, str) else source.name).name
    t = g.node(target if isinstance(target, str) else target.name).name
    prev: dict[str, SubtypeEdge | None] = {s: None}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        if u == t:
            break
        for e in g.out_edges(u, kind):
            v = e.super.name
            if v not in prev:
                prev[v] = e
                queue.append(v)
    if t not in prev:
        return None
    steps = []
    node = t
    while prev[node] is not None:
        e = prev[node]
        steps.append(e)
        node = e.sub.name
    return CastPath(tuple(reversed(steps)))


# ---------------------------------------------------------------- export


def graph_shape(g: TypeGraph) -> dict:
    return {
        "nodes": [
            {"name": t.name, "dimension": t.alphabet.dimension, "size": len(t.alphabet)}
            for t in sorted(g.nodes, key=lambda t: t.name)
        ],
        "edges": [
            {"kind": e.kind, "sub": e.sub.name, "super": e.super.name}
            for e in sorted(g.edges, key=lambda e: (e.sub.name, e.super.name, e.kind))
        ],
    }


def _dot_id(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_graph(g: TypeGraph, fmt: str = "dot") -> str:
    fmt = fmt.lower()
    shape = graph_shape(g)
    if fmt == "json":
        return json.dumps(shape, indent=2, sort_keys=True) + "\n"
    if fmt != "dot":
        raise UnsupportedFormat(f"unsupported graph format {fmt!r} (use dot or json)")
    lines = ["digraph types {", "  rankdir=BT;"]
    for n in shape["nodes"]:
        lines.append(f'  {_dot_id(n["name"])} [label="{n["name"]}\\ndim {n["dimension"]}, {n["size"]} chars"];')
    for e in shape["edges"]:
        style = "solid" if e["kind"] == R else "dashed"
        lines.append(f'  {_dot_id(e["sub"])} -> {_dot_id(e["super"])} [style={style}, label="{e["kind"]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_from_json(text: str) -> dict:
    """Parse the JSON export back into its node/edge shape (validated)."""
    data = json.loads(text)
    nodes = [{"name": str(n["name"]), "dimension": int(n["dimension"]), "size": int(n["size"])}
             for n in data["nodes"]]
    names = {n["name"] for n in nodes}
    edges = []
    for e in data["edges"]:
        if e["kind"] not in (R, P):
            raise UnsupportedFormat(f"unknown edge kind {e['kind']!r}")
        if e["sub"] not in names or e["super"] not in names:
            raise UnknownNode(f"edge {e['sub']} -> {e['super']} references an unknown node")
        edges.append({"kind": e["kind"], "sub": e["sub"], "super": e["super"]})
    return {"nodes": nodes, "edges": edges}


def verify_graph(g: TypeGraph) -> list[VerificationReport]:
    """Re-run every edge's substitutability check (plus projection laws for P-edges)."""
    out = []
    for e in sorted(g.edges, key=lambda e: e.name):
        rep = check_substitutability(e)
        if e.kind == P:
            rep = validate_projection(e.projection).merge(rep)
            rep.subject = e.name
        out.append(rep)
    return out
