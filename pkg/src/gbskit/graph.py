"""Serre graphs, GBS graphs and root-decorated graph-of-groups documents.

A graph follows Serre's conventions: every geometric edge appears as a pair
of oriented edges ``e`` and ``reverse(e)``, and only the initial vertex is
stored (``terminal(e) = initial(reverse(e))``).

Documents in the ``gogspec-v1`` format are JSON objects::

    {"format": "gogspec-v1",
     "vertices": [{"id": "a", "kind": "cyclic"}],
     "edges": [{"id": "t", "from": "a", "to": "a",
                "from_root": "a", "from_exp": 2,
                "to_root": "a", "to_exp": 4}]}

Each edge record defines the oriented edge ``t`` and its reverse ``t'``.
``from_exp`` is the label of ``t'`` (read at the initial vertex) and
``to_exp`` the label of ``t`` (read at the terminal vertex), so the record
above is the relation ``a^2 t = t a^4``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Mapping, NamedTuple

from .errors import (
    BadInvolution,
    BadRoots,
    NonRootAttachment,
    SpecError,
    SpecSyntaxError,
    UnknownSymbol,
    ZeroLabel,
)

FORMAT = "gogspec-v1"
CYCLIC = "cyclic"
GENERAL = "general"


def sort_key(x: Hashable):
    """Deterministic ordering key for vertex and edge identifiers."""
    key = getattr(x, "sort_key", None)
    if callable(key):
        return key()
    return (str(x),)


def reverse_name(edge_id: str) -> str:
    return edge_id + "'"


class SerreGraph:
    """Finite graph with an orientation-reversing involution on edges."""

    def __init__(self, vertices: Iterable, edges: Iterable, reverse: Mapping, initial: Mapping):
        self.vertices = tuple(vertices)
        self.edges = tuple(edges)
        self._reverse = dict(reverse)
        self._initial = dict(initial)
        self._vertex_set = frozenset(self.vertices)
        self._incoming: dict = {v: [] for v in self.vertices}
        self._outgoing: dict = {v: [] for v in self.vertices}
        for e in self.edges:
            rev = self._reverse.get(e)
            if self._initial.get(e) in self._outgoing:
                self._outgoing[self._initial[e]].append(e)
            if rev is not None and self._initial.get(rev) in self._incoming:
                self._incoming[self._initial[rev]].append(e)

    def reverse(self, e):
        return self._reverse[e]

    def initial(self, e):
        return self._initial[e]

    def terminal(self, e):
        return self._initial[self._reverse[e]]

    def has_vertex(self, v) -> bool:
        return v in self._vertex_set

    def has_edge(self, e) -> bool:
        return e in self._initial

    def incoming(self, v) -> tuple:
        """Oriented edges whose terminal vertex is ``v``."""
        return tuple(self._incoming.get(v, ()))

    def outgoing(self, v) -> tuple:
        return tuple(self._outgoing.get(v, ()))

    def geometric_edges(self) -> tuple:
        """One representative per pair {e, reverse(e)}: whichever is listed first."""
        seen = set()
        reps = []
        for e in self.edges:
            if e in seen:
                continue
            reps.append(e)
            seen.add(e)
            seen.add(self._reverse.get(e))
        return tuple(reps)

    def problems(self) -> list[tuple[str, Any, str]]:
        out = []
        if len(set(self.edges)) != len(self.edges):
            out.append(("BadInvolution", None, "duplicate edge identifiers"))
        for e in self.edges:
            rev = self._reverse.get(e)
            if rev is None or rev not in self._initial:
                out.append(("BadInvolution", e, f"edge {e!r} has no reverse"))
            elif rev == e:
                out.append(("BadInvolution", e, f"edge {e!r} is its own reverse"))
            elif self._reverse.get(rev) != e:
                out.append(("BadInvolution", e, f"reverse of reverse of {e!r} is not {e!r}"))
            if self._initial.get(e) not in self._vertex_set:
                out.append(("UnknownSymbol", e, f"edge {e!r} starts at an undeclared vertex"))
        return out

    def __eq__(self, other):
        if not isinstance(other, SerreGraph):
            return NotImplemented
        return (
            set(self.vertices) == set(other.vertices)
            and self._reverse == other._reverse
            and self._initial == other._initial
        )

    def __hash__(self):
        return hash((frozenset(self.vertices), frozenset(self.edges)))

    def __repr__(self):
        return f"SerreGraph({len(self.vertices)} vertices, {len(self.edges)} oriented edges)"


class GBSGraph:
    """A Serre graph with a nonzero integer label on every oriented edge.

    ``label(e)`` is the exponent seen at ``terminal(e)``; the defining
    relation of the edge is ``x_{initial(e)}^{label(reverse(e))} e = e x_{terminal(e)}^{label(e)}``.
    """

    def __init__(self, graph: SerreGraph, label: Mapping):
        self.graph = graph
        self._label = {e: int(n) for e, n in label.items()}

    @classmethod
    def build(cls, vertices: Iterable, edges: Iterable[tuple]) -> "GBSGraph":
        """Build from records ``(edge_id, from, to, from_label, to_label)``.

        The reverse of ``edge_id`` is named ``edge_id + "'"``.
        """
        vertices = list(vertices)
        edge_ids, reverse, initial, label = [], {}, {}, {}
        for name, u, v, a, b in edges:
            rev = reverse_name(name)
            edge_ids += [name, rev]
            reverse[name], reverse[rev] = rev, name
            initial[name], initial[rev] = u, v
            label[name], label[rev] = b, a
        return cls(SerreGraph(vertices, edge_ids, reverse, initial), label)

    @property
    def vertices(self) -> tuple:
        return self.graph.vertices

    @property
    def edges(self) -> tuple:
        return self.graph.edges

    def reverse(self, e):
        return self.graph.reverse(e)

    def initial(self, e):
        return self.graph.initial(e)

    def terminal(self, e):
        return self.graph.terminal(e)

    def label(self, e) -> int:
        return self._label[e]

    def incoming(self, v) -> tuple:
        return self.graph.incoming(v)

    def outgoing(self, v) -> tuple:
        return self.graph.outgoing(v)

    def has_vertex(self, v) -> bool:
        return self.graph.has_vertex(v)

    def has_edge(self, e) -> bool:
        return self.graph.has_edge(e)

    def geometric_edges(self) -> tuple:
        return self.graph.geometric_edges()

    def is_loop(self, e) -> bool:
        return self.initial(e) == self.terminal(e)

    def induced(self, vertices: Iterable) -> "GBSGraph":
        """Subgraph spanned by ``vertices`` and every edge between them."""
        keep = set(vertices)
        verts = [v for v in self.vertices if v in keep]
        edges = [e for e in self.edges if self.initial(e) in keep and self.terminal(e) in keep]
        return GBSGraph(
            SerreGraph(verts, edges, {e: self.reverse(e) for e in edges}, {e: self.initial(e) for e in edges}),
            {e: self._label[e] for e in edges},
        )

    def problems(self) -> list[tuple[str, Any, str]]:
        out = self.graph.problems()
        for e in self.edges:
            if self._label.get(e, 0) == 0:
                out.append(("ZeroLabel", e, f"edge {e!r} has label 0 or no label"))
        return out

    def edge_records(self) -> list[tuple]:
        """``(id, from, to, from_label, to_label)`` per geometric edge."""
        return [
            (e, self.initial(e), self.terminal(e), self.label(self.reverse(e)), self.label(e))
            for e in self.geometric_edges()
        ]

    def __eq__(self, other):
        if not isinstance(other, GBSGraph):
            return NotImplemented
        return self.graph == other.graph and self._label == other._label

    def __hash__(self):
        return hash(self.graph)

    def __repr__(self):
        return f"GBSGraph(vertices={list(self.vertices)!r}, edges={self.edge_records()!r})"


@dataclass(frozen=True)
class Root:
    id: str
    vertex: str


@dataclass(frozen=True, eq=False)
class GraphOfGroupsSpec:
    """Graph of groups with cyclic edge groups and opaque vertex groups.

    Only the declared roots of each vertex group are visible. Every oriented
    edge ``e`` is glued into ``terminal(e)`` on the power
    ``attach_root(e) ** attach_exp(e)``.
    """

    graph: SerreGraph
    vertex_kind: Mapping[str, str]
    roots: Mapping[str, tuple[Root, ...]]
    attach_root: Mapping[str, str]
    attach_exp: Mapping[str, int]
    meta: Mapping[str, Any] = field(default_factory=dict)

    def all_roots(self) -> list[Root]:
        return [r for v in self.graph.vertices for r in self.roots.get(v, ())]

    def root(self, root_id: str) -> Root:
        for r in self.all_roots():
            if r.id == root_id:
                return r
        raise KeyError(root_id)

    def cyclic_roots(self) -> list[Root]:
        return [r for r in self.all_roots() if self.vertex_kind[r.vertex] == CYCLIC]

    def noncyclic_roots(self) -> list[Root]:
        return [r for r in self.all_roots() if self.vertex_kind[r.vertex] != CYCLIC]

    def is_gbs(self) -> bool:
        return all(k == CYCLIC for k in self.vertex_kind.values())

    def __eq__(self, other):
        if not isinstance(other, GraphOfGroupsSpec):
            return NotImplemented
        return (
            self.graph == other.graph
            and dict(self.vertex_kind) == dict(other.vertex_kind)
            and {v: tuple(rs) for v, rs in self.roots.items()} == {v: tuple(rs) for v, rs in other.roots.items()}
            and dict(self.attach_root) == dict(other.attach_root)
            and dict(self.attach_exp) == dict(other.attach_exp)
        )

    __hash__ = None


class Violation(NamedTuple):
    kind: str
    ident: Any
    message: str

    def __str__(self):
        return f"{self.kind}({self.ident}): {self.message}"


_ERRORS = {
    "SyntaxError": SpecSyntaxError,
    "ZeroLabel": ZeroLabel,
    "UnknownSymbol": UnknownSymbol,
    "BadInvolution": BadInvolution,
    "NonRootAttachment": NonRootAttachment,
    "BadRoots": BadRoots,
}


def validate(spec: GraphOfGroupsSpec) -> list[Violation]:
    """Every violated invariant of ``spec``; an empty list means valid."""
    g = spec.graph
    out = [Violation(*p) for p in g.problems()]

    root_owner: dict[str, str] = {}
    for v in g.vertices:
        kind = spec.vertex_kind.get(v)
        if kind not in (CYCLIC, GENERAL):
            out.append(Violation("UnknownSymbol", v, f"vertex {v!r} has unknown kind {kind!r}"))
        rs = tuple(spec.roots.get(v, ()))
        if kind == CYCLIC and len(rs) != 1:
            out.append(Violation("BadRoots", v, f"cyclic vertex {v!r} must own exactly one root"))
        if kind == GENERAL and not rs:
            out.append(Violation("BadRoots", v, f"general vertex {v!r} must own at least one root"))
        for r in rs:
            if r.vertex != v:
                out.append(Violation("BadRoots", r.id, f"root {r.id!r} is listed at {v!r} but owned by {r.vertex!r}"))
            if r.id in root_owner:
                out.append(Violation("BadRoots", r.id, f"root id {r.id!r} declared twice"))
            root_owner[r.id] = v
    for v in spec.roots:
        if not g.has_vertex(v):
            out.append(Violation("UnknownSymbol", v, f"roots declared for undeclared vertex {v!r}"))

    edge_names = set(g.edges)
    for name in sorted(edge_names & (set(root_owner) | set(g.vertices))):
        out.append(Violation("UnknownSymbol", name, f"edge id {name!r} clashes with a vertex or root id"))

    for e in g.edges:
        exp = spec.attach_exp.get(e)
        if not isinstance(exp, int) or isinstance(exp, bool) or exp == 0:
            out.append(Violation("ZeroLabel", e, f"edge {e!r} is attached with exponent {exp!r}"))
        rid = spec.attach_root.get(e)
        if rid not in root_owner:
            out.append(Violation("UnknownSymbol", e, f"edge {e!r} attaches to undeclared root {rid!r}"))
            continue
        try:
            term = g.terminal(e)
        except KeyError:
            continue
        if root_owner[rid] != term:
            out.append(
                Violation("NonRootAttachment", e, f"edge {e!r} ends at {term!r} but root {rid!r} lives at {root_owner[rid]!r}")
            )
    return out


def _fail(kind: str, ident, message: str):
    raise _ERRORS.get(kind, SpecError)(message, ident)


def _parse_int(value, where: str) -> int:
    if isinstance(value, bool):
        _fail("SyntaxError", where, f"{where}: expected an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        s = value.strip()
        body = s[1:] if s[:1] in "+-" else s
        if body.isdigit():
            return int(s)
    _fail("SyntaxError", where, f"{where}: expected a decimal integer, got {value!r}")


def _require(obj: Mapping, key: str, where: str):
    if key not in obj:
        _fail("SyntaxError", where, f"{where}: missing field {key!r}")
    return obj[key]


def build_spec(doc: Mapping) -> GraphOfGroupsSpec:
    """Turn a decoded gogspec-v1 object into a GraphOfGroupsSpec without checking invariants."""
    if not isinstance(doc, Mapping):
        _fail("SyntaxError", None, "document must be a JSON object")
    if doc.get("format") != FORMAT:
        _fail("SyntaxError", "format", f"expected format {FORMAT!r}, got {doc.get('format')!r}")
    vertices = _require(doc, "vertices", "document")
    edges = doc.get("edges", [])
    if not isinstance(vertices, list) or not isinstance(edges, list):
        _fail("SyntaxError", None, "'vertices' and 'edges' must be lists")

    vids, kinds, roots = [], {}, {}
    for i, rec in enumerate(vertices):
        where = f"vertices[{i}]"
        if not isinstance(rec, Mapping):
            _fail("SyntaxError", where, f"{where} must be an object")
        vid = _require(rec, "id", where)
        if not isinstance(vid, str) or not vid:
            _fail("SyntaxError", where, f"{where}: id must be a nonempty string")
        kind = rec.get("kind", CYCLIC)
        if vid in kinds:
            _fail("SyntaxError", vid, f"vertex {vid!r} declared twice")
        vids.append(vid)
        kinds[vid] = kind
        declared = rec.get("roots")
        if declared is None:
            declared = [vid] if kind == CYCLIC else []
        if not isinstance(declared, list) or not all(isinstance(r, str) and r for r in declared):
            _fail("SyntaxError", where, f"{where}: roots must be a list of strings")
        roots[vid] = tuple(Root(r, vid) for r in declared)

    edge_ids, reverse, initial, attach_root, attach_exp = [], {}, {}, {}, {}
    for i, rec in enumerate(edges):
        where = f"edges[{i}]"
        if not isinstance(rec, Mapping):
            _fail("SyntaxError", where, f"{where} must be an object")
        eid = _require(rec, "id", where)
        if not isinstance(eid, str) or not eid:
            _fail("SyntaxError", where, f"{where}: id must be a nonempty string")
        rev = reverse_name(eid)
        for name in (eid, rev):
            if name in initial:
                _fail("BadInvolution", name, f"oriented edge {name!r} defined twice")
        u = _require(rec, "from", where)
        v = _require(rec, "to", where)
        if u not in kinds or v not in kinds:
            _fail("UnknownSymbol", eid, f"edge {eid!r} references an undeclared vertex")
        edge_ids += [eid, rev]
        reverse[eid], reverse[rev] = rev, eid
        initial[eid], initial[rev] = u, v
        attach_root[eid] = rec.get("to_root", v if kinds[v] == CYCLIC else None)
        attach_root[rev] = rec.get("from_root", u if kinds[u] == CYCLIC else None)
        attach_exp[eid] = _parse_int(_require(rec, "to_exp", where), f"{where}.to_exp")
        attach_exp[rev] = _parse_int(_require(rec, "from_exp", where), f"{where}.from_exp")

    meta = {k: doc[k] for k in ("name", "description") if k in doc}
    return GraphOfGroupsSpec(SerreGraph(vids, edge_ids, reverse, initial), kinds, roots, attach_root, attach_exp, meta)


def load_document(text: str) -> Mapping:
    try:
        return json.loads(text)
    except (json.JSONDecodeError, TypeError) as exc:
        raise SpecSyntaxError(f"malformed JSON: {exc}") from exc


def parse_spec(text: str) -> GraphOfGroupsSpec:
    """Parse and validate a gogspec-v1 document; raises the first violation."""
    spec = build_spec(load_document(text))
    problems = validate(spec)
    if problems:
        p = problems[0]
        _fail(p.kind, p.ident, str(p))
    return spec


def serialize_spec(spec: GraphOfGroupsSpec) -> str:
    g = spec.graph
    vertices = []
    for v in g.vertices:
        rec: dict[str, Any] = {"id": v, "kind": spec.vertex_kind[v]}
        if spec.vertex_kind[v] != CYCLIC:
            rec["roots"] = [r.id for r in spec.roots[v]]
        elif spec.roots[v][0].id != v:
            rec["roots"] = [spec.roots[v][0].id]
        vertices.append(rec)
    edges = []
    for e in g.geometric_edges():
        rev = g.reverse(e)
        edges.append(
            {
                "id": e,
                "from": g.initial(e),
                "to": g.terminal(e),
                "from_root": spec.attach_root[rev],
                "from_exp": spec.attach_exp[rev],
                "to_root": spec.attach_root[e],
                "to_exp": spec.attach_exp[e],
            }
        )
    doc = {"format": FORMAT, **dict(spec.meta), "vertices": vertices, "edges": edges}
    return json.dumps(doc, indent=2)


def gbs_graph_of(spec: GraphOfGroupsSpec) -> GBSGraph:
    """The labelled graph of a document whose vertices are all cyclic."""
    if not spec.is_gbs():
        raise SpecError("spec has non-cyclic vertices; use the GBS core instead")
    return GBSGraph(spec.graph, spec.attach_exp)


def _dot_id(x) -> str:
    s = str(x).replace("\\", "\\\\").replace('"', '\\"')
    return f'"{s}"'


def export_dot(graph, name: str = "G", edge_names: bool = True, highlight: Iterable = ()) -> str:
    """Graphviz text for a GBS graph or a development ball.

    Each geometric edge is drawn once; the label next to each endpoint is the
    exponent of the edge group at that endpoint.
    """
    g = graph if isinstance(graph, GBSGraph) else getattr(graph, "graph", None)
    if not isinstance(g, GBSGraph):
        raise TypeError("export_dot needs a GBSGraph or a development ball")
    marked = set(highlight)
    lines = [f"graph {_dot_id(name)} {{"]
    for v in g.vertices:
        attrs = " [style=bold]" if v in marked else ""
        lines.append(f"  {_dot_id(v)}{attrs};")
    for e in g.geometric_edges():
        attrs = [f'taillabel="{g.label(g.reverse(e))}"', f'headlabel="{g.label(e)}"']
        if edge_names:
            attrs.insert(0, f"label={_dot_id(e)}")
        lines.append(f"  {_dot_id(g.initial(e))} -- {_dot_id(g.terminal(e))} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
