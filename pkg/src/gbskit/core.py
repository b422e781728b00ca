"""The GBS core of a root-decorated graph of groups and its elementary pieces.

The core has one vertex per declared root and keeps every edge of the
document, reattached at the roots it is glued to.  Each connected component is
collapse-reduced and matched against the reduced shapes of Z, Z^2 and the
Klein bottle group.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Hashable, NamedTuple

from .graph import GBSGraph, GraphOfGroupsSpec, SerreGraph, sort_key, validate
from .errors import SpecError
from .presentation import Presentation, pi1_presentation
from .words import Word, identity

__all__ = [
    "CollapseStep",
    "ComponentClass",
    "CoreDecomposition",
    "classify_component",
    "collapse_reduce",
    "collapse_trace",
    "collapse_map",
    "components",
    "extract_core",
    "pi1_presentation",
    "Presentation",
]


class ComponentClass(str, Enum):
    Z = "Z"
    Z2 = "Z2"
    KLEIN_BOTTLE = "KleinBottle"
    GENERAL = "GeneralGBS"


@dataclass(frozen=True, eq=False)
class CoreDecomposition:
    core: GBSGraph
    components: tuple[GBSGraph, ...]

    @property
    def k(self) -> int:
        return len(self.components)

    def component_index(self, root_id) -> int:
        for i, c in enumerate(self.components):
            if c.has_vertex(root_id):
                return i
        raise KeyError(root_id)


def components(g: GBSGraph) -> tuple[GBSGraph, ...]:
    """Connected components, ordered by their smallest vertex."""
    seen: set = set()
    out = []
    for v in sorted(g.vertices, key=sort_key):
        if v in seen:
            continue
        part = {v}
        queue = deque([v])
        while queue:
            x = queue.popleft()
            for e in g.outgoing(x):
                y = g.terminal(e)
                if y not in part:
                    part.add(y)
                    queue.append(y)
        seen |= part
        out.append(g.induced(part))
    return tuple(out)


def extract_core(spec: GraphOfGroupsSpec) -> CoreDecomposition:
    problems = validate(spec)
    if problems:
        raise SpecError(str(problems[0]), problems[0].ident)
    g = spec.graph
    verts = [r.id for r in spec.all_roots()]
    edges = list(g.edges)
    reverse = {e: g.reverse(e) for e in edges}
    initial = {e: spec.attach_root[g.reverse(e)] for e in edges}
    label = {e: spec.attach_exp[e] for e in edges}
    core = GBSGraph(SerreGraph(verts, edges, reverse, initial), label)
    return CoreDecomposition(core, components(core))


class CollapseStep(NamedTuple):
    """Edge ``edge`` was contracted: ``z_removed = z_kept ** power``."""

    edge: Hashable
    removed: Hashable
    kept: Hashable
    power: int


def _collapsible(g: GBSGraph):
    cands = [e for e in g.edges if not g.is_loop(e) and g.label(e) in (1, -1)]
    return min(cands, key=sort_key) if cands else None


def _contract(g: GBSGraph, e) -> tuple[GBSGraph, CollapseStep]:
    rev = g.reverse(e)
    gone, kept = g.terminal(e), g.initial(e)
    k = g.label(e) * g.label(rev)
    verts = [v for v in g.vertices if v != gone]
    edges = [f for f in g.edges if f not in (e, rev)]
    initial, label = {}, {}
    for f in edges:
        initial[f] = kept if g.initial(f) == gone else g.initial(f)
        label[f] = g.label(f) * k if g.terminal(f) == gone else g.label(f)
    out = GBSGraph(SerreGraph(verts, edges, {f: g.reverse(f) for f in edges}, initial), label)
    return out, CollapseStep(e, gone, kept, k)


def collapse_trace(g: GBSGraph) -> tuple[GBSGraph, list[CollapseStep]]:
    """Contract non-loop edges labelled +-1 until none is left.

    The smallest such oriented edge goes first.  Contracting ``e`` removes
    ``terminal(e)``, whose generator is a power of the one at ``initial(e)``.
    """
    steps = []
    while (e := _collapsible(g)) is not None:
        g, step = _contract(g, e)
        steps.append(step)
    return g, steps


def collapse_reduce(g: GBSGraph) -> GBSGraph:
    return collapse_trace(g)[0]


def collapse_map(g: GBSGraph, steps) -> dict:
    """For each vertex ``x`` of ``g``: ``(kept, p, k)`` with ``z_x = p^-1 z_kept^k p``.

    ``p`` is a word in ``g`` from ``kept`` to ``x``.
    """
    out = {v: (v, identity(g, v), 1) for v in g.vertices}
    for s in steps:
        # s.edge still runs between the original endpoints in g
        p_a = out[g.initial(s.edge)][1]
        p_b = out[g.terminal(s.edge)][1]
        q = p_a * Word.edge(g, s.edge) * ~p_b
        for x, (rep, p, k) in list(out.items()):
            if rep == s.removed:
                out[x] = (s.kept, q * p, s.power * k)
    return out


def classify_component(g: GBSGraph) -> ComponentClass:
    r = collapse_reduce(g)
    pairs = r.geometric_edges()
    if len(r.vertices) == 1 and not pairs:
        return ComponentClass.Z
    if len(pairs) == 1:
        e = pairs[0]
        a, b = r.label(r.reverse(e)), r.label(e)
        if r.is_loop(e):
            if a * b == 1:
                return ComponentClass.Z2
            if a * b == -1:
                return ComponentClass.KLEIN_BOTTLE
        elif abs(a) == 2 and abs(b) == 2:
            return ComponentClass.KLEIN_BOTTLE
    return ComponentClass.GENERAL
