"""Relative endomorphisms of a GBS graph of groups and centralizer twists.

A relative endomorphism fixes every vertex letter and sends each edge ``e``
to a word from ``initial(e)`` to ``terminal(e)``; it is stored by its edge
images.  The twist determined by centralizer elements ``c`` is
``e -> c[initial(e)] e c[terminal(e)]^-1``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping, Optional

from .development import BallLimits, centralizer_of_power, is_in_centralizer
from .errors import EndpointMismatch, GraphMismatch, NotInCentralizer, NotRelationPreserving
from .graph import GBSGraph, sort_key
from .presentation import spanning_tree
from .words import (
    Word,
    canonical_form,
    check_sound,
    concat,
    equals,
    identity,
    invert,
    multiply,
    product,
)


class RelativeEndomorphism:
    """Edge images of an endomorphism that fixes every vertex group.

    Missing reverse images are filled in by inversion.  Construction checks
    that every image runs between the right vertices and respects
    ``z_u^label(rev e) e = e z_v^label(e)``.
    """

    def __init__(self, graph: GBSGraph, images: Mapping, check: bool = True, assignment: Optional[Mapping] = None):
        self.graph = graph
        full = {}
        for e, w in images.items():
            if not graph.has_edge(e):
                raise GraphMismatch(f"unknown edge {e!r}")
            if w.graph is not graph and w.graph != graph:
                raise GraphMismatch(f"image of {e!r} lives over another graph")
            full[e] = canonical_form(w)
        for e in graph.edges:
            if e not in full:
                rev = graph.reverse(e)
                full[e] = invert(full[rev]) if rev in full else Word.edge(graph, e)
        self.images = full
        # centralizer elements when built by twist_from_centralizers
        self.assignment = dict(assignment) if assignment is not None else None
        if check:
            self._check()

    def _check(self):
        g = self.graph
        for e in g.edges:
            w = self.images[e]
            if check_sound(w) != (g.initial(e), g.terminal(e)):
                raise EndpointMismatch(f"image of {e!r} must run from {g.initial(e)!r} to {g.terminal(e)!r}")
            if self.images[g.reverse(e)] != invert(w):
                raise NotRelationPreserving(f"images of {e!r} and its reverse are not inverse")
            left = multiply(Word.vertex(g, g.initial(e), g.label(g.reverse(e))), w)
            right = multiply(w, Word.vertex(g, g.terminal(e), g.label(e)))
            if left != right:
                raise NotRelationPreserving(f"image of {e!r} breaks its edge relation")

    def __call__(self, w: Word) -> Word:
        return apply_to_word(self, w)

    def __eq__(self, other):
        if not isinstance(other, RelativeEndomorphism):
            return NotImplemented
        return self.graph == other.graph and self.images == other.images

    __hash__ = None

    def __repr__(self):
        body = ", ".join(f"{e} -> {self.images[e]}" for e in self.graph.geometric_edges())
        return f"RelativeEndomorphism({body})"


def identity_endomorphism(graph: GBSGraph) -> RelativeEndomorphism:
    return RelativeEndomorphism(graph, {}, check=False)


def _check_assignment(graph: GBSGraph, c: Mapping) -> dict:
    out = {}
    for v, w in c.items():
        if not graph.has_vertex(v):
            raise NotInCentralizer(f"unknown root {v!r}", v)
        if w.graph is not graph and w.graph != graph:
            raise GraphMismatch(f"element for {v!r} lives over another graph")
        try:
            ok = is_in_centralizer(w, v, 1)
        except EndpointMismatch:
            ok = False
        if not ok:
            raise NotInCentralizer(f"{w} does not centralize the generator at {v!r}", v)
        out[v] = canonical_form(w)
    return out


def twist_from_centralizers(c: Mapping, graph: Optional[GBSGraph] = None) -> tuple[RelativeEndomorphism, RelativeEndomorphism]:
    """The twist ``e -> c[initial e] e c[terminal e]^-1`` and its exact inverse.

    Roots missing from ``c`` get the trivial element.
    """
    if graph is None:
        if not c:
            raise ValueError("an empty assignment needs the graph")
        graph = next(iter(c.values())).graph
    c = _check_assignment(graph, c)
    full = {v: c.get(v, identity(graph, v)) for v in graph.vertices}
    inv = {v: invert(w) for v, w in full.items()}
    return _twist(graph, full), _twist(graph, inv)


def _twist(graph: GBSGraph, c: Mapping) -> RelativeEndomorphism:
    images = {}
    for e in graph.edges:
        images[e] = product([c[graph.initial(e)], Word.edge(graph, e), invert(c[graph.terminal(e)])])
    return RelativeEndomorphism(graph, images, check=False, assignment=c)


def multiply_assignments(c1: Mapping, c2: Mapping, graph: GBSGraph) -> dict:
    """Pointwise product ``c1[v] * c2[v]``."""
    return {
        v: multiply(c1.get(v, identity(graph, v)), c2.get(v, identity(graph, v)))
        for v in graph.vertices
    }


def apply_to_word(t: RelativeEndomorphism, w: Word) -> Word:
    if w.graph is not t.graph and w.graph != t.graph:
        raise GraphMismatch("word and endomorphism live over different graphs")
    check_sound(w)
    g = t.graph
    acc = Word.vertex(g, w.start, w.syllables[0][1])
    for e, (v, k) in zip(w.edges, w.syllables[1:]):
        acc = concat(acc, t.images[e])
        acc = concat(acc, Word.vertex(g, v, k))
    return canonical_form(acc)


def compose(t1: RelativeEndomorphism, t2: RelativeEndomorphism) -> RelativeEndomorphism:
    """``t1`` after ``t2``."""
    if t1.graph is not t2.graph and t1.graph != t2.graph:
        raise GraphMismatch("endomorphisms live over different graphs")
    images = {e: apply_to_word(t1, t2.images[e]) for e in t1.graph.edges}
    return RelativeEndomorphism(t1.graph, images, check=False)


def is_identity(t: RelativeEndomorphism) -> bool:
    return all(t.images[e] == Word.edge(t.graph, e) for e in t.graph.edges)


def fixes_centralizer_check(t: RelativeEndomorphism, root, samples) -> bool:
    """True iff ``t`` fixes every sample, each of which must centralize the root."""
    for w in samples:
        try:
            ok = is_in_centralizer(w, root, 1)
        except EndpointMismatch:
            ok = False
        if not ok:
            raise NotInCentralizer(f"sample {w} does not centralize the generator at {root!r}", w)
    return all(equals(apply_to_word(t, w), w) for w in samples)


def check_equivalence_witness(t1: RelativeEndomorphism, t2: RelativeEndomorphism, witness: Mapping) -> bool:
    """Does ``t2(e) = a[initial e] t1(e) a[terminal e]^-1`` hold for every edge?"""
    if t1.graph is not t2.graph and t1.graph != t2.graph:
        raise GraphMismatch("endomorphisms live over different graphs")
    g = t1.graph
    a = _check_assignment(g, witness)
    a = {v: a.get(v, identity(g, v)) for v in g.vertices}
    for e in g.edges:
        expected = product([a[g.initial(e)], t1.images[e], invert(a[g.terminal(e)])])
        if expected != t2.images[e]:
            return False
    return True


@dataclass(frozen=True)
class WitnessSearch:
    found: bool
    witness: Optional[dict] = None
    tried: int = 0


def _candidates(graph: GBSGraph, v, bound: int, limits: BallLimits) -> list[Word]:
    gens = [Word.vertex(graph, v, 1)]
    gens += list(centralizer_of_power(graph, v, 1, limits).generator_words.values())
    letters = []
    for w in gens + [invert(w) for w in gens]:
        if w not in letters:
            letters.append(w)
    start = identity(graph, v)
    seen = {start}
    out = [start]
    frontier = [start]
    for _ in range(bound):
        nxt = []
        for w in frontier:
            for x in letters:
                y = multiply(w, x)
                if y not in seen:
                    seen.add(y)
                    out.append(y)
                    nxt.append(y)
        frontier = nxt
    return out


def search_identity_witness(
    t: RelativeEndomorphism, bound: int, limits: BallLimits = BallLimits(max_vertices=16)
) -> WitnessSearch:
    """Look for ``a`` with ``t(e) = a[initial e] e a[terminal e]^-1`` for all edges.

    Per connected component, ``a`` at the smallest vertex runs over products
    of at most ``bound`` centralizer generators (the vertex generator and
    the generators read off its development ball); the other values are then
    forced along a spanning tree.  A negative answer is inconclusive.
    """
    g = t.graph
    witness: dict = {}
    tried = 0
    remaining = set(g.vertices)
    while remaining:
        base = min(remaining, key=sort_key)
        comp = g.induced(_component(g, base))
        remaining -= set(comp.vertices)
        order, tree = spanning_tree(comp, base)
        hit = None
        for cand in _candidates(g, base, bound, limits):
            tried += 1
            a = {base: cand}
            for w in order[1:]:
                e = tree[w]
                a[w] = product([invert(t.images[e]), a[comp.initial(e)], Word.edge(g, e)])
            if all(is_in_centralizer(a[w], w, 1) for w in order) and all(
                product([a[comp.initial(e)], Word.edge(g, e), invert(a[comp.terminal(e)])]) == t.images[e]
                for e in comp.edges
            ):
                hit = a
                break
        if hit is None:
            return WitnessSearch(False, None, tried)
        witness.update(hit)
    return WitnessSearch(True, witness, tried)


def _component(g: GBSGraph, v) -> set:
    seen = {v}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        for e in g.outgoing(x):
            y = g.terminal(e)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen
