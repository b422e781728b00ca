"""Finite presentations of fundamental groups of finite GBS graphs."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Any, Hashable, Mapping

from .graph import GBSGraph, sort_key

Syllable = tuple[str, int]


def _fmt_side(side: tuple[Syllable, ...]) -> str:
    if not side:
        return "1"
    return " ".join(g if k == 1 else f"{g}^{k}" for g, k in side)


@dataclass(frozen=True)
class Relation:
    lhs: tuple[Syllable, ...]
    rhs: tuple[Syllable, ...]

    def __str__(self):
        return f"{_fmt_side(self.lhs)} = {_fmt_side(self.rhs)}"

    def to_json(self) -> list:
        return [[list(s) for s in self.lhs], [list(s) for s in self.rhs]]

    @classmethod
    def from_json(cls, data) -> "Relation":
        lhs, rhs = data
        return cls(tuple((g, int(k)) for g, k in lhs), tuple((g, int(k)) for g, k in rhs))


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relations: tuple[Relation, ...]
    # spanning tree used to build it: vertex -> edge from its parent (not serialized)
    tree: Mapping[Hashable, Any] = field(default_factory=dict, compare=False, repr=False)
    base: Any = field(default=None, compare=False, repr=False)
    edge_generators: tuple = field(default=(), compare=False, repr=False)

    def __str__(self):
        gens = ", ".join(self.generators)
        if not self.relations:
            return f"< {gens} >"
        return f"< {gens} | {', '.join(str(r) for r in self.relations)} >"

    def to_json(self) -> dict:
        return {"generators": list(self.generators), "relations": [r.to_json() for r in self.relations]}

    @classmethod
    def from_json(cls, data: Mapping) -> "Presentation":
        return cls(tuple(data["generators"]), tuple(Relation.from_json(r) for r in data["relations"]))


def spanning_tree(g: GBSGraph, base=None) -> tuple[list, dict]:
    """Breadth-first spanning tree with sorted adjacency.

    Returns the vertices in visiting order and a map from each non-base
    vertex to the oriented edge that reaches it from its parent.
    """
    if base is None:
        base = min(g.vertices, key=sort_key)
    order, tree = [base], {}
    seen = {base}
    queue = deque([base])
    while queue:
        v = queue.popleft()
        for e in sorted(g.outgoing(v), key=sort_key):
            w = g.terminal(e)
            if w not in seen:
                seen.add(w)
                tree[w] = e
                order.append(w)
                queue.append(w)
    return order, tree


def pi1_presentation(g: GBSGraph, base=None) -> Presentation:
    """Generators: the vertices plus one letter per edge outside a spanning tree.

    Each kept edge ``e`` from ``u`` to ``v`` contributes
    ``u^label(rev e) e = e v^label(e)``; tree edges are set trivial.
    """
    order, tree = spanning_tree(g, base)
    if len(order) != len(g.vertices):
        raise ValueError("pi1_presentation needs a connected graph")
    tree_pairs = set()
    for e in tree.values():
        tree_pairs.add(e)
        tree_pairs.add(g.reverse(e))
    reps = sorted({min(e, g.reverse(e), key=sort_key) for e in g.edges}, key=sort_key)
    gens = [str(v) for v in order]
    relations = []
    kept = []
    for e in reps:
        u, v = str(g.initial(e)), str(g.terminal(e))
        a, b = g.label(g.reverse(e)), g.label(e)
        if e in tree_pairs:
            relations.append(Relation(((u, a),), ((v, b),)))
        else:
            kept.append(e)
            relations.append(Relation(((u, a), (str(e), 1)), ((str(e), 1), (v, b))))
    gens += [str(e) for e in kept]
    return Presentation(tuple(gens), tuple(relations), tree, order[0], tuple(kept))
