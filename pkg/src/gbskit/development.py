"""The development of a GBS graph and centralizers of elliptic elements.

The development has a vertex ``(v, n)`` for every vertex ``v`` and nonzero
integer ``n``, and an edge ``(e, n)`` from ``(initial(e), n*label(rev e))``
to ``(terminal(e), n*label(e))``.  The component of ``(v, n)`` is a GBS graph
whose fundamental group is the centralizer of ``z_v^n``.  Components can be
infinite, so they are explored lazily inside :class:`BallLimits`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Hashable, Mapping, NamedTuple, Optional

from .errors import EndpointMismatch
from .graph import GBSGraph, SerreGraph, sort_key
from .presentation import Presentation, pi1_presentation
from .words import Word, britton_reduce, check_sound, invert, multiply, product


class DevVertex(NamedTuple):
    vertex: Hashable
    index: int

    def sort_key(self):
        return (abs(self.index), str(self.vertex), self.index < 0)

    def __str__(self):
        return f"({self.vertex},{self.index})"


class DevEdge(NamedTuple):
    edge: Hashable
    index: int

    def sort_key(self):
        return (abs(self.index), str(self.edge), self.index < 0)

    def __str__(self):
        return f"({self.edge},{self.index})"


def dev_reverse(g: GBSGraph, d: DevEdge) -> DevEdge:
    return DevEdge(g.reverse(d.edge), d.index)


def dev_initial(g: GBSGraph, d: DevEdge) -> DevVertex:
    return DevVertex(g.initial(d.edge), d.index * g.label(g.reverse(d.edge)))


def dev_terminal(g: GBSGraph, d: DevEdge) -> DevVertex:
    return DevVertex(g.terminal(d.edge), d.index * g.label(d.edge))


def dev_incident(g: GBSGraph, p: DevVertex) -> list[DevEdge]:
    """Development edges whose terminal vertex is ``p``."""
    if p.index == 0:
        raise ValueError("development vertices have nonzero index")
    out = []
    for e in g.incoming(p.vertex):
        lab = g.label(e)
        if p.index % lab == 0:
            out.append(DevEdge(e, p.index // lab))
    out.sort(key=sort_key)
    return out


@dataclass(frozen=True)
class BallLimits:
    max_vertices: int = 256
    max_abs_index: int = 10**9

    def __post_init__(self):
        if self.max_vertices <= 0 or self.max_abs_index <= 0:
            raise ValueError("ball limits must be positive")


@dataclass(frozen=True, eq=False)
class ComponentBall:
    base: DevVertex
    graph: GBSGraph
    complete: bool
    # vertex -> development edge reaching it from its BFS parent
    tree: Mapping[DevVertex, DevEdge] = field(repr=False)
    source: GBSGraph = field(repr=False)

    def __contains__(self, p) -> bool:
        return self.graph.has_vertex(p)

    @property
    def size(self) -> int:
        return len(self.graph.vertices)

    def path_to(self, p: DevVertex) -> list[DevEdge]:
        """Tree path of development edges from the base to ``p``."""
        path = []
        while p != self.base:
            d = self.tree[p]
            path.append(d)
            p = dev_initial(self.source, d)
        path.reverse()
        return path

    def path_word(self, p: DevVertex) -> Word:
        return path_word(self.source, self.base.vertex, self.path_to(p))

    def leaks(self) -> list[DevEdge]:
        """Development edges joining a ball vertex to a vertex outside the ball."""
        out = []
        for p in self.graph.vertices:
            for d in dev_incident(self.source, p):
                if not self.graph.has_vertex(dev_initial(self.source, d)):
                    out.append(d)
        return out


def path_word(g: GBSGraph, start, path) -> Word:
    return Word.from_tokens(g, [("e", d.edge) for d in path], start=start)


def component_ball(g: GBSGraph, v, n: int, limits: BallLimits = BallLimits()) -> ComponentBall:
    """Breadth-first exploration of the component of ``(v, n)``.

    Layers are visited in ``(|index|, vertex, sign)`` order so the ball is
    reproducible; once a limit is hit the ball is marked incomplete.
    """
    if n == 0:
        raise ValueError("index must be nonzero")
    if not g.has_vertex(v):
        raise KeyError(v)
    base = DevVertex(v, n)
    seen = {base}
    order = [base]
    tree: dict[DevVertex, DevEdge] = {}
    truncated = False
    layer = [base]
    while layer:
        found: dict[DevVertex, DevEdge] = {}
        for p in layer:
            for d in dev_incident(g, p):
                q = dev_initial(g, d)
                if q not in seen and q not in found:
                    found[q] = dev_reverse(g, d)
        layer = []
        for q in sorted(found, key=sort_key):
            if abs(q.index) > limits.max_abs_index or len(seen) >= limits.max_vertices:
                truncated = True
                continue
            seen.add(q)
            order.append(q)
            tree[q] = found[q]
            layer.append(q)

    reps = set()
    for p in order:
        for d in dev_incident(g, p):
            if dev_initial(g, d) in seen:
                reps.add(min(d, dev_reverse(g, d), key=sort_key))
    edges, reverse, initial, label = [], {}, {}, {}
    for d in sorted(reps, key=sort_key):
        for x in (d, dev_reverse(g, d)):
            edges.append(x)
            reverse[x] = dev_reverse(g, x)
            initial[x] = dev_initial(g, x)
            label[x] = g.label(x.edge)
    ball_graph = GBSGraph(SerreGraph(order, edges, reverse, initial), label)
    return ComponentBall(base, ball_graph, not truncated, tree, g)


class Status(str, Enum):
    COMPLETE = "Complete"
    TRUNCATED = "Truncated"


@dataclass(frozen=True, eq=False)
class CentralizerReport:
    ball: ComponentBall
    presentation: Optional[Presentation]
    status: Status
    # generator name -> element of the base group it maps to
    generator_words: Mapping[str, Word] = field(repr=False)

    def summary(self) -> dict:
        return {
            "status": self.status.value,
            "vertices": len(self.ball.graph.vertices),
            "edges": len(self.ball.graph.geometric_edges()),
        }


def _generator_words(ball: ComponentBall, pres: Presentation) -> dict[str, Word]:
    g = ball.source
    bg = ball.graph
    base = ball.base

    def tree_path(p):
        path = []
        while p != base:
            d = pres.tree[p]
            path.append(d)
            p = bg.initial(d)
        path.reverse()
        return path_word(g, base.vertex, path)

    paths = {p: tree_path(p) for p in bg.vertices}
    words = {}
    for p in bg.vertices:
        x = Word.vertex(g, p.vertex, 1)
        words[str(p)] = product([paths[p], x, invert(paths[p])])
    for d in pres.edge_generators:
        e = Word.edge(g, d.edge)
        words[str(d)] = product([paths[bg.initial(d)], e, invert(paths[bg.terminal(d)])])
    return words


def centralizer_of_power(g: GBSGraph, v, n: int, limits: BallLimits = BallLimits()) -> CentralizerReport:
    """Centralizer of ``z_v^n`` as the fundamental group of its development component.

    A presentation is only emitted when the component was explored
    completely; the generator words are valid centralizer elements either way.
    """
    ball = component_ball(g, v, n, limits)
    pres = pi1_presentation(ball.graph, ball.base)
    words = _generator_words(ball, pres)
    if ball.complete:
        return CentralizerReport(ball, pres, Status.COMPLETE, words)
    return CentralizerReport(ball, None, Status.TRUNCATED, words)


def is_in_centralizer(w: Word, v, n: int) -> bool:
    """Does ``w`` commute with ``z_v^n``?

    Follows the reduced writing through the development: the running index
    must be divisible by ``label(rev e)`` before every edge ``e`` and must be
    back at ``n`` at the end.
    """
    s, t = check_sound(w)
    if s != v or t != v:
        raise EndpointMismatch(f"word must be closed at {v!r}")
    if n == 0:
        return True
    g = w.graph
    m = n
    for e in britton_reduce(w).edges:
        d = g.label(g.reverse(e))
        if m % d:
            return False
        m = m // d * g.label(e)
    return m == n


def centralizer_elements(report: CentralizerReport, count: int, seed: int = 0, max_factors: int = 3) -> list[Word]:
    """Distinct elements of the centralizer drawn from a development ball.

    Starts with the generator words and their inverses, then adds random
    products of up to ``max_factors`` of them.
    """
    gens = list(report.generator_words.values())
    pool = gens + [invert(w) for w in gens]
    out: list[Word] = []
    seen = set()
    for w in pool:
        if w not in seen:
            seen.add(w)
            out.append(w)
    rng = random.Random(seed)
    attempts = 0
    while len(out) < count and attempts < 50 * count:
        attempts += 1
        k = rng.randint(2, max(2, max_factors))
        w = product([rng.choice(pool) for _ in range(k)])
        if w not in seen:
            seen.add(w)
            out.append(w)
    return out[:count] if len(out) >= count else out


class Answer(str, Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class ConjugacyResult:
    answer: Answer
    path: tuple[DevEdge, ...] = ()
    word: Optional[Word] = None


def elliptic_conjugate(g: GBSGraph, v, n: int, u, m: int, limits: BallLimits = BallLimits()) -> ConjugacyResult:
    """Semidecide whether ``z_v^n`` and ``z_u^m`` are conjugate.

    On ``Yes`` the witness word ``p`` satisfies ``p z_u^m p^-1 = z_v^n``.
    """
    target = DevVertex(u, m)
    first = component_ball(g, v, n, limits)
    if target in first:
        path = tuple(first.path_to(target))
        return ConjugacyResult(Answer.YES, path, path_word(g, v, path))
    if first.complete:
        return ConjugacyResult(Answer.NO)
    second = component_ball(g, u, m, limits)
    source = DevVertex(v, n)
    if source in second:
        back = second.path_to(source)
        path = tuple(dev_reverse(g, d) for d in reversed(back))
        return ConjugacyResult(Answer.YES, path, path_word(g, v, path))
    if second.complete:
        return ConjugacyResult(Answer.NO)
    return ConjugacyResult(Answer.UNKNOWN)
