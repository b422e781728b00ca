"""Words in the universal group of a GBS graph of groups.

A word is a sound writing ``g0 e1 g1 ... el gl`` where each ``gi`` is a
power of the generator of the vertex group it sits in.  Reduction follows
Britton's lemma; canonical forms pick, at every syllable after an edge
``ei``, the remainder modulo ``|label(ei)|`` and push the quotient to the
left through ``ei`` using ``ei z^(q*label(ei)) = z^(q*label(rev ei)) ei``.
Only the leading syllable ``g0`` is left unnormalized, so two sound words are
equal in the group exactly when their canonical forms coincide.
"""

from __future__ import annotations

import re
from enum import Enum
from typing import Hashable, Iterable, Sequence

from .errors import EndpointMismatch, GraphMismatch, UnsoundWord
from .graph import GBSGraph

_POWER = re.compile(r"^(?P<name>.+?)(?:\^(?P<exp>[+-]?\d+))?$")


class Word:
    """Alternating sequence of vertex syllables and oriented edges.

    ``syllables[i]`` is ``(vertex, exponent)`` and sits between
    ``edges[i-1]`` and ``edges[i]``.  Words compare equal when they are
    syllable-identical over the same graph; use :func:`equals` for equality
    in the group.
    """

    __slots__ = ("graph", "syllables", "edges")

    def __init__(self, graph: GBSGraph, syllables: Iterable[tuple[Hashable, int]], edges: Iterable = ()):
        self.graph = graph
        self.syllables = tuple((v, int(k)) for v, k in syllables)
        self.edges = tuple(edges)
        if len(self.syllables) != len(self.edges) + 1:
            raise UnsoundWord("a word needs exactly one more vertex syllable than edges")

    @classmethod
    def vertex(cls, graph: GBSGraph, v, k: int = 0) -> "Word":
        return cls(graph, [(v, k)])

    @classmethod
    def edge(cls, graph: GBSGraph, e) -> "Word":
        return cls(graph, [(graph.initial(e), 0), (graph.terminal(e), 0)], [e])

    @classmethod
    def from_tokens(cls, graph: GBSGraph, tokens: Sequence[tuple], start=None) -> "Word":
        """Assemble a word from ``("v", vertex, k)`` and ``("e", edge)`` tokens.

        Adjacent powers of the same vertex are merged and missing vertex
        syllables are filled in with exponent 0.
        """
        syllables: list[list] = []
        edges: list = []
        for tok in tokens:
            if tok[0] == "e":
                e = tok[1]
                if not graph.has_edge(e):
                    raise UnsoundWord(f"unknown edge {e!r}")
                if len(syllables) == len(edges):
                    syllables.append([graph.initial(e), 0])
                edges.append(e)
            else:
                _, v, k = tok
                if not graph.has_vertex(v):
                    raise UnsoundWord(f"unknown vertex {v!r}")
                if len(syllables) == len(edges) + 1:
                    if syllables[-1][0] != v:
                        raise UnsoundWord(f"adjacent powers of different vertices {syllables[-1][0]!r}, {v!r}")
                    syllables[-1][1] += k
                else:
                    syllables.append([v, k])
        if not syllables:
            if start is None:
                raise UnsoundWord("empty word needs an explicit basepoint")
            syllables.append([start, 0])
        if len(syllables) == len(edges):
            syllables.append([graph.terminal(edges[-1]), 0])
        w = cls(graph, syllables, edges)
        check_sound(w)
        return w

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def start(self):
        return self.syllables[0][0]

    @property
    def end(self):
        return self.syllables[-1][0]

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(k for _, k in self.syllables)

    def is_trivial(self) -> bool:
        return not self.edges and self.syllables[0][1] == 0

    def tokens(self) -> list[str]:
        out = []
        for i, (v, k) in enumerate(self.syllables):
            if i:
                out.append(str(self.edges[i - 1]))
            if k == 1:
                out.append(str(v))
            elif k:
                out.append(f"{v}^{k}")
        if not out:
            out.append(f"{self.start}^0")
        return out

    def __str__(self):
        return " ".join(self.tokens())

    def __repr__(self):
        return f"Word({str(self)!r})"

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return (
            self.syllables == other.syllables
            and self.edges == other.edges
            and (self.graph is other.graph or self.graph == other.graph)
        )

    def __hash__(self):
        return hash((self.syllables, self.edges))

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, k: int) -> "Word":
        return power(self, k)


def parse_word(graph: GBSGraph, text: str, start=None) -> Word:
    """Parse whitespace-separated tokens: ``v^k``, ``v``, ``e`` or ``e'``."""
    tokens: list[tuple] = []
    for raw in text.split():
        if graph.has_edge(raw):
            tokens.append(("e", raw))
            continue
        m = _POWER.match(raw)
        name = m.group("name") if m else raw
        if not m or not graph.has_vertex(name):
            raise UnsoundWord(f"unknown symbol {raw!r}")
        tokens.append(("v", name, int(m.group("exp") or 1)))
    return Word.from_tokens(graph, tokens, start=start)


def check_sound(w: Word) -> tuple:
    """Return ``(initial, terminal)`` vertices of a sound word."""
    g = w.graph
    for i, (v, _) in enumerate(w.syllables):
        if not g.has_vertex(v):
            raise UnsoundWord(f"unknown vertex {v!r}")
        if i < len(w.edges):
            e = w.edges[i]
            if not g.has_edge(e):
                raise UnsoundWord(f"unknown edge {e!r}")
            if g.initial(e) != v:
                raise UnsoundWord(f"syllable {i} sits at {v!r} but edge {e!r} starts at {g.initial(e)!r}")
        if i > 0 and g.terminal(w.edges[i - 1]) != v:
            raise UnsoundWord(f"syllable {i} sits at {v!r} but edge {w.edges[i - 1]!r} ends elsewhere")
    return w.start, w.end


def _build(graph: GBSGraph, start, edges: list, exps: list[int]) -> Word:
    verts = [start] + [graph.terminal(e) for e in edges]
    return Word(graph, zip(verts, exps), edges)


def _reduce_lists(graph: GBSGraph, edges: Sequence, exps: Sequence[int]) -> tuple[list, list[int]]:
    out_e: list = []
    out_x: list[int] = [exps[0]]
    for e, k in zip(edges, exps[1:]):
        if out_e and out_e[-1] == graph.reverse(e):
            f = out_e[-1]
            lab = graph.label(f)
            if out_x[-1] % lab == 0:
                out_e.pop()
                a = out_x.pop()
                out_x[-1] += a // lab * graph.label(e) + k
                continue
        out_e.append(e)
        out_x.append(k)
    return out_e, out_x


def britton_reduce(w: Word) -> Word:
    """Apply reductions ``e z^(m*label(e)) rev(e) -> z^(m*label(rev e))`` until none applies."""
    check_sound(w)
    edges, exps = _reduce_lists(w.graph, w.edges, w.exponents)
    return _build(w.graph, w.start, edges, exps)


def is_reduced(w: Word) -> bool:
    g = w.graph
    for i in range(1, len(w.edges)):
        e = w.edges[i - 1]
        if w.edges[i] == g.reverse(e) and w.syllables[i][1] % g.label(e) == 0:
            return False
    return True


def _normalize(graph: GBSGraph, edges: Sequence, exps: list[int]) -> list[int]:
    for i in range(len(edges), 0, -1):
        e = edges[i - 1]
        lab = graph.label(e)
        r = exps[i] % abs(lab)
        q = (exps[i] - r) // lab
        exps[i] = r
        exps[i - 1] += q * graph.label(graph.reverse(e))
    return exps


def _canonical_lists(graph: GBSGraph, edges: Sequence, exps: Sequence[int]) -> tuple[list, list[int]]:
    edges, exps = _reduce_lists(graph, edges, exps)
    # shifting by multiples of label(e) never creates a new reduction
    return edges, _normalize(graph, edges, exps)


def canonical_form(w: Word) -> Word:
    check_sound(w)
    edges, exps = _canonical_lists(w.graph, w.edges, w.exponents)
    return _build(w.graph, w.start, edges, exps)


def _same_graph(w1: Word, w2: Word):
    if w1.graph is not w2.graph and w1.graph != w2.graph:
        raise GraphMismatch("words live over different graphs")


def concat(w1: Word, w2: Word) -> Word:
    """Syllable-level concatenation, merging the junction syllables."""
    _same_graph(w1, w2)
    if w1.end != w2.start:
        raise EndpointMismatch(f"word ends at {w1.end!r} but the next starts at {w2.start!r}")
    syl = list(w1.syllables[:-1])
    syl.append((w1.end, w1.syllables[-1][1] + w2.syllables[0][1]))
    syl.extend(w2.syllables[1:])
    return Word(w1.graph, syl, w1.edges + w2.edges)


def multiply(w1: Word, w2: Word) -> Word:
    check_sound(w1)
    check_sound(w2)
    return canonical_form(concat(w1, w2))


def product(words: Sequence[Word]) -> Word:
    if not words:
        raise UnsoundWord("empty product needs a basepoint")
    acc = words[0]
    for w in words[1:]:
        acc = concat(acc, w)
    return canonical_form(acc)


def invert(w: Word) -> Word:
    check_sound(w)
    g = w.graph
    edges = [g.reverse(e) for e in reversed(w.edges)]
    exps = [-k for k in reversed(w.exponents)]
    return canonical_form(_build(g, w.end, edges, exps))


def identity(graph: GBSGraph, v) -> Word:
    return Word.vertex(graph, v, 0)


def power(w: Word, k: int) -> Word:
    check_sound(w)
    if w.start != w.end and k != 1:
        raise EndpointMismatch("only closed words can be raised to a power")
    if k < 0:
        return power(invert(w), -k)
    result = identity(w.graph, w.start)
    base = canonical_form(w)
    while k:
        if k & 1:
            result = multiply(result, base)
        k >>= 1
        if k:
            base = multiply(base, base)
    return result


def equals(w1: Word, w2: Word) -> bool:
    """Decide equality in the universal group."""
    _same_graph(w1, w2)
    a, b = check_sound(w1), check_sound(w2)
    if a != b:
        raise EndpointMismatch(f"endpoints differ: {a} vs {b}")
    return canonical_form(w1) == canonical_form(w2)


def _require_closed(w: Word):
    s, t = check_sound(w)
    if s != t:
        raise EndpointMismatch(f"word is not closed: {s!r} -> {t!r}")
    return s


def commutes(w1: Word, w2: Word) -> bool:
    if _require_closed(w1) != _require_closed(w2):
        raise EndpointMismatch("words are closed at different vertices")
    return multiply(w1, w2) == multiply(w2, w1)


def conjugate(w: Word, c: Word) -> Word:
    """``c w c^-1``."""
    return product([c, w, invert(c)])


def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """Return ``(core, conjugator)`` with ``w = conjugator * core * conjugator^-1``.

    The core is Britton-reduced, has trivial leading syllable when it has
    positive length, and admits no reduction across the junction
    ``el gl g0 e1``.
    """
    v = _require_closed(w)
    g = w.graph
    core = britton_reduce(w)
    conj = identity(g, v)
    while core.length:
        edges, exps = list(core.edges), list(core.exponents)
        if exps[0]:
            x = Word.vertex(g, core.start, exps[0])
            conj = multiply(conj, x)
            exps[-1] += exps[0]
            exps[0] = 0
            core = _build(g, core.start, edges, exps)
        first, last = edges[0], edges[-1]
        if len(edges) >= 2 and first == g.reverse(last) and exps[-1] % g.label(last) == 0:
            y = Word.edge(g, first)
            conj = multiply(conj, y)
            core = britton_reduce(concat(concat(invert(y), core), y))
            continue
        return core, conj
    return core, conj


class ElementType(str, Enum):
    ELLIPTIC = "Elliptic"
    HYPERBOLIC = "Hyperbolic"


def classify_element(w: Word) -> ElementType:
    core, _ = cyclic_reduce(w)
    return ElementType.ELLIPTIC if core.length == 0 else ElementType.HYPERBOLIC
