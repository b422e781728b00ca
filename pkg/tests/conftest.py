from pathlib import Path

import sys

import pytest
from hypothesis import settings, strategies as st

from gbskit.graph import GBSGraph
from gbskit.words import Word

settings.register_profile("default", deadline=None)
settings.load_profile("default")

DATA = Path(__file__).parent / "data"


def bs24() -> GBSGraph:
    return GBSGraph.build(["a"], [("t", "a", "a", 2, 4)])


def uv() -> GBSGraph:
    return GBSGraph.build(
        ["v", "u"],
        [("e1", "v", "u", 4, 12), ("e2", "v", "u", 3, 3), ("e3", "u", "u", 1, 24)],
    )


@pytest.fixture
def bs():
    return bs24()


@pytest.fixture
def uvg():
    return uv()


@pytest.fixture
def data():
    return DATA


@st.composite
def sound_words(draw, graph, start=None, closed=False, max_edges=4, max_exp=6):
    """Random sound writings following a walk in ``graph``."""
    v = start if start is not None else draw(st.sampled_from(sorted(graph.vertices)))
    first = v
    tokens = [("v", v, draw(st.integers(-max_exp, max_exp)))]
    for _ in range(draw(st.integers(0, max_edges))):
        e = draw(st.sampled_from(sorted(graph.outgoing(v))))
        v = graph.terminal(e)
        tokens += [("e", e), ("v", v, draw(st.integers(-max_exp, max_exp)))]
    if closed and v != first:
        # walk back along a fixed path to close the word
        from gbskit.presentation import spanning_tree

        _, tree = spanning_tree(graph, first)
        while v != first:
            e = graph.reverse(tree[v])
            v = graph.terminal(e)
            tokens += [("e", e), ("v", v, draw(st.integers(-max_exp, max_exp)))]
    return Word.from_tokens(graph, tokens, start=first)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
