import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from thetatrees.checks import GRAIN_TABLE_ORDER, sandpile_sample_polyomino
from thetatrees.graphs import Graph, tutte_at_one
from thetatrees.polyomino import area, enumerate_lpp
from thetatrees.qt import Q, QTPoly
from thetatrees.sandpile import (
    NotRecurrentError,
    SandpileConfig,
    SandpileGraph,
    canonical_toppling,
    is_recurrent,
    is_recurrent_burning,
    level,
    level_enumerator,
    recurrent_configs,
    sandpile_decode,
    sandpile_encode,
    stabilize,
    topple,
)


def complete(n):
    return Graph(n, frozenset(itertools.combinations(range(1, n + 1), 2)))


@st.composite
def connected_graphs(draw):
    n = draw(st.integers(2, 5))
    # random spanning tree plus extra edges keeps it connected
    edges = {(draw(st.integers(1, v - 1)), v) for v in range(2, n + 1)}
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    edges |= set(draw(st.lists(st.sampled_from(pairs), max_size=6)))
    return SandpileGraph(Graph(n, frozenset(edges)), draw(st.integers(1, n)))


def test_topple_moves_grains():
    G = SandpileGraph(complete(3), 1)
    c = topple(G, SandpileConfig((0, 2, 0)), 2)
    assert c.grains == (1, 0, 1)
    with pytest.raises(ValueError):
        topple(G, SandpileConfig((0, 1, 0)), 2)


def test_single_edge():
    G = SandpileGraph(Graph(2, frozenset([(1, 2)])), 1)
    assert [c.grains for c in recurrent_configs(G)] == [(1, 0)]
    assert level_enumerator(G) == QTPoly(1)


def test_triangle_levels():
    G = SandpileGraph(complete(3), 1)
    assert sorted(level(G, c) for c in recurrent_configs(G)) == [0, 0, 1]


def test_diamond_abelian():
    G = SandpileGraph(Graph(4, frozenset([(1, 2), (1, 3), (2, 4), (3, 4), (2, 3)])), 4)
    c = SandpileConfig((5, 4, 3, 0))
    g1 = stabilize(G, c)
    g2 = stabilize(G, topple(G, c, 1))
    assert g1 == g2


def test_disconnected_rejected():
    with pytest.raises(ValueError):
        SandpileGraph(Graph(3, frozenset([(1, 2)])), 1)


@given(connected_graphs())
def test_burning_matches_definition(G):
    ranges = [range(G.degree(v) + 1) for v in G.vertices]
    for grains in itertools.islice(itertools.product(*ranges), 400):
        c = SandpileConfig(grains)
        assert is_recurrent(G, c) == is_recurrent_burning(G, c)


@given(connected_graphs())
def test_level_polynomial_is_tutte(G):
    assert level_enumerator(G) == tutte_at_one(G.graph)


@pytest.mark.parametrize("n", [3, 4])
def test_complete_graph(n):
    G = SandpileGraph(complete(n), 1)
    assert level_enumerator(G) == tutte_at_one(complete(n))


def test_pictured_encoding():
    # [PAPER] grains and toppling order of the pictured polyomino
    G, c = sandpile_encode(sandpile_sample_polyomino())
    assert tuple(c[v] for v in GRAIN_TABLE_ORDER) == (9, 7, 5, 5, 3, 4, 0, 3, 3, 2, 0, 1)
    assert canonical_toppling(G, c) == [8, 3, 12, 9, 10, 11, 5, 4, 1, 7, 2, 6]
    assert level(G, c) == area(sandpile_sample_polyomino()) == 9


@pytest.mark.parametrize("m,n", [(m, n) for m in range(1, 5) for n in range(1, 5) if m + n <= 6])
def test_encode_decode(m, n):
    for P in enumerate_lpp(m, n):
        G, c = sandpile_encode(P)
        assert is_recurrent(G, c)
        assert level(G, c) == area(P)
        assert sandpile_decode(G, c) == P


def test_non_recurrent_decode():
    G, c = sandpile_encode(sandpile_sample_polyomino())
    bad = SandpileConfig(tuple(0 if v != G.sink else x for v, x in enumerate(c.grains, start=1)))
    with pytest.raises(NotRecurrentError):
        canonical_toppling(G, bad)


def test_canonical_needs_colours():
    with pytest.raises(ValueError):
        canonical_toppling(SandpileGraph(complete(3), 1), SandpileConfig((2, 1, 0)))


def test_negative_grains():
    with pytest.raises(ValueError):
        SandpileConfig((-1, 0))
