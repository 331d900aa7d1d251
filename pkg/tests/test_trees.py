from collections import Counter

import networkx as nx
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from thetatrees.checks import sample_tree
from thetatrees.qt import Q, QTPoly
from thetatrees.shapes import compositions
from thetatrees.trees import (
    RootedTieredTree,
    compatibility_graph,
    enumerate_rtt,
    enumerate_rtt_root_j,
    enumerate_standard_rtt,
    enumerate_tt,
    inv,
    kappa_of_tree,
    reading_word,
    standardise,
    tree_enumerator,
    tree_enumerator_standard,
    wt,
)

small_alphas = st.integers(1, 4).flatmap(lambda n: st.sampled_from(list(compositions(n))))


def test_pictured_tree():
    # [PAPER]
    T = sample_tree()
    assert inv(T) == 4
    assert "".join(map(str, reading_word(T))) == "131224244"
    assert T.is_valid()


def test_pictured_tree_json_roundtrip():
    T = sample_tree()
    assert RootedTieredTree.from_json(T.to_json()) == T
    assert RootedTieredTree.from_json(__import__("json").loads(T.dumps())) == T


def test_two_level_content():
    trees = list(enumerate_rtt((1, 1), (1, 1, 1)))
    assert len(trees) == 5
    assert tree_enumerator(trees) == Q + 4


def test_invalid_tree_detected():
    # two vertices on the same level joined by an edge
    T = RootedTieredTree.from_edges(0, (0, 1, 1), (1, 2, 3), [(0, 1), (1, 2)])
    assert not T.is_valid()


def test_root_j_sizes():
    for j in (1, 2, 3):
        for T in enumerate_rtt_root_j(2, j):
            assert T.size == 3 and T.labels[T.root] == j


@given(small_alphas, st.data())
def test_direct_equals_standard_route(alpha, data):
    size = sum(alpha) + 1
    k = data.draw(st.integers(1, min(size, 3)))
    cuts = sorted(data.draw(st.lists(st.integers(1, size - 1), min_size=k - 1, max_size=k - 1, unique=True))) if size > 1 else []
    bounds = [0] + cuts + [size]
    content = tuple(b - a for a, b in zip(bounds, bounds[1:]))
    assert tree_enumerator(enumerate_rtt(alpha, content)) == tree_enumerator_standard(alpha, content)


@pytest.mark.parametrize("alpha", [(1, 1), (2, 1), (1, 1, 1), (2, 2)])
def test_inv_is_kappa(alpha):
    for T in enumerate_standard_rtt(alpha):
        assert inv(T) == kappa_of_tree(T)


@pytest.mark.parametrize("alpha", [(1, 1), (2, 1), (1, 1, 1), (2, 2), (1, 2, 1)])
def test_wt_against_deletion_contraction(alpha):
    ours = Counter(wt(T) for T in enumerate_tt(alpha))
    q = sympy.Symbol("q")
    shells = {}
    for T in enumerate_tt(alpha):
        shells[(T.levels, T.labels)] = T
    expect = 0
    for T in shells.values():
        G = compatibility_graph(T)
        H = nx.Graph()
        H.add_nodes_from(range(1, G.n + 1))
        H.add_edges_from(G.edges)
        x, y = sympy.symbols("x y")
        expect += nx.tutte_polynomial(H).subs({x: 1, y: q})
    expect = sympy.Poly(sympy.expand(expect), q)
    got = sum(c * q**k for k, c in ours.items())
    assert sympy.expand(got - expect.as_expr()) == 0


def test_standardise_keeps_inv():
    T = sample_tree()
    S = standardise(T)
    assert S.is_standard() and inv(S) == inv(T)


def test_enumerator_empty_constant():
    assert tree_enumerator([]) == QTPoly(0)
