import itertools
from math import factorial

import networkx as nx
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from thetatrees.graphs import (
    EdgeOrder,
    Graph,
    active_edges,
    alpha_shuffles,
    inversion_graph,
    kappa_distribution,
    parse_word,
    r_poly,
    render_tutte,
    spanning_trees,
    tutte,
    tutte_at_one,
    word_standardise,
)
from thetatrees.qt import Q, QTPoly

x, y = sympy.symbols("x y")


@st.composite
def graphs(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=10)) if pairs else []
    return Graph(n, frozenset(chosen))


def to_nx(G):
    H = nx.Graph()
    H.add_nodes_from(range(1, G.n + 1))
    H.add_edges_from(G.edges)
    return H


def ours_as_sympy(G):
    return sympy.expand(sum(c * x ** int(i) * y ** int(j) for (i, j), c in tutte(G).to_dict().items()))


def kirchhoff(G):
    if G.n == 1:
        return 1
    L = nx.laplacian_matrix(to_nx(G), nodelist=range(1, G.n + 1)).toarray()
    return int(sympy.Matrix(L)[1:, 1:].det())


def test_k4_tutte():
    K4 = Graph(4, frozenset(itertools.combinations(range(1, 5), 2)))
    assert render_tutte(tutte(K4)) == "x^3 + y^3 + 3*x^2 + 4*x*y + 3*y^2 + 2*x + 2*y"


@given(graphs())
def test_tutte_against_networkx(G):
    assert ours_as_sympy(G) == sympy.expand(nx.tutte_polynomial(to_nx(G)))


@given(graphs())
def test_spanning_tree_count_kirchhoff(G):
    count = sum(1 for _ in spanning_trees(G))
    assert count == (kirchhoff(G) if G.is_connected() else 0)


@given(graphs(max_n=5))
def test_tutte_independent_of_order(G):
    assert tutte(G, EdgeOrder.lex()) == tutte(G, EdgeOrder(lambda e: (-e[1], e[0])))


@given(graphs(max_n=6))
def test_kappa_matches_tutte_at_one(G):
    if G.is_connected():
        for root in (1, G.n):
            assert kappa_distribution(G, root) == tutte_at_one(G)


def test_r_poly_examples():
    assert r_poly(parse_word("321")) == Q + 2
    assert r_poly(parse_word("21")) == 1
    # disconnected inversion graph: no spanning trees
    assert r_poly(parse_word("12")) == 0


def test_standardise():
    # [PAPER]
    assert word_standardise(parse_word("332132")) == (4, 5, 2, 1, 6, 3)


@pytest.mark.parametrize("alpha", [(1, 1), (2, 1), (1, 2, 1), (2, 2), (3, 1, 2)])
def test_shuffle_count(alpha):
    n = sum(alpha)
    expect = factorial(n)
    for a in alpha:
        expect //= factorial(a)
    shuffles = list(alpha_shuffles(alpha))
    assert len(shuffles) == len(set(shuffles)) == expect


def test_active_edges_partition():
    G = inversion_graph((3, 2, 1))
    for tree in spanning_trees(G):
        internal, external = active_edges(G, tree)
        assert set(internal) <= tree
        assert not set(external) & tree


def test_json_roundtrip():
    G = inversion_graph((2, 3, 1))
    assert Graph.from_json(G.to_json()) == G


def test_loops_rejected():
    with pytest.raises(ValueError):
        Graph(2, frozenset([(1, 1)]))


def test_tutte_at_one_multiplicative():
    G = Graph(4, frozenset([(1, 2), (3, 4)]))
    assert tutte_at_one(G) == QTPoly(1)
