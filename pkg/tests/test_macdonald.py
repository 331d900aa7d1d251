import pytest

from thetatrees.macdonald import (
    a_series,
    delta,
    e_ones,
    from_htilde,
    htilde,
    macdonald_row_identity,
    nabla,
    pi_op,
    pieri_linear,
    pieri_one,
    theta,
    theta_t1_rst,
    theta_t1_syt,
    to_htilde,
)
from thetatrees.qt import M, Q, T, QTRatio
from thetatrees.shapes import Partition, partitions
from thetatrees.symfunc import convert, e, one, pleth_scale, s, star
from thetatrees.trees import enumerate_rtt, tree_enumerator

SMALL = [mu for n in range(1, 5) for mu in partitions(n)]


def test_htilde_frozen():
    # [DERIVED] independently checked by the triangularity test below
    assert htilde((2, 1)) == s(3) + s(2, 1) * QTRatio(Q + T) + s(1, 1, 1) * QTRatio(Q * T)
    assert htilde((3,)) == s(3) + s(2, 1) * QTRatio(Q * Q + Q) + s(1, 1, 1) * QTRatio(Q**3)


def _support(F):
    return [lam for lam, c in convert(F, "s").coeffs.items() if c != 0]


@pytest.mark.parametrize("mu", SMALL, ids=str)
def test_htilde_triangularity(mu):
    """Defining properties: triangular after X -> X(1-q) and X -> X(1-t), normalized on s_n."""
    H = htilde(mu)
    for lam in _support(pleth_scale(H, 1 - Q)):
        assert lam.dominates(mu)
    for lam in _support(pleth_scale(H, 1 - T)):
        assert lam.dominates(mu.conjugate())
    assert convert(H, "s").coefficient(Partition((mu.size,))) == 1


@pytest.mark.parametrize("n", [2, 3, 4])
def test_htilde_star_orthogonal(n):
    for mu in partitions(n):
        for nu in partitions(n):
            if mu != nu:
                assert star(htilde(mu), htilde(nu)) == 0


def test_nabla_e2():
    assert nabla(e(2)) == s(2) + s(1, 1) * QTRatio(Q + T)


def test_htilde_roundtrip():
    F = s(2, 1) + e(3)
    assert from_htilde(to_htilde(F)) == convert(F, "m")


def test_pi_inverse():
    F = s(2, 1)
    assert pi_op(pi_op(F), inverse=True) == convert(F, "m")


def test_delta_e1_on_htilde():
    mu = Partition((2, 1))
    assert delta(e(1), htilde(mu)) == htilde(mu) * QTRatio(1 + Q + T)


def test_theta_degenerate():
    assert theta(one(), e(2)) == e(2)
    assert e_ones(0) == one()


@pytest.mark.parametrize("mu", [mu for n in range(2, 5) for mu in partitions(n)], ids=str)
def test_pieri_routes_agree(mu):
    for n in (mu.size - 1,):
        for nu in partitions(n):
            if all(a <= b for a, b in zip(tuple(nu) + (0,) * len(mu), mu)) and len(nu) <= len(mu):
                assert pieri_one(mu, nu) == pieri_linear(mu, nu)


def test_pieri_empty():
    assert pieri_one(Partition((1,)), Partition()).c == 1


@pytest.mark.parametrize("n", range(1, 5))
def test_syt_equals_rst(n):
    for k in range(n):
        assert theta_t1_syt(n, k) == theta_t1_rst(n, k)


@pytest.mark.parametrize("n", range(0, 5))
def test_row_identity(n):
    assert macdonald_row_identity(n)


def test_a_series_small():
    assert a_series(1) == convert(e(1), "m")
    A3 = convert(a_series(3), "m")
    # coefficient of m_111 counts trees with content (1,1,1) by inversions
    trees = tree_enumerator(enumerate_rtt((1, 1), (1, 1, 1)))
    assert A3.coefficient(Partition((1, 1, 1))) == QTRatio(trees)
    assert trees == Q + 4
