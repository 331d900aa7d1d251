from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from thetatrees.qt import M, Q, T, PoleError, QTPoly, QTRatio, as_ratio, q_pochhammer, specialize

small_terms = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)), st.integers(-5, 5), max_size=5
)
polys = small_terms.map(QTPoly)
nonzero = polys.filter(lambda p: not p.is_zero())


def test_render_orders_by_degree():
    assert (Q * Q + 2 * Q * T - 3).render() == "q^2 + 2*q*t - 3"
    assert QTPoly(0).render() == "0"


def test_m_is_product():
    assert M == 1 - Q - T + Q * T


def test_ratio_is_reduced():
    r = QTRatio((1 - Q) * (1 + Q), 1 - Q)
    assert r.is_polynomial()
    assert r.as_poly() == 1 + Q


def test_rational_constants():
    assert as_ratio(Fraction(1, 2)) * 2 == 1
    assert QTRatio(3, 6) == QTRatio(1, 2)


def test_specialize_removable_singularity():
    r = QTRatio(1 - T**3, 1 - T)
    assert specialize(r, t=1) == 3


def test_specialize_pole():
    with pytest.raises(PoleError):
        specialize(QTRatio(1, 1 - T), t=1)


def test_q_pochhammer():
    assert q_pochhammer(2) == (1 - Q) * (1 - Q * Q)
    assert q_pochhammer(0) == 1


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a - a).is_zero()


@given(polys, nonzero)
def test_division_roundtrip(a, b):
    assert QTRatio(a, b) * b == a


@given(nonzero, nonzero)
def test_ratio_inverse(a, b):
    r = QTRatio(a, b)
    assert r * r.inverse() == 1
    assert hash(QTRatio(a * b, b * b)) == hash(QTRatio(a, b))


@given(polys, st.integers(-3, 3), st.integers(-3, 3))
def test_specialize_matches_evaluation(a, x, y):
    direct = sum(c * x**i * y**j for (i, j), c in a.terms.items())
    assert specialize(a, q=x, t=y) == direct
