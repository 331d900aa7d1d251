from math import factorial, prod

import pytest
from hypothesis import given
from hypothesis import strategies as st

from thetatrees.qt import Q, T
from thetatrees.shapes import (
    Composition,
    Partition,
    compositions,
    constants,
    fiber_formula,
    limbs,
    partitions,
    phi,
    phi_fiber_size,
    rst1_of,
    syt_of,
)

partition_st = st.integers(0, 8).flatmap(lambda n: st.sampled_from(partitions(n)))


def hook_count(lam):
    hooks = [limbs(lam, c).arm + limbs(lam, c).leg + 1 for c in lam.cells()]
    return factorial(lam.size) // prod(hooks)


def test_limbs_of_pictured_cell():
    # [PAPER] the drawn diagram: cell in column 3, row 4
    mu = Partition((9, 8, 7, 7, 4, 4, 3, 2))
    assert limbs(mu, (3, 4)) == (4, 3, 2, 3)


def test_limbs_outside_raises():
    with pytest.raises(ValueError):
        limbs(Partition((2, 1)), (2, 2))


def test_bad_partitions():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Composition((1, 0))


def test_counts():
    assert [len(partitions(n)) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
    assert sum(1 for _ in compositions(5)) == 16
    assert partitions(3)[0] == (3,)


def test_constants_small():
    c = constants(Partition((2, 1)))
    assert c.B == 1 + Q + T
    assert c.Pi == (1 - Q) * (1 - T)
    assert (c.n_mu, c.n_mu_conj) == (1, 1)


@given(partition_st)
def test_conjugate_involution(lam):
    assert lam.conjugate().conjugate() == lam
    assert lam.conjugate().size == lam.size


@given(partition_st)
def test_syt_hook_length(lam):
    assert len(syt_of(lam)) == hook_count(lam)


@given(partition_st)
def test_b_swaps_under_conjugation(lam):
    a, b = constants(lam), constants(lam.conjugate())
    assert b.B == a.B.compose(T, Q)


@pytest.mark.parametrize("n", range(1, 6))
def test_phi_fiber_formula(n):
    for lam in partitions(n):
        for tab in syt_of(lam):
            assert phi_fiber_size(tab) == fiber_formula(tab)


def test_phi_lands_on_sorted_shape():
    for alpha in compositions(4):
        for C in rst1_of(alpha):
            assert phi(C).shape == alpha.sorted()
