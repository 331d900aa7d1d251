import itertools

import pytest
import sympy
from sympy.combinatorics import Permutation
from hypothesis import given
from hypothesis import strategies as st

from thetatrees.qt import M, Q, T, QTRatio
from thetatrees.shapes import Partition, partitions
from thetatrees.symfunc import (
    SubsetMask,
    SymF,
    basis_element,
    convert,
    e,
    fundamental_content,
    h,
    hall,
    kostka,
    multiply,
    omega,
    p,
    perp,
    pleth_scale,
    s,
    star,
)

BASES = ("m", "e", "h", "p", "s")


def jacobi_trudi(lam):
    """det(h_{lam_i - i + j}) expanded with our own product."""
    k = len(lam)
    total = None
    for perm in itertools.permutations(range(k)):
        sign = Permutation(list(perm)).signature()
        idx = [lam[i] - i + perm[i] for i in range(k)]
        if any(x < 0 for x in idx):
            continue
        parts = sorted((x for x in idx if x > 0), reverse=True)
        term = basis_element("h", parts) * sign
        total = term if total is None else total + term
    return total


@pytest.mark.parametrize("lam", [lam for n in range(1, 6) for lam in partitions(n)])
def test_schur_jacobi_trudi(lam):
    assert s(*lam) == jacobi_trudi(lam)


def power_sum_poly(lam, xs):
    return sympy.prod([sum(x**k for x in xs) for k in lam])


@pytest.mark.parametrize("n", [3, 4])
def test_p_to_m_against_sympy(n):
    # expand p_lambda in n variables and read monomial coefficients
    xs = sympy.symbols(f"x1:{n + 1}")
    for lam in partitions(n):
        poly = sympy.Poly(sympy.expand(power_sum_poly(lam, xs)), *xs)
        ours = convert(p(*lam), "m")
        for mu in partitions(n):
            exps = tuple(mu) + (0,) * (n - len(mu))
            assert ours.coefficient(mu) == int(poly.coeff_monomial(exps))


def test_kostka_small():
    assert kostka(Partition((2, 1)), (1, 1, 1)) == 2
    assert kostka(Partition((3,)), (2, 1)) == 1


def test_star_e1_e1_is_m():
    # no sign: omega cancels the one from pleth of p_1 by M
    assert star(e(1), e(1)) == QTRatio(M)


def test_hall_orthonormal_schur():
    for lam in partitions(4):
        for mu in partitions(4):
            assert hall(s(*lam), s(*mu)) == (1 if lam == mu else 0)


def test_hall_degree_mismatch():
    assert hall(e(2), e(1)) == 0


@pytest.mark.parametrize("n", range(1, 6))
def test_omega_involution_and_e_h(n):
    for lam in partitions(n):
        assert omega(e(*lam)) == h(*lam)
        assert omega(omega(s(*lam))) == s(*lam)
        assert omega(s(*lam)) == s(*lam.conjugate())


def test_perp_h1_on_h2():
    assert perp(h(1), h(2)) == h(1)
    assert perp(e(1), e(1, 1)) == 2 * e(1)


def test_multiply_pieri():
    assert multiply(s(1), s(1)) == s(2) + s(1, 1)


def test_pleth_scale_identity():
    f = s(2, 1)
    assert pleth_scale(f, 1) == f


def test_render():
    assert (s(2) + s(1, 1) * QTRatio(Q + T)).render() == "s[2] + (q+t)*s[1,1]"


def test_unknown_basis():
    with pytest.raises(ValueError):
        SymF(1, "zz", {})


def test_fundamental_content():
    assert fundamental_content(SubsetMask.of(3, {1}), (1, 2)) == 1
    assert fundamental_content(SubsetMask.of(3, {2}), (1, 2)) == 0
    with pytest.raises(ValueError):
        SubsetMask.of(3, {3})


coeffs = st.integers(-3, 3)


@st.composite
def symfs(draw, n=3):
    basis = draw(st.sampled_from(BASES))
    return SymF(n, basis, {lam: draw(coeffs) for lam in partitions(n)})


@given(symfs(), st.sampled_from(BASES))
def test_convert_roundtrip(f, target):
    assert convert(convert(f, target), f.basis) == f


@given(symfs(), symfs())
def test_hall_symmetric(f, g):
    assert hall(f, g) == hall(g, f)
