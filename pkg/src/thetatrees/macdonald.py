"""Modified Macdonald polynomials and the operators diagonal in their basis.

``H~_mu`` is computed from the inv/maj statistics on fillings of ``mu``
(summed over standard fillings and expanded through fundamental
quasisymmetric functions).  Every eigen-operator goes through the same
change of basis: the coefficient of ``H~_mu`` in ``F`` is
``<F, H~_mu>_* / w_mu``, computed as a Hall product against the precomputed
dual vector ``omega H~_mu[MX]``.
"""

from __future__ import annotations

import threading
from collections import Counter, defaultdict
from dataclasses import dataclass
from itertools import permutations
from math import comb, factorial
from typing import Callable

from .qt import M, Q, QTPoly, QTRatio, as_ratio, q_pochhammer, specialize
from .shapes import (
    Partition,
    compositions,
    constants,
    limbs,
    partitions,
    rst1_of,
    syt_of,
    total_L,
)
from .symfunc import (
    DEFAULT_DEGREE_CAP,
    MX,
    X_OVER_1MQ,
    X_OVER_M,
    SubsetMask,
    SymF,
    basis_element,
    convert,
    e,
    expand_in,
    fundamental_content,
    multiply,
    omega,
    one,
    perp,
    pleth_scale,
    register_basis,
)

__all__ = [
    "MacdonaldCache",
    "CACHE",
    "PieriPair",
    "htilde",
    "to_htilde",
    "from_htilde",
    "eigen_operator",
    "nabla",
    "delta",
    "pi_op",
    "theta",
    "pieri_one",
    "pieri_linear",
    "pieri_t1_limit",
    "hhat",
    "theta_t1_syt",
    "theta_t1_rst",
    "macdonald_row_identity",
    "macdonald_row_sides",
    "theta_symmetric",
    "a_series",
    "e_ones",
]


class DegreeCapError(ValueError):
    pass


def _reading_cells(mu: Partition) -> list[tuple[int, int]]:
    return [(col, row) for row in range(len(mu), 0, -1) for col in range(1, mu[row - 1] + 1)]


def _hhl_counts(mu: Partition) -> dict[int, Counter]:
    """Map descent-mask of the inverse reading word -> Counter{(inv, maj): count}."""
    cells = _reading_cells(mu)
    n = len(cells)
    index = {c: i for i, c in enumerate(cells)}
    attacks = []
    for i, (c1, r1) in enumerate(cells):
        for j in range(i + 1, n):
            c2, r2 = cells[j]
            if r1 == r2 or (r2 == r1 - 1 and c1 > c2):
                attacks.append((i, j))
    descents = []  # (upper index, lower index, leg + 1, arm)
    for (col, row), i in index.items():
        if row >= 2:
            lim = limbs(mu, (col, row))
            descents.append((i, index[(col, row - 1)], lim.leg + 1, lim.arm))

    out: dict[int, Counter] = defaultdict(Counter)
    for word in permutations(range(1, n + 1)):
        inv = sum(1 for i, j in attacks if word[i] > word[j])
        maj = 0
        for i, j, leg1, arm in descents:
            if word[i] > word[j]:
                maj += leg1
                inv -= arm
        pos = [0] * (n + 1)
        for i, x in enumerate(word):
            pos[x] = i
        mask = 0
        for k in range(1, n):
            if pos[k + 1] < pos[k]:
                mask |= 1 << k
        out[mask][(inv, maj)] += 1
    return out


def _mask_set(mask: int, n: int) -> frozenset:
    return frozenset(k for k in range(1, n) if mask >> k & 1)


def htilde_fillings(mu: Partition) -> SymF:
    """H~_mu in the m basis from the inv/maj sum over fillings."""
    mu = Partition(mu)
    n = mu.size
    if n == 0:
        return one()
    counts = _hhl_counts(mu)
    polys = {mask: QTPoly(dict(c)) for mask, c in counts.items()}
    coeffs = {}
    for lam in partitions(n):
        total = QTPoly(0)
        for mask, poly in polys.items():
            if fundamental_content(SubsetMask(n, _mask_set(mask, n)), lam):
                total = total + poly
        coeffs[lam] = QTRatio(total)
    return SymF(n, "m", coeffs)


class MacdonaldCache:
    """Per-degree store of H~_mu (m basis) and their star-duals (h basis).

    Degrees are built on demand under a lock; a finished degree is never
    mutated again, so readers need no locking.
    """

    def __init__(self, max_degree: int = DEFAULT_DEGREE_CAP):
        self.max_degree = max_degree
        self.htilde_m: dict[Partition, SymF] = {}
        self._dual: dict[Partition, dict] = {}
        self._done: set[int] = set()
        self._lock = threading.Lock()

    def ensure(self, n: int) -> None:
        if n in self._done:
            return
        if n > self.max_degree:
            raise DegreeCapError(f"degree {n} exceeds the cap {self.max_degree}")
        with self._lock:
            if n in self._done:
                return
            for mu in partitions(n):
                H = htilde_fillings(mu)
                dual = convert(omega(pleth_scale(H, MX)), "h")
                self.htilde_m[mu] = H
                self._dual[mu] = dual.coeffs
            self._done.add(n)

    def htilde(self, mu: Partition) -> SymF:
        mu = Partition(mu)
        self.ensure(mu.size)
        return self.htilde_m[mu]

    def expand(self, F: SymF) -> dict[Partition, QTRatio]:
        """Coefficients of ``F`` in the H~ basis."""
        if F.degree == 0:
            return {Partition(): F.coeffs.get(Partition(), QTRatio())}
        self.ensure(F.degree)
        Fm = convert(F, "m")
        out = {}
        for mu in partitions(F.degree):
            dual = self._dual[mu]
            total = QTRatio()
            for lam, c in Fm.coeffs.items():
                d = dual.get(lam)
                if d is not None:
                    total = total + c * d
            if total:
                out[mu] = total / constants(mu).w
        return out

    def combine(self, degree: int, coeffs: dict) -> SymF:
        if degree == 0:
            return SymF(0, "m", {Partition(): coeffs.get(Partition(), 0)})
        self.ensure(degree)
        acc: dict = {}
        for mu, c in coeffs.items():
            for lam, x in self.htilde_m[mu].coeffs.items():
                term = c * x
                acc[lam] = acc[lam] + term if lam in acc else term
        return SymF(degree, "m", acc)


CACHE = MacdonaldCache()


def htilde(mu) -> SymF:
    return CACHE.htilde(mu)


def to_htilde(F: SymF) -> SymF:
    return SymF(F.degree, "Htilde", CACHE.expand(F))


def from_htilde(F: SymF) -> SymF:
    return CACHE.combine(F.degree, F.coeffs)


# ---------------------------------------------------------------------------
# eigen-operators


def eigen_operator(F: SymF, eigenvalue: Callable[[Partition], object]) -> SymF:
    """Apply the operator with ``H~_mu -> eigenvalue(mu) H~_mu``; result in the m basis."""
    coeffs = CACHE.expand(F)
    scaled = {mu: c * as_ratio(eigenvalue(mu)) for mu, c in coeffs.items()}
    return CACHE.combine(F.degree, scaled)


def nabla(F: SymF) -> SymF:
    def eig(mu):
        k = constants(mu)
        return QTPoly.monomial(k.n_mu_conj, k.n_mu)

    return eigen_operator(F, eig)


def _power_at_B(mu: Partition, k: int, shift: int) -> QTRatio:
    total = QTPoly(-shift)
    for col, row in mu.cells():
        total = total + QTPoly.monomial(k * (col - 1), k * (row - 1))
    return QTRatio(total)


def plethysm_at_B(f: SymF, mu: Partition, primed: bool = False) -> QTRatio:
    """``f[B_mu]`` (or ``f[B_mu - 1]``) for a scalar alphabet."""
    shift = 1 if primed else 0
    fp = convert(f, "p")
    total = QTRatio()
    for lam, c in fp.coeffs.items():
        term = c
        for k in lam:
            term = term * _power_at_B(mu, k, shift)
        total = total + term
    return total


def delta(f: SymF, F: SymF, primed: bool = False) -> SymF:
    return eigen_operator(F, lambda mu: plethysm_at_B(f, mu, primed))


def pi_op(F: SymF, inverse: bool = False) -> SymF:
    def eig(mu):
        pi = QTRatio(constants(mu).Pi)
        return pi.inverse() if inverse else pi

    return eigen_operator(F, eig)


def theta(f: SymF, F: SymF) -> SymF:
    """Theta_f F, degree ``deg f + deg F``; result in the m basis."""
    if f.degree >= 1 and F.degree == 0:
        return SymF.zero(f.degree, "m")
    if f.degree == 0 and F.degree == 0:
        return convert(multiply(f, F), "m")
    inner = pi_op(F, inverse=True)
    return pi_op(multiply(pleth_scale(f, X_OVER_M), inner))


def e_ones(k: int) -> SymF:
    """e_{1^k} = e_1^k (1 when k = 0)."""
    return basis_element("e", (1,) * k) if k else one()


# ---------------------------------------------------------------------------
# Pieri coefficients


@dataclass(frozen=True)
class PieriPair:
    mu: Partition
    nu: Partition
    c: QTRatio
    d: QTRatio


def _removed_cell(mu: Partition, nu: Partition) -> tuple[int, int]:
    if mu.size != nu.size + 1:
        raise ValueError(f"{tuple(nu)} is not obtained from {tuple(mu)} by removing one cell")
    diff = [cell for cell in mu.cells() if cell not in nu]
    if len(diff) != 1 or any(cell not in mu for cell in nu.cells()):
        raise ValueError(f"{tuple(nu)} is not obtained from {tuple(mu)} by removing one cell")
    return diff[0]


def pieri_one(mu, nu) -> PieriPair:
    """c^{(1)}_{mu nu} from the co-arm/co-leg product, d^{(1)} from w_nu c = w_mu d."""
    mu, nu = Partition(mu), Partition(nu)
    col, row = _removed_cell(mu, nu)
    c = QTRatio(1)
    q, t = QTPoly.monomial, lambda j: QTPoly.monomial(0, j)
    for a in range(1, col):
        arm, leg = limbs(mu, (a, row))[:2]
        c = c * QTRatio(q(arm + 1, 0) - t(leg), q(arm, 0) - t(leg))
    for b in range(1, row):
        arm, leg = limbs(mu, (col, b))[:2]
        c = c * QTRatio(t(leg + 1) - q(arm, 0), t(leg) - q(arm, 0))
    d = c * QTRatio(constants(nu).w, constants(mu).w)
    return PieriPair(mu, nu, c, d)


def pieri_linear(mu, nu) -> PieriPair:
    """Same coefficients read off from expanding h_1^perp H~_mu and e_1[X/M] H~_nu."""
    mu, nu = Partition(mu), Partition(nu)
    _removed_cell(mu, nu)
    down = CACHE.expand(perp(basis_element("h", (1,)), htilde(mu)))
    star_e1 = pleth_scale(e(1), X_OVER_M)
    up = CACHE.expand(multiply(star_e1, htilde(nu)))
    return PieriPair(mu, nu, down.get(nu, QTRatio()), up.get(mu, QTRatio()))


def pieri_t1_limit(mu, nu) -> QTRatio:
    """(c Pi_mu w_mu / (Pi_nu w_nu)) at t = 1, evaluated from the closed form."""
    mu, nu = Partition(mu), Partition(nu)
    pair = pieri_one(mu, nu)
    k_mu, k_nu = constants(mu), constants(nu)
    ratio = pair.c * QTRatio(k_mu.Pi * k_mu.w, k_nu.Pi * k_nu.w)
    return specialize(ratio, t=1)


# ---------------------------------------------------------------------------
# the hhat basis and the t = 1 expansions


def _hhat_single(i: int) -> SymF:
    if i == 0:
        return one()
    return convert(pleth_scale(basis_element("h", (i,)), X_OVER_1MQ), "m") * QTRatio(q_pochhammer(i))


def hhat(mu) -> SymF:
    """prod_i (q;q)_{mu_i} h_{mu_i}[X/(1-q)] in the m basis."""
    mu = Partition(sorted(mu, reverse=True))
    out = one()
    for part in mu:
        out = multiply(out, _hhat_single(part)) if out.degree else _hhat_single(part)
    return convert(out, "m")


def _hhat_to_m(F: SymF) -> SymF:
    acc = SymF.zero(F.degree, "m")
    for mu, c in F.coeffs.items():
        acc = acc + hhat(mu) * c
    return acc


def _hhat_from_m(F: SymF) -> SymF:
    parts = partitions(F.degree)
    coeffs = expand_in(F, [hhat(mu) for mu in parts])
    return SymF(F.degree, "hhat", dict(zip(parts, coeffs)))


def _assert_polynomial(F: SymF) -> SymF:
    bad = [lam for lam, c in F.coeffs.items() if not c.is_polynomial()]
    if bad:
        raise ArithmeticError(f"expected polynomial coefficients, got a denominator at {bad[0]}")
    return F


def theta_t1_syt(n: int, k: int) -> SymF:
    """(Theta_{e_{1^{n-k}}} e_1) at t = 1 via the weighted tableau sum over hhat."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    size = n - k + 1
    scale = QTRatio(1) / QTRatio(Q - 1) ** (n - k)
    acc = SymF.zero(size, "m")
    for mu in partitions(size):
        ell = len(mu)
        weight = sum(total_L(T) for T in syt_of(mu))
        sign_fact = (-1) ** (ell - 1) * factorial(ell - 1)
        acc = acc + hhat(mu) * (scale * (sign_fact * weight))
    return _assert_polynomial(acc)


def theta_t1_rst(n: int, k: int) -> SymF:
    """Same function via row-strict tableaux counted over compositions."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    size = n - k + 1
    scale = QTRatio(1) / QTRatio(Q - 1) ** (n - k)
    acc = SymF.zero(size, "m")
    for alpha in compositions(size):
        count = len(rst1_of(alpha))
        sign = (-1) ** (len(alpha) - 1)
        acc = acc + hhat(alpha) * (scale * (sign * count))
    return _assert_polynomial(acc)


def _theta_ones_t1(j: int) -> SymF:
    return theta(e_ones(j), e(1)).specialize(t=1)


def macdonald_row_sides(n: int) -> tuple[SymF, SymF]:
    """H~_{(n+1)} and sum_k C(n,k) (q-1)^{n-k} H~_{(k)} (Theta_{e_{1^{n-k}}} e_1)|_{t=1}."""
    lhs = htilde((n + 1,))
    rhs = SymF.zero(n + 1, "m")
    for k in range(n + 1):
        term = multiply(htilde((k,)), _theta_ones_t1(n - k)) if k else _theta_ones_t1(n)
        rhs = rhs + convert(term, "m") * (comb(n, k) * QTRatio(Q - 1) ** (n - k))
    return lhs, convert(rhs, "m")


def macdonald_row_identity(n: int) -> bool:
    lhs, rhs = macdonald_row_sides(n)
    return lhs == rhs


def theta_symmetric(lam) -> SymF:
    """Delta_{e_1} M Pi(e_lam[X/M]), the generating function with the root label set aside."""
    lam = Partition(sorted(lam, reverse=True))
    star = pleth_scale(basis_element("e", lam), X_OVER_M)
    return delta(e(1), pi_op(star) * QTRatio(M))


_A_SERIES: dict[int, SymF] = {}


def a_series(n: int) -> SymF:
    """A_n(X; q) obtained by inverting the single-row Macdonald recursion."""
    if n < 1:
        raise ValueError("n must be positive")
    if n in _A_SERIES:
        return _A_SERIES[n]
    rest = SymF.zero(n, "m")
    for k in range(1, n):
        term = multiply(htilde((k,)), a_series(n - k))
        rest = rest + convert(term, "m") * (comb(n - 1, k) * QTRatio(Q - 1) ** (n - 1 - k))
    out = (htilde((n,)) - rest) / QTRatio(Q - 1) ** (n - 1)
    out = _assert_polynomial(convert(out, "m"))
    _A_SERIES[n] = out
    return out


register_basis("Htilde", from_htilde, to_htilde)
register_basis("hhat", _hhat_to_m, _hhat_from_m)
