"""Homogeneous symmetric functions over Q(q, t).

A :class:`SymF` is a sparse map from partitions of its degree to
:class:`~thetatrees.qt.QTRatio` coefficients, tagged with a basis.  The
classical bases ``m, e, h, p, s`` are handled here; the modified Macdonald
basis ``Htilde`` and the ``hhat`` basis register converters from
:mod:`thetatrees.macdonald`.

Transition matrices to the monomial basis are integer matrices counted
combinatorially (0-1 matrices, integer matrices, part assignments and
Kostka numbers); inverses are exact rational matrices cached per degree.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping

import flint

from .qt import M, Q, QTPoly, QTRatio, as_ratio, specialize
from .shapes import Composition, Partition, partitions

__all__ = [
    "CLASSICAL",
    "SymF",
    "SubsetMask",
    "basis_element",
    "m",
    "e",
    "h",
    "p",
    "s",
    "one",
    "convert",
    "hall",
    "omega",
    "pleth_scale",
    "star",
    "multiply",
    "perp",
    "fundamental_content",
    "solve_linear",
    "expand_in",
    "register_basis",
    "X_OVER_M",
    "MX",
    "X_OVER_1MQ",
    "DEFAULT_DEGREE_CAP",
]

CLASSICAL = ("m", "e", "h", "p", "s")
DEFAULT_DEGREE_CAP = 8

# basis tag -> (to_m, from_m) for bases defined elsewhere
_EXTRA: dict[str, tuple[Callable, Callable]] = {}


def register_basis(tag: str, to_m: Callable, from_m: Callable) -> None:
    _EXTRA[tag] = (to_m, from_m)


def _coeff(value) -> QTRatio:
    return value if isinstance(value, QTRatio) else as_ratio(value)


def _wrap(c: QTRatio, compact: bool = True) -> str:
    body = c.render(compact)
    if not c.is_polynomial():
        return f"({body})"
    if len(c.num.terms) > 1:
        return f"({body})"
    return body


class SymF:
    """Homogeneous symmetric function of a fixed degree in a fixed basis."""

    __slots__ = ("degree", "basis", "coeffs")

    def __init__(self, degree: int, basis: str, coeffs: Mapping | None = None):
        if basis not in CLASSICAL and basis not in _EXTRA:
            raise ValueError(f"unknown basis {basis!r}")
        self.degree = int(degree)
        self.basis = basis
        out = {}
        for lam, c in (coeffs or {}).items():
            lam = lam if isinstance(lam, Partition) else Partition(lam)
            if lam.size != self.degree:
                raise ValueError(f"partition {tuple(lam)} has size != {self.degree}")
            c = _coeff(c)
            if c:
                out[lam] = c
        self.coeffs = out

    @classmethod
    def zero(cls, degree: int, basis: str = "m") -> SymF:
        return cls(degree, basis, {})

    @classmethod
    def _raw(cls, degree: int, basis: str, coeffs: dict) -> SymF:
        obj = object.__new__(cls)
        obj.degree, obj.basis = degree, basis
        obj.coeffs = {k: v for k, v in coeffs.items() if v}
        return obj

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, lam) -> QTRatio:
        return self.coeffs.get(Partition(lam), QTRatio())

    def to(self, basis: str) -> SymF:
        return convert(self, basis)

    def map_coefficients(self, fn: Callable[[QTRatio], object]) -> SymF:
        return SymF(self.degree, self.basis, {k: fn(v) for k, v in self.coeffs.items()})

    def specialize(self, q=None, t=None) -> SymF:
        return self.map_coefficients(lambda c: specialize(c, q=q, t=t))

    def _same_basis(self, other: SymF) -> SymF:
        if other.degree != self.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")
        return other if other.basis == self.basis else convert(other, self.basis)

    def __add__(self, other):
        if not isinstance(other, SymF):
            return NotImplemented
        other = self._same_basis(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out[k] + v if k in out else v
        return SymF._raw(self.degree, self.basis, out)

    def __neg__(self):
        return SymF._raw(self.degree, self.basis, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, SymF):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, SymF):
            return multiply(self, other)
        c = _coeff(other)
        if not c:
            return SymF.zero(self.degree, self.basis)
        return SymF._raw(self.degree, self.basis, {k: v * c for k, v in self.coeffs.items()})

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        return self * _coeff(other).inverse()

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymF):
            return NotImplemented
        if self.degree != other.degree:
            return self.is_zero() and other.is_zero()
        if self.basis == other.basis:
            return self.coeffs == other.coeffs
        return convert(self, "m").coeffs == convert(other, "m").coeffs

    def __hash__(self) -> int:
        mm = convert(self, "m")
        return hash((self.degree, frozenset(mm.coeffs.items())))

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        if self.degree == 0:
            return self.coeffs[Partition()].render()
        pieces = []
        for lam in sorted(self.coeffs, reverse=True):
            c = self.coeffs[lam]
            name = f"{self.basis}[{lam}]"
            if c == 1:
                body, neg = name, False
            elif c == -1:
                body, neg = name, True
            elif c.is_polynomial() and len(c.num.terms) == 1:
                neg = c.num.leading_coefficient() < 0
                body = f"{(-c if neg else c).render(True)}*{name}"
            else:
                body, neg = f"{_wrap(c)}*{name}", False
            if not pieces:
                pieces.append(("-" if neg else "") + body)
            else:
                pieces.append((" - " if neg else " + ") + body)
        return "".join(pieces)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"SymF({self.render()!r})"


def basis_element(basis: str, lam) -> SymF:
    lam = Partition(sorted(lam, reverse=True))
    return SymF(lam.size, basis, {lam: 1})


def m(*parts) -> SymF:
    return basis_element("m", parts)


def e(*parts) -> SymF:
    return basis_element("e", parts)


def h(*parts) -> SymF:
    return basis_element("h", parts)


def p(*parts) -> SymF:
    return basis_element("p", parts)


def s(*parts) -> SymF:
    return basis_element("s", parts)


def one() -> SymF:
    return SymF(0, "m", {Partition(): 1})


# ---------------------------------------------------------------------------
# transition matrices


def _count_matrices(rows: tuple[int, ...], cols: tuple[int, ...], binary: bool) -> int:
    @lru_cache(maxsize=None)
    def go(i: int, remaining: tuple[int, ...]) -> int:
        if i == len(rows):
            return 1 if not any(remaining) else 0

        def fill(j: int, left: int, rem: list[int]) -> int:
            if j == len(rem):
                return go(i + 1, tuple(rem)) if left == 0 else 0
            total = 0
            top = min(left, rem[j], 1 if binary else left)
            for x in range(top + 1):
                rem[j] -= x
                total += fill(j + 1, left - x, rem)
                rem[j] += x
            return total

        return fill(0, rows[i], list(remaining))

    return go(0, cols)


def _count_part_assignments(parts: tuple[int, ...], cols: tuple[int, ...]) -> int:
    @lru_cache(maxsize=None)
    def go(i: int, remaining: tuple[int, ...]) -> int:
        if i == len(parts):
            return 1 if not any(remaining) else 0
        total = 0
        for j, r in enumerate(remaining):
            if r >= parts[i]:
                rem = list(remaining)
                rem[j] -= parts[i]
                total += go(i + 1, tuple(rem))
        return total

    return go(0, cols)


@lru_cache(maxsize=None)
def kostka(lam: Partition, mu: tuple[int, ...]) -> int:
    """Number of semistandard tableaux of shape ``lam`` and content ``mu``."""
    if not mu:
        return 1 if not lam else 0
    last = mu[-1]
    total = 0

    # remove a horizontal strip of size `last` from lam
    def strips(i: int, left: int, shape: list[int]):
        nonlocal total
        if i == len(shape):
            if left == 0:
                nu = Partition(x for x in shape if x > 0)
                total += kostka(nu, mu[:-1])
            return
        lower = shape[i + 1] if i + 1 < len(shape) else 0
        for take in range(min(left, shape[i] - lower) + 1):
            shape[i] -= take
            strips(i + 1, left - take, shape)
            shape[i] += take

    strips(0, last, list(lam))
    return total


def _to_m_integer(basis: str, lam: Partition, mu: Partition) -> int:
    if basis == "m":
        return int(lam == mu)
    if basis == "e":
        return _count_matrices(tuple(lam), tuple(mu), True)
    if basis == "h":
        return _count_matrices(tuple(lam), tuple(mu), False)
    if basis == "p":
        return _count_part_assignments(tuple(lam), tuple(mu))
    if basis == "s":
        return kostka(lam, tuple(mu))
    raise ValueError(basis)


_LOCK = threading.Lock()
_TRANSITIONS: dict[tuple[int, str, str], dict] = {}


def _build_pair(n: int, basis: str) -> tuple[dict, dict]:
    parts = partitions(n)
    k = len(parts)
    A = [[_to_m_integer(basis, lam, mu) for mu in parts] for lam in parts]
    inv = flint.fmpq_mat(A).inv()
    to_m = {
        lam: {mu: Fraction(A[i][j]) for j, mu in enumerate(parts) if A[i][j]}
        for i, lam in enumerate(parts)
    }
    from_m = {}
    for i, mu in enumerate(parts):
        row = {}
        for j, lam in enumerate(parts):
            x = inv[i, j]
            if x != 0:
                row[lam] = Fraction(int(x.p), int(x.q))
        from_m[mu] = row
    assert len(to_m) == k
    return to_m, from_m


def transition(n: int, src: str, dst: str) -> dict:
    """Matrix ``T`` with ``src_lam = sum_mu T[lam][mu] dst_mu`` at degree ``n``."""
    key = (n, src, dst)
    cached = _TRANSITIONS.get(key)
    if cached is not None:
        return cached
    if src == dst:
        mat = {lam: {lam: Fraction(1)} for lam in partitions(n)}
    elif dst == "m" or src == "m":
        with _LOCK:
            if key not in _TRANSITIONS:
                basis = src if dst == "m" else dst
                to_m, from_m = _build_pair(n, basis)
                _TRANSITIONS[(n, basis, "m")] = to_m
                _TRANSITIONS[(n, "m", basis)] = from_m
            return _TRANSITIONS[key]
    else:
        first = transition(n, src, "m")
        second = transition(n, "m", dst)
        mat = {}
        for lam, row in first.items():
            out: dict = {}
            for mu, a in row.items():
                for nu, b in second[mu].items():
                    out[nu] = out.get(nu, 0) + a * b
            mat[lam] = {k: v for k, v in out.items() if v}
    return _TRANSITIONS.setdefault(key, mat)


def _apply(f: SymF, mat: dict, basis: str) -> SymF:
    out: dict = {}
    for lam, c in f.coeffs.items():
        for mu, x in mat[lam].items():
            term = c * x
            out[mu] = out[mu] + term if mu in out else term
    return SymF._raw(f.degree, basis, out)


def convert(f: SymF, to: str) -> SymF:
    """Rewrite ``f`` in the basis ``to``."""
    if f.basis == to:
        return f
    if to not in CLASSICAL and to not in _EXTRA:
        raise ValueError(f"unsupported target basis {to!r}")
    if f.degree == 0:
        return SymF._raw(0, to, dict(f.coeffs))
    if f.basis in _EXTRA:
        f = _EXTRA[f.basis][0](f)
        if to == "m":
            return f
    if to in _EXTRA:
        return _EXTRA[to][1](convert(f, "m"))
    return _apply(f, transition(f.degree, f.basis, to), to)


# ---------------------------------------------------------------------------
# scalar products and operators


def hall(f: SymF, g: SymF) -> QTRatio:
    """Hall scalar product (Schur functions orthonormal)."""
    if f.degree != g.degree:
        return QTRatio()
    fm = convert(f, "m")
    gh = convert(g, "h")
    total = QTRatio()
    for lam, c in fm.coeffs.items():
        d = gh.coeffs.get(lam)
        if d is not None:
            total = total + c * d
    return total


def _sign(lam: Partition) -> int:
    return -1 if (lam.size - len(lam)) % 2 else 1


def omega(f: SymF) -> SymF:
    """The involution exchanging e_n and h_n."""
    if f.basis == "e":
        return SymF._raw(f.degree, "h", dict(f.coeffs))
    if f.basis == "h":
        return SymF._raw(f.degree, "e", dict(f.coeffs))
    if f.basis == "s":
        return SymF._raw(f.degree, "s", {lam.conjugate(): c for lam, c in f.coeffs.items()})
    if f.basis == "p":
        return SymF._raw(f.degree, "p", {lam: c * _sign(lam) for lam, c in f.coeffs.items()})
    back = f.basis
    return convert(omega(convert(f, "h")), back)


Scaling = Callable[[int], QTRatio]


def _scaling(r) -> Scaling:
    if callable(r):
        return r
    r = as_ratio(r)

    @lru_cache(maxsize=None)
    def at(k: int) -> QTRatio:
        return r.compose(QTPoly.monomial(k, 0), QTPoly.monomial(0, k))

    return at


def pleth_scale(f: SymF, r) -> SymF:
    """Plethystic alphabet scaling ``p_k -> r(q^k, t^k) p_k``; result in the p basis.

    ``r`` is either a QTRatio (read as a rational function of q, t) or a
    callable mapping ``k`` to the factor for ``p_k``.
    """
    at = _scaling(r)
    fp = convert(f, "p")
    out = {}
    for lam, c in fp.coeffs.items():
        factor = QTRatio(1)
        for k in lam:
            factor = factor * at(k)
        out[lam] = c * factor
    return SymF._raw(f.degree, "p", out)


X_OVER_M = QTRatio(1) / M
MX = QTRatio(M)
X_OVER_1MQ = QTRatio(1) / (1 - Q)


def star(f: SymF, g: SymF) -> QTRatio:
    """Star scalar product <f, omega g[MX]>."""
    return hall(f, omega(pleth_scale(g, MX)))


_MULTIPLICATIVE = ("e", "h", "p")


def multiply(f: SymF, g: SymF) -> SymF:
    if f.degree == 0 or g.degree == 0:
        scalar, other = (f, g) if f.degree == 0 else (g, f)
        return other * scalar.coeffs.get(Partition(), QTRatio())
    if f.basis in _MULTIPLICATIVE:
        base = f.basis
    elif g.basis in _MULTIPLICATIVE:
        base = g.basis
    else:
        base = "p"
    fb, gb = convert(f, base), convert(g, base)
    out: dict = {}
    for lam, a in fb.coeffs.items():
        for mu, b in gb.coeffs.items():
            nu = Partition(sorted(lam + mu, reverse=True))
            term = a * b
            out[nu] = out[nu] + term if nu in out else term
    prod = SymF._raw(f.degree + g.degree, base, out)
    return convert(prod, f.basis if f.basis in CLASSICAL else "m")


def perp(f: SymF, F: SymF) -> SymF:
    """Adjoint of multiplication by ``f`` for the Hall product; result in the m basis."""
    k = F.degree - f.degree
    if k < 0:
        return SymF.zero(0, "m")
    fh = convert(f, "h")
    Fm = convert(F, "m")
    out = {}
    for mu in partitions(k):
        total = QTRatio()
        for nu, a in fh.coeffs.items():
            kappa = Partition(sorted(nu + mu, reverse=True))
            c = Fm.coeffs.get(kappa)
            if c is not None:
                total = total + a * c
        out[mu] = total
    return SymF._raw(k, "m", out)


# ---------------------------------------------------------------------------
# Gessel fundamental quasisymmetric functions


@dataclass(frozen=True)
class SubsetMask:
    n: int
    S: frozenset

    def __post_init__(self):
        if self.n < 0 or any(not (1 <= a <= self.n - 1) for a in self.S):
            raise ValueError(f"{set(self.S)} is not a subset of 1..{self.n - 1}")

    @classmethod
    def of(cls, n: int, S: Iterable[int]) -> SubsetMask:
        return cls(n, frozenset(S))


def fundamental_content(mask: SubsetMask, content: Iterable[int]) -> int:
    """Coefficient of ``x^content`` in Gessel's ``Q_{S,n}``.

    Zero entries in ``content`` are allowed (absent variables).
    """
    content = tuple(content)
    if sum(content) != mask.n:
        raise ValueError("content size must equal n")
    word = [i for i, c in enumerate(content, start=1) for _ in range(c)]
    return int(all(word[a - 1] < word[a] for a in mask.S))


def solve_linear(rows: list[list[QTRatio]], rhs: list[QTRatio]) -> list[QTRatio]:
    """Solve a square system over Q(q, t) by Gaussian elimination."""
    n = len(rows)
    A = [list(r) + [b] for r, b in zip(rows, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if A[r][col]), None)
        if pivot is None:
            raise ZeroDivisionError("singular system")
        A[col], A[pivot] = A[pivot], A[col]
        inv = A[col][col].inverse()
        A[col] = [x * inv for x in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                factor = A[r][col]
                A[r] = [x - factor * y for x, y in zip(A[r], A[col])]
    return [A[r][n] for r in range(n)]


def expand_in(F: SymF, elements: list[SymF]) -> list[QTRatio]:
    """Coefficients ``c`` with ``F = sum c_i elements_i`` (elements must span F's degree)."""
    parts = partitions(F.degree)
    if len(elements) != len(parts):
        raise ValueError("need exactly one element per partition")
    cols = [convert(g, "m") for g in elements]
    Fm = convert(F, "m")
    rows = [[g.coefficient(lam) for g in cols] for lam in parts]
    return solve_linear(rows, [Fm.coefficient(lam) for lam in parts])
