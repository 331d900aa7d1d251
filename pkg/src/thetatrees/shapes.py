"""Partitions, compositions, cells and tableaux.

Rows are numbered from the bottom (French convention) and cells are
``(column, row)`` pairs, both 1-based.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import combinations, permutations
from math import factorial
from typing import Iterator, NamedTuple

from .qt import QTPoly

__all__ = [
    "Partition",
    "Composition",
    "partitions",
    "compositions",
    "Limbs",
    "limbs",
    "MuConstants",
    "constants",
    "StdYoungTableau",
    "RowStrictTableau",
    "syt_of",
    "shifted_leg_length",
    "total_L",
    "rst1_of",
    "phi",
    "phi_fiber_size",
    "fiber_formula",
]


def _parse_parts(text: str) -> tuple[int, ...]:
    text = text.strip()
    if text in ("", "()", "0", "-"):
        return ()
    try:
        return tuple(int(x) for x in text.replace(" ", "").strip("()[]").split(",") if x != "")
    except ValueError:
        raise ValueError(f"cannot parse parts from {text!r}") from None


class Partition(tuple):
    """Weakly decreasing tuple of positive integers; ``Partition()`` is the empty one."""

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def parse(cls, text: str) -> Partition:
        return cls(_parse_parts(text))

    @property
    def size(self) -> int:
        return sum(self)

    def conjugate(self) -> Partition:
        if not self:
            return Partition()
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def cells(self) -> Iterator[tuple[int, int]]:
        for row, length in enumerate(self, start=1):
            for col in range(1, length + 1):
                yield (col, row)

    def __contains__(self, cell) -> bool:
        if not (isinstance(cell, tuple) and len(cell) == 2):
            return tuple.__contains__(self, cell)
        col, row = cell
        return 1 <= row <= len(self) and 1 <= col <= self[row - 1]

    def n(self) -> int:
        """n(mu) = sum (i-1) mu_i."""
        return sum(i * p for i, p in enumerate(self))

    def dominates(self, other: Partition) -> bool:
        a = b = 0
        for i in range(max(len(self), len(other))):
            a += self[i] if i < len(self) else 0
            b += other[i] if i < len(other) else 0
            if a < b:
                return False
        return True

    def __str__(self) -> str:
        return ",".join(map(str, self))

    def __repr__(self) -> str:
        return f"Partition({tuple(self)!r})"


class Composition(tuple):
    """Tuple of positive integers."""

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"composition parts must be positive: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def parse(cls, text: str) -> Composition:
        return cls(_parse_parts(text))

    @property
    def size(self) -> int:
        return sum(self)

    def sorted(self) -> Partition:
        return Partition(sorted(self, reverse=True))

    def __str__(self) -> str:
        return ",".join(map(str, self))

    def __repr__(self) -> str:
        return f"Composition({tuple(self)!r})"


@lru_cache(maxsize=None)
def _partitions(n: int, largest: int) -> tuple[Partition, ...]:
    if n == 0:
        return (Partition(),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            out.append(Partition((first,) + rest))
    return tuple(out)


def partitions(n: int) -> tuple[Partition, ...]:
    """Partitions of n in reverse lexicographic order, ``(n)`` first."""
    return _partitions(n, n)


def compositions(n: int) -> Iterator[Composition]:
    if n == 0:
        yield Composition()
        return
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            yield Composition((first,) + rest)


class Limbs(NamedTuple):
    arm: int
    leg: int
    coarm: int
    coleg: int


def limbs(mu: Partition, cell: tuple[int, int]) -> Limbs:
    """Arm, leg, co-arm and co-leg of ``cell`` in ``mu``."""
    mu = Partition(mu)
    if cell not in mu:
        raise ValueError(f"cell {cell} is not in {tuple(mu)}")
    col, row = cell
    height = sum(1 for p in mu if p >= col)
    return Limbs(mu[row - 1] - col, height - row, col - 1, row - 1)


class MuConstants(NamedTuple):
    B: QTPoly
    Pi: QTPoly
    w: QTPoly
    n_mu: int
    n_mu_conj: int


def _qt(i: int, j: int) -> QTPoly:
    return QTPoly.monomial(i, j)


@lru_cache(maxsize=None)
def constants(mu: Partition) -> MuConstants:
    """B_mu, Pi_mu, w_mu, n(mu) and n(mu') for a partition ``mu``."""
    mu = Partition(mu)
    B = QTPoly(0)
    Pi = QTPoly(1)
    w = QTPoly(1)
    for cell in mu.cells():
        a, l, ca, cl = limbs(mu, cell)
        B = B + _qt(ca, cl)
        if cell != (1, 1):
            Pi = Pi * (1 - _qt(ca, cl))
        w = w * (_qt(a, 0) - _qt(0, l + 1)) * (_qt(0, l) - _qt(a + 1, 0))
    return MuConstants(B, Pi, w, mu.n(), mu.conjugate().n())


class StdYoungTableau:
    """Standard Young tableau stored as rows, bottom row first."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = tuple(tuple(r) for r in rows)
        shape = [len(r) for r in self.rows]
        if any(a < b for a, b in zip(shape, shape[1:])) or 0 in shape:
            raise ValueError(f"rows {self.rows} do not have partition shape")
        n = sum(shape)
        if sorted(x for r in self.rows for x in r) != list(range(1, n + 1)):
            raise ValueError("entries must be 1..n")
        for r in self.rows:
            if any(a >= b for a, b in zip(r, r[1:])):
                raise ValueError("rows must increase")
        for lower, upper in zip(self.rows, self.rows[1:]):
            if any(upper[c] <= lower[c] for c in range(len(upper))):
                raise ValueError("columns must increase")

    @property
    def shape(self) -> Partition:
        return Partition(len(r) for r in self.rows)

    @property
    def size(self) -> int:
        return sum(len(r) for r in self.rows)

    def position(self, i: int) -> tuple[int, int]:
        for row, r in enumerate(self.rows, start=1):
            if i in r:
                return (r.index(i) + 1, row)
        raise ValueError(f"{i} is not an entry")

    def reading(self) -> tuple[int, ...]:
        return tuple(x for r in self.rows for x in r)

    def __eq__(self, other) -> bool:
        return isinstance(other, StdYoungTableau) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"StdYoungTableau({self.rows!r})"


class RowStrictTableau:
    """Row-strict composition tableau with 1 in the bottom-left box."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = tuple(tuple(r) for r in rows)
        if not self.rows or any(len(r) == 0 for r in self.rows):
            raise ValueError("rows must be nonempty")
        n = sum(len(r) for r in self.rows)
        if sorted(x for r in self.rows for x in r) != list(range(1, n + 1)):
            raise ValueError("entries must be 1..n")
        if any(a >= b for r in self.rows for a, b in zip(r, r[1:])):
            raise ValueError("rows must increase")
        if self.rows[0][0] != 1:
            raise ValueError("1 must sit in the bottom-left box")

    @property
    def shape(self) -> Composition:
        return Composition(len(r) for r in self.rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, RowStrictTableau) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"RowStrictTableau({self.rows!r})"


def _syt_rows(shape: tuple[int, ...]) -> Iterator[list[list[int]]]:
    n = sum(shape)
    if n == 0:
        yield [[] for _ in shape]
        return
    for r, length in enumerate(shape):
        below_ok = r + 1 == len(shape) or shape[r + 1] < length
        if length and below_ok:
            smaller = list(shape)
            smaller[r] -= 1
            for rows in _syt_rows(tuple(smaller)):
                rows[r].append(n)
                yield rows


def syt_of(lam: Partition) -> list[StdYoungTableau]:
    """All standard Young tableaux of shape ``lam``, ordered by reading word."""
    lam = Partition(lam)
    out = [StdYoungTableau(rows) for rows in _syt_rows(tuple(lam))]
    return sorted(out, key=StdYoungTableau.reading)


def shifted_leg_length(T: StdYoungTableau, i: int) -> int:
    if not 1 <= i <= T.size:
        raise ValueError(f"{i} out of range")
    col, row = T.position(i)
    before = [sum(1 for x in r if x < i) for r in T.rows]
    length = before[row - 1]
    if length == 0:
        return 1
    return sum(1 for x in before if x == length)


def total_L(T: StdYoungTableau) -> int:
    out = 1
    for i in range(1, T.size + 1):
        out *= shifted_leg_length(T, i)
    return out


def rst1_of(alpha: Composition) -> list[RowStrictTableau]:
    """All row-strict composition tableaux of shape ``alpha`` starting with 1."""
    alpha = Composition(alpha)
    if not alpha:
        return []
    n = alpha.size

    def fill(rest: tuple[int, ...], sizes: tuple[int, ...]):
        if not sizes:
            yield []
            return
        for chosen in combinations(rest, sizes[0]):
            remaining = tuple(x for x in rest if x not in chosen)
            for tail in fill(remaining, sizes[1:]):
                yield [chosen] + tail

    out = []
    for rows in fill(tuple(range(2, n + 1)), (alpha[0] - 1,) + tuple(alpha[1:])):
        rows[0] = (1,) + rows[0]
        out.append(RowStrictTableau(rows))
    return sorted(out, key=lambda C: tuple(x for r in C.rows for x in r))


def phi(C: RowStrictTableau) -> StdYoungTableau:
    """Sort each column increasingly and push the columns to the bottom."""
    width = max(len(r) for r in C.rows)
    columns = [sorted(r[c] for r in C.rows if len(r) > c) for c in range(width)]
    height = len(columns[0])
    rows = [[col[r] for col in columns if len(col) > r] for r in range(height)]
    return StdYoungTableau(rows)


@lru_cache(maxsize=None)
def _phi_counts(lam: Partition) -> Counter:
    counts: Counter = Counter()
    for alpha in set(permutations(lam)):
        for C in rst1_of(Composition(alpha)):
            counts[phi(C)] += 1
    return counts


def phi_fiber_size(T: StdYoungTableau) -> int:
    """Number of row-strict tableaux mapped to ``T`` by :func:`phi` (direct enumeration)."""
    return _phi_counts(T.shape)[T]


def fiber_formula(T: StdYoungTableau) -> int:
    return factorial(len(T.shape) - 1) * total_L(T)
