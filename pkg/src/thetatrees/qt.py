"""Exact coefficients: integer polynomials in ``q, t`` and their fraction field.

Polynomials are thin immutable wrappers around :class:`flint.fmpz_mpoly`;
fractions are kept reduced (coprime numerator and denominator, positive
leading coefficient of the denominator in graded-lex order with ``q > t``).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from numbers import Integral, Rational

import flint

__all__ = [
    "QTPoly",
    "QTRatio",
    "PoleError",
    "poly_arith",
    "ratio_reduce",
    "specialize",
    "q_pochhammer",
    "as_ratio",
    "Q",
    "T",
    "M",
]

_CTX = flint.fmpz_mpoly_ctx.get(("q", "t"), "deglex")
_ZERO = _CTX.from_dict({})
_ONE = _CTX.from_dict({(0, 0): 1})


class PoleError(ZeroDivisionError):
    """Raised when a specialization hits a non-removable pole."""


def _fmpz_poly(value) -> flint.fmpz_mpoly:
    if isinstance(value, QTPoly):
        return value._p
    if isinstance(value, flint.fmpz_mpoly):
        return value
    if isinstance(value, flint.fmpz):
        value = int(value)
    if isinstance(value, Integral):
        return _CTX.from_dict({(0, 0): int(value)}) if value else _ZERO
    if isinstance(value, dict):
        return _CTX.from_dict({k: int(v) for k, v in value.items() if v})
    raise TypeError(f"cannot build a polynomial from {type(value).__name__}")


def _sort_key(exps):
    return (-(exps[0] + exps[1]), -exps[0])


def _render_monomial(i: int, j: int) -> str:
    parts = []
    if i:
        parts.append("q" if i == 1 else f"q^{i}")
    if j:
        parts.append("t" if j == 1 else f"t^{j}")
    return "*".join(parts)


class QTPoly:
    """Polynomial in ``q`` and ``t`` with integer coefficients."""

    __slots__ = ("_p", "_hash")

    def __init__(self, value=0):
        self._p = _fmpz_poly(value)
        self._hash = None

    @classmethod
    def q(cls) -> QTPoly:
        return cls({(1, 0): 1})

    @classmethod
    def t(cls) -> QTPoly:
        return cls({(0, 1): 1})

    @classmethod
    def monomial(cls, i: int, j: int, coeff: int = 1) -> QTPoly:
        return cls({(i, j): coeff})

    @property
    def terms(self) -> dict[tuple[int, int], int]:
        return {(int(k[0]), int(k[1])): int(v) for k, v in self._p.to_dict().items()}

    def is_zero(self) -> bool:
        return self._p.is_zero()

    def is_constant(self) -> bool:
        return self._p.is_constant()

    def constant(self) -> int:
        return int(self._p.to_dict().get((0, 0), 0))

    def degree(self, var: str | None = None) -> int:
        if self.is_zero():
            return -1
        if var is None:
            return int(self._p.total_degree())
        return int(self._p.degrees()[0 if var == "q" else 1])

    def leading_coefficient(self) -> int:
        return int(self._p.leading_coefficient())

    def __bool__(self) -> bool:
        return not self._p.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, QTRatio):
            return other == self
        try:
            return self._p == _fmpz_poly(other)
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            d = self._p.to_dict()
            if list(d) in ([], [(0, 0)]):
                self._hash = hash(int(d.get((0, 0), 0)))
            else:
                self._hash = hash(frozenset((k, int(v)) for k, v in d.items()))
        return self._hash

    def _coerce(self, other):
        if isinstance(other, (QTPoly, Integral)):
            return _fmpz_poly(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QTPoly(self._p + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QTPoly(self._p - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QTPoly(o - self._p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QTPoly(self._p * o)

    __rmul__ = __mul__

    def __neg__(self):
        return QTPoly(-self._p)

    def __pow__(self, k: int):
        return QTPoly(self._p**k)

    def __truediv__(self, other):
        return QTRatio(self) / other

    def __rtruediv__(self, other):
        return as_ratio(other) / QTRatio(self)

    def compose(self, q_image: QTPoly, t_image: QTPoly) -> QTPoly:
        """Substitute ``q -> q_image`` and ``t -> t_image``."""
        return QTPoly(self._p.compose(_fmpz_poly(q_image), _fmpz_poly(t_image)))

    def subs(self, q: int | None = None, t: int | None = None) -> QTPoly:
        mapping = {}
        if q is not None:
            mapping["q"] = int(q)
        if t is not None:
            mapping["t"] = int(t)
        return QTPoly(self._p.subs(mapping)) if mapping else self

    def factor(self) -> list[tuple[QTPoly, int]]:
        _, fac = self._p.factor()
        return [(QTPoly(f), int(e)) for f, e in fac]

    def render(self, compact: bool = False) -> str:
        items = sorted(self.terms.items(), key=lambda kv: _sort_key(kv[0]))
        if not items:
            return "0"
        plus, minus = ("+", "-") if compact else (" + ", " - ")
        out = []
        for idx, ((i, j), c) in enumerate(items):
            mono = _render_monomial(i, j)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if idx == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append((minus if c < 0 else plus) + body)
        return "".join(out)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"QTPoly({self.render()!r})"


def _normalize(num: flint.fmpz_mpoly, den: flint.fmpz_mpoly):
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return _ZERO, _ONE
    if not (den.is_constant() and num.is_constant()):
        g = num.gcd(den)
        if not g.is_one():
            num = num // g
            den = den // g
    if den.is_constant():
        c = int(den.leading_coefficient())
        content = int(num.content())
        g = gcd(content, c)
        if c < 0:
            g = -g
        if g != 1:
            num = num // g
            den = den // g
        return num, den
    if den.leading_coefficient() < 0:
        num, den = -num, -den
    return num, den


class QTRatio:
    """Element of Q(q, t), always stored in reduced canonical form."""

    __slots__ = ("_num", "_den", "_hash")

    def __init__(self, num=0, den=1, *, _reduced: bool = False):
        if isinstance(num, QTRatio) or isinstance(den, QTRatio):
            r = as_ratio(num) / as_ratio(den)
            self._num, self._den, self._hash = r._num, r._den, None
            return
        if isinstance(num, Rational) and not isinstance(num, Integral):
            num, den = Fraction(num).numerator, Fraction(num).denominator * _as_int_den(den)
        n, d = _fmpz_poly(num), _fmpz_poly(den)
        if not _reduced:
            n, d = _normalize(n, d)
        self._num, self._den = n, d
        self._hash = None

    @property
    def num(self) -> QTPoly:
        return QTPoly(self._num)

    @property
    def den(self) -> QTPoly:
        return QTPoly(self._den)

    def is_zero(self) -> bool:
        return self._num.is_zero()

    def is_polynomial(self) -> bool:
        return self._den.is_one()

    def as_poly(self) -> QTPoly:
        if not self._den.is_one():
            raise ValueError(f"{self} is not a polynomial")
        return QTPoly(self._num)

    def __bool__(self) -> bool:
        return not self._num.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, QTRatio):
            try:
                other = as_ratio(other)
            except TypeError:
                return NotImplemented
        return self._num == other._num and self._den == other._den

    def __hash__(self) -> int:
        if self._hash is None:
            if self._den.is_one():
                self._hash = hash(QTPoly(self._num))
            else:
                self._hash = hash((QTPoly(self._num), QTPoly(self._den)))
        return self._hash

    def __add__(self, other):
        o = _coerce_ratio(other)
        if o is None:
            return NotImplemented
        if o._num.is_zero():
            return self
        if self._num.is_zero():
            return o
        if self._den == o._den:
            if self._den.is_one():
                return QTRatio(self._num + o._num, _ONE, _reduced=True)
            return QTRatio(self._num + o._num, self._den)
        return QTRatio(self._num * o._den + o._num * self._den, self._den * o._den)

    __radd__ = __add__

    def __neg__(self):
        return QTRatio(-self._num, self._den, _reduced=True)

    def __sub__(self, other):
        o = _coerce_ratio(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce_ratio(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, Integral):
            if other == 0:
                return QTRatio()
            if self._den.is_one():
                return QTRatio(self._num * int(other), _ONE, _reduced=True)
        o = _coerce_ratio(other)
        if o is None:
            return NotImplemented
        if self._den.is_one() and o._den.is_one():
            return QTRatio(self._num * o._num, _ONE, _reduced=True)
        if self._num.is_zero() or o._num.is_zero():
            return QTRatio()
        return QTRatio(self._num * o._num, self._den * o._den)

    __rmul__ = __mul__

    def inverse(self) -> QTRatio:
        if self._num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return QTRatio(self._den, self._num)

    def __truediv__(self, other):
        o = _coerce_ratio(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce_ratio(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return QTRatio(self._num**k, self._den**k, _reduced=True)

    def compose(self, q_image: QTPoly, t_image: QTPoly) -> QTRatio:
        qi, ti = _fmpz_poly(q_image), _fmpz_poly(t_image)
        return QTRatio(self._num.compose(qi, ti), self._den.compose(qi, ti))

    def render(self, compact: bool = False) -> str:
        num = QTPoly(self._num).render(compact)
        if self._den.is_one():
            return num
        den = QTPoly(self._den).render(compact)
        if len(self._num.to_dict()) > 1:
            num = f"({num})"
        if len(self._den.to_dict()) > 1:
            den = f"({den})"
        return f"{num}/{den}" if compact else f"{num} / {den}"

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"QTRatio({self.render()!r})"


def _as_int_den(den) -> int:
    if isinstance(den, Integral):
        return int(den)
    raise TypeError("a rational numerator needs an integer denominator")


def _coerce_ratio(value) -> QTRatio | None:
    if isinstance(value, QTRatio):
        return value
    if isinstance(value, (QTPoly, Integral, flint.fmpz)):
        return QTRatio(_fmpz_poly(value), _ONE, _reduced=True)
    if isinstance(value, Rational):
        f = Fraction(value)
        return QTRatio(f.numerator, f.denominator)
    return None


def as_ratio(value) -> QTRatio:
    """Coerce an int, Fraction, QTPoly or QTRatio to a QTRatio."""
    r = _coerce_ratio(value)
    if r is None:
        raise TypeError(f"cannot coerce {type(value).__name__} to QTRatio")
    return r


def poly_arith(a: QTPoly, b: QTPoly, op: str) -> QTPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def ratio_reduce(r: QTRatio) -> QTRatio:
    # QTRatio is reduced on construction; rebuilding re-runs the normalization.
    return QTRatio(QTPoly(r._num), QTPoly(r._den))


def _subs_rational(p: flint.fmpz_mpoly, var: str, value: Fraction):
    """Return (b^d * p(var=a/b), d) as an integer polynomial and the degree d used."""
    idx = 0 if var == "q" else 1
    a, b = value.numerator, value.denominator
    if b == 1:
        return p.subs({var: a}), 0
    d = int(p.degrees()[idx]) if not p.is_zero() else 0
    out = {}
    for exps, c in p.to_dict().items():
        e = exps[idx]
        key = (0, exps[1]) if idx == 0 else (exps[0], 0)
        out[key] = out.get(key, 0) + int(c) * a**e * b ** (d - e)
    return _CTX.from_dict({k: v for k, v in out.items() if v}), d


def specialize(r, q=None, t=None) -> QTRatio:
    """Substitute numeric values for ``q`` and/or ``t``.

    Common factors are cancelled before substituting, so removable
    singularities such as ``(1 - t^3)/(1 - t)`` at ``t = 1`` evaluate to
    their limit.  A genuine pole raises :class:`PoleError`.
    """
    r = as_ratio(r)
    num, den = r._num, r._den
    for var, value in (("q", q), ("t", t)):
        if value is None:
            continue
        value = Fraction(value)
        n2, dn = _subs_rational(num, var, value)
        d2, dd = _subs_rational(den, var, value)
        if d2.is_zero():
            bad = [
                f for f, _ in QTPoly(den).factor() if _subs_rational(f._p, var, value)[0].is_zero()
            ]
            name = bad[0].render() if bad else QTPoly(den).render()
            raise PoleError(f"pole at {var}={value}: denominator factor {name} vanishes")
        shift = dd - dn
        if shift > 0:
            n2 = n2 * (value.denominator**shift)
        elif shift < 0:
            d2 = d2 * (value.denominator ** (-shift))
        num, den = _normalize(n2, d2)
    return QTRatio(num, den, _reduced=True)


def q_pochhammer(n: int) -> QTPoly:
    """(q; q)_n = (1 - q)(1 - q^2)...(1 - q^n)."""
    out = QTPoly(1)
    for i in range(1, n + 1):
        out = out * (1 - QTPoly.monomial(i, 0))
    return out


Q = QTPoly.q()
T = QTPoly.t()
M = (1 - Q) * (1 - T)
