"""Truncated formal power series in q with exact rational coefficients.

This is the oracle layer for every formal identity in the package, so nothing
here ever rounds.  Arithmetic between series of different truncation orders
truncates to the smaller order.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, List, Sequence, Tuple, Union

from .errors import BadConstantTerm, NonUnitFactor, ZeroConstantTerm

Rational = Union[int, Fraction]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"QSeries coefficients must be exact rationals, got {type(x).__name__}")


@dataclass(frozen=True)
class QSeries:
    coeffs: Tuple[Fraction, ...]
    order: int

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be non-negative")
        cs = tuple(_frac(c) for c in self.coeffs)
        if len(cs) > self.order + 1:
            cs = cs[: self.order + 1]
        elif len(cs) < self.order + 1:
            cs = cs + (Fraction(0),) * (self.order + 1 - len(cs))
        object.__setattr__(self, "coeffs", cs)

    # constructors -------------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "QSeries":
        return cls((), order)

    @classmethod
    def one(cls, order: int) -> "QSeries":
        return cls((1,), order)

    @classmethod
    def monomial(cls, k: int, order: int, c: Rational = 1) -> "QSeries":
        if k > order:
            return cls.zero(order)
        return cls((0,) * k + (c,), order)

    @classmethod
    def from_dict(cls, terms: dict, order: int) -> "QSeries":
        cs = [Fraction(0)] * (order + 1)
        for k, c in terms.items():
            if 0 <= k <= order:
                cs[k] += _frac(c)
        return cls(tuple(cs), order)

    # basic protocol -----------------------------------------------------

    def __len__(self):
        return self.order + 1

    def __getitem__(self, k):
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    @property
    def valuation(self) -> float:
        """Lowest exponent with a nonzero coefficient (``inf`` for zero)."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return math.inf

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def truncate(self, order: int) -> "QSeries":
        return QSeries(self.coeffs[: order + 1], min(order, self.order))

    def shift(self, k: int) -> "QSeries":
        """Multiply by ``q**k`` (k >= 0), keeping the order."""
        if k < 0:
            raise ValueError("negative shifts leave the ring")
        return QSeries((0,) * k + self.coeffs, self.order)

    def substitute_power(self, m: int) -> "QSeries":
        """``f(q**m)`` truncated at the same order."""
        cs = [Fraction(0)] * (self.order + 1)
        for k, c in enumerate(self.coeffs):
            if k * m > self.order:
                break
            cs[k * m] = c
        return QSeries(tuple(cs), self.order)

    def alternate(self) -> "QSeries":
        """``f(-q)``."""
        return QSeries(tuple(c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)), self.order)

    def __neg__(self):
        return QSeries(tuple(-c for c in self.coeffs), self.order)

    def __add__(self, other):
        if not isinstance(other, QSeries):
            other = QSeries((_frac(other),), self.order)
        return qs_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, QSeries):
            other = QSeries((_frac(other),), self.order)
        return qs_add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return qs_mul(self, other)
        c = _frac(other)
        return QSeries(tuple(c * x for x in self.coeffs), self.order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, QSeries):
            return qs_mul(self, qs_inv(other))
        c = _frac(other)
        return QSeries(tuple(x / c for x in self.coeffs), self.order)

    def __pow__(self, n: int):
        if n < 0:
            return qs_inv(self) ** (-n)
        result = QSeries.one(self.order)
        base = self
        while n:
            if n & 1:
                result = qs_mul(result, base)
            n >>= 1
            if n:
                base = qs_mul(base, base)
        return result

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*q^{k}")
        body = " + ".join(terms) if terms else "0"
        return f"QSeries({body} + O(q^{self.order + 1}))"

    # serialization ------------------------------------------------------

    def to_json_list(self) -> List[str]:
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]

    def to_json(self) -> str:
        return json.dumps(self.to_json_list())

    @classmethod
    def from_json(cls, data: Union[str, Sequence[str]]) -> "QSeries":
        if isinstance(data, str):
            data = json.loads(data)
        if not data:
            raise ValueError("a QSeries needs at least the constant coefficient")
        return cls(tuple(Fraction(s) for s in data), len(data) - 1)


def _to_ints(coeffs: Sequence[Fraction]) -> Tuple[List[int], int]:
    den = 1
    for c in coeffs:
        if c.denominator != 1:
            den = den * c.denominator // math.gcd(den, c.denominator)
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def qs_add(a: QSeries, b: QSeries) -> QSeries:
    n = min(a.order, b.order)
    return QSeries(tuple(a.coeffs[k] + b.coeffs[k] for k in range(n + 1)), n)


def qs_mul(a: QSeries, b: QSeries) -> QSeries:
    n = min(a.order, b.order)
    ai, ad = _to_ints(a.coeffs[: n + 1])
    bi, bd = _to_ints(b.coeffs[: n + 1])
    out = [0] * (n + 1)
    nz = [(i, x) for i, x in enumerate(ai) if x]
    for j, y in enumerate(bi):
        if not y:
            continue
        for i, x in nz:
            if i + j > n:
                break
            out[i + j] += x * y
    den = ad * bd
    return QSeries(tuple(Fraction(v, den) for v in out), n)


def qs_inv(a: QSeries) -> QSeries:
    a0 = a.coeffs[0]
    if a0 == 0:
        raise ZeroConstantTerm("qs_inv: constant term is zero")
    n = a.order
    b = [Fraction(0)] * (n + 1)
    b[0] = 1 / a0
    nz = [(k, c) for k, c in enumerate(a.coeffs) if c and k]
    for m in range(1, n + 1):
        s = Fraction(0)
        for k, c in nz:
            if k > m:
                break
            s += c * b[m - k]
        b[m] = -s / a0
    return QSeries(tuple(b), n)


def qs_exp(a: QSeries) -> QSeries:
    if a.coeffs[0] != 0:
        raise BadConstantTerm("qs_exp", a.coeffs[0])
    n = a.order
    b = [Fraction(0)] * (n + 1)
    b[0] = Fraction(1)
    ka = [(k, k * c) for k, c in enumerate(a.coeffs) if c]
    for m in range(1, n + 1):
        s = Fraction(0)
        for k, kc in ka:
            if k > m:
                break
            s += kc * b[m - k]
        b[m] = s / m
    return QSeries(tuple(b), n)


def qs_log(a: QSeries) -> QSeries:
    if a.coeffs[0] != 1:
        raise BadConstantTerm("qs_log", a.coeffs[0])
    n = a.order
    b = [Fraction(0)] * (n + 1)
    for m in range(1, n + 1):
        s = m * a.coeffs[m]
        for k in range(1, m):
            if b[k]:
                s -= k * b[k] * a.coeffs[m - k]
        b[m] = s / m
    return QSeries(tuple(b), n)


def qs_product(factors: Iterable[Tuple[int, QSeries]], order: int) -> QSeries:
    """Product of ``(k, factor)`` pairs, ``factor = 1 + O(q**k)``.

    The keys must be strictly increasing; iteration stops at the first
    ``k > order`` because no later factor can touch a coefficient up to
    ``order``.  This makes infinite generators safe.
    """
    result = QSeries.one(order)
    last = -math.inf
    for k, f in factors:
        if k <= last:
            raise ValueError("qs_product: factor keys must strictly increase")
        last = k
        if k > order:
            break
        if f.coeffs[0] != 1:
            raise NonUnitFactor(f"qs_product: factor {k} has constant term {f.coeffs[0]}")
        if (f - 1).valuation < k:
            raise ValueError(f"qs_product: factor {k} has a nonconstant term below q^{k}")
        result = qs_mul(result, f)
    return result


def euler_factors(start: int, step: int, order: int, sign: int = -1):
    """Yield ``(e, 1 + sign*q**e)`` for ``e = start, start+step, ...``."""
    if start < 1 or step < 1:
        raise ValueError("exponents must be positive")
    e = start
    while True:
        yield e, QSeries.from_dict({0: 1, e: sign}, order)
        e += step


# divisor machinery --------------------------------------------------------


@dataclass(frozen=True)
class DivisorTable:
    n: int
    entries: Tuple[Tuple[int, int], ...]

    @property
    def divisors(self) -> List[int]:
        return [d for d, _ in self.entries]


def divisors(n: int) -> List[int]:
    if n < 1:
        raise ValueError("divisors are defined for n >= 1")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def divisor_table(n: int) -> DivisorTable:
    return DivisorTable(n, tuple((d, n // d) for d in divisors(n)))


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius is defined for n >= 1")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def _seq(a, order: int) -> List[Fraction]:
    """Normalize ``a`` (callable n -> a_n, QSeries, or sequence a_1..a_N)."""
    if callable(a):
        return [_frac(a(n)) for n in range(1, order + 1)]
    if isinstance(a, QSeries):
        return list(a.coeffs[1 : order + 1])
    vals = [_frac(x) for x in a]
    if len(vals) < order:
        raise ValueError(f"need {order} coefficients, got {len(vals)}")
    return vals[:order]


def lambert_expand(a, mode: str, order: int) -> QSeries:
    """Power series of ``sum a_n q^n / (1 -+ q^n)``.

    ``mode="minus"``: coefficient ``A_n = sum_{d|n} a_d``.
    ``mode="plus"``:  coefficient ``B_n = sum_{d|n} (-1)**(n/d - 1) a_d``.
    """
    if mode not in ("minus", "plus"):
        raise ValueError(f"mode must be 'minus' or 'plus', got {mode!r}")
    vals = _seq(a, order)
    cs = [Fraction(0)] * (order + 1)
    for n in range(1, order + 1):
        s = Fraction(0)
        for d in divisors(n):
            if mode == "minus" or (n // d) % 2 == 1:
                s += vals[d - 1]
            else:
                s -= vals[d - 1]
        cs[n] = s
    return QSeries(tuple(cs), order)


def lambert_invert(A, order: int) -> List[Fraction]:
    """Mobius inversion: ``a_n = sum_{d|n} mu(n/d) A_d``; returns ``[a_1..a_N]``."""
    vals = _seq(A, order)
    out = []
    for n in range(1, order + 1):
        out.append(sum((mobius(n // d) * vals[d - 1] for d in divisors(n)), Fraction(0)))
    return out


def series_from_function(f: Callable[[int], Rational], order: int) -> QSeries:
    return QSeries(tuple(_frac(f(k)) for k in range(order + 1)), order)
