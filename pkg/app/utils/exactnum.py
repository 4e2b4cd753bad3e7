"""
Exact scalar arithmetic: rationals, quadratic surds a + b*sqrt(d) and the
Bernoulli numbers used by the even zeta values.

Bernoulli convention: B_1 = 1/6, B_2 = 1/30, B_3 = 1/42, i.e. B_k here is the
absolute value of the classical B_{2k}. With it zeta(2k) = 2^(2k-1) B_k pi^(2k) / (2k)!.
"""
from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Tuple, Union

from ..core.config import settings
from ..core.exceptions import (
    BuiltinParameterError,
    ExactArithmeticError,
    MixedRadicandError,
    OutOfRangeError,
)

Rational = Fraction
RationalLike = Union[Fraction, int]
Gaussian = Tuple[Fraction, Fraction]

_RAT_OPS: Dict[str, Callable[[Fraction, Fraction], Fraction]] = {
    "+": operator.add,
    "-": operator.sub,
    "−": operator.sub,
    "*": operator.mul,
    "×": operator.mul,
    "/": operator.truediv,
    "÷": operator.truediv,
}


def rat_arith(x: RationalLike, y: RationalLike, op: str) -> Fraction:
    try:
        fn = _RAT_OPS[op]
    except KeyError:
        raise BuiltinParameterError(f"Unknown rational operator {op!r}", operator=op)
    if fn is operator.truediv and y == 0:
        raise ExactArithmeticError("Division by zero", numerator=str(x))
    return Fraction(fn(Fraction(x), Fraction(y)))


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p" (optional sign, no decimals)."""
    raw = text.strip()
    num, sep, den = raw.partition("/")
    try:
        p = int(num.strip())
        q = int(den.strip()) if sep else 1
    except ValueError:
        raise BuiltinParameterError(f"Malformed rational {text!r}", text=text)
    if q == 0:
        raise ExactArithmeticError(f"Zero denominator in {text!r}", text=text)
    return Fraction(p, q)


def format_rational(q: RationalLike) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def square_free_split(n: int) -> Tuple[int, int]:
    """Write n >= 0 as s*s*d with d square-free; returns (s, d)."""
    if n < 0:
        raise OutOfRangeError("square_free_split expects n >= 0", n=n)
    if n == 0:
        return 0, 0
    s, d, p = 1, 1, 2
    rest = n
    while p * p <= rest:
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            d *= p
        p += 1 if p == 2 else 2
    d *= rest
    return s, d


@dataclass(frozen=True)
class QuadSurd:
    """a + b*sqrt(d) with a, b rational and d square-free (d == 0 iff b == 0)."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    d: int = 0

    def __post_init__(self):
        a, b, d = Fraction(self.a), Fraction(self.b), int(self.d)
        if d < 0:
            raise OutOfRangeError("Radicand must be non-negative", d=d)
        if d > 1:
            s, sf = square_free_split(d)
            b, d = b * s, sf
        if d == 1:
            a, b, d = a + b, Fraction(0), 0
        if b == 0 or d == 0:
            b, d = Fraction(0), 0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    @classmethod
    def rational(cls, q: RationalLike) -> "QuadSurd":
        return cls(Fraction(q))

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def _radicand_with(self, other: "QuadSurd") -> int:
        if self.b != 0 and other.b != 0 and self.d != other.d:
            raise MixedRadicandError(
                f"Cannot combine sqrt({self.d}) with sqrt({other.d})",
                left=str(self), right=str(other),
            )
        return self.d if self.b != 0 else other.d

    def __add__(self, other: object) -> "QuadSurd":
        other = _as_surd(other)
        d = self._radicand_with(other)
        return QuadSurd(self.a + other.a, self.b + other.b, d)

    __radd__ = __add__

    def __neg__(self) -> "QuadSurd":
        return QuadSurd(-self.a, -self.b, self.d)

    def __sub__(self, other: object) -> "QuadSurd":
        return self + (-_as_surd(other))

    def __rsub__(self, other: object) -> "QuadSurd":
        return _as_surd(other) - self

    def __mul__(self, other: object) -> "QuadSurd":
        other = _as_surd(other)
        d = self._radicand_with(other)
        return QuadSurd(
            self.a * other.a + self.b * other.b * d,
            self.a * other.b + self.b * other.a,
            d,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "QuadSurd":
        return QuadSurd(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def reciprocal(self) -> "QuadSurd":
        n = self.norm()
        if n == 0:
            raise ExactArithmeticError("Reciprocal of zero surd", value=str(self))
        c = self.conjugate()
        return QuadSurd(c.a / n, c.b / n, c.d)

    def __truediv__(self, other: object) -> "QuadSurd":
        return self * _as_surd(other).reciprocal()

    def __rtruediv__(self, other: object) -> "QuadSurd":
        return _as_surd(other) * self.reciprocal()

    def sign(self) -> int:
        """Exact sign of a + b*sqrt(d)."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a^2 with b^2 d
        diff = self.a * self.a - self.b * self.b * self.d
        return sa if diff > 0 else (sb if diff < 0 else 0)

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __str__(self) -> str:
        if self.b == 0:
            return format_rational(self.a)
        return f"{format_rational(self.a)} + {format_rational(self.b)}*sqrt({self.d})"


def _as_surd(value: object) -> QuadSurd:
    if isinstance(value, QuadSurd):
        return value
    if isinstance(value, (int, Fraction)):
        return QuadSurd(Fraction(value))
    return NotImplemented  # type: ignore[return-value]


def surd_arith(x: QuadSurd, y: QuadSurd, op: str) -> QuadSurd:
    if op == "+":
        return x + y
    if op in ("-", "−"):
        return x - y
    if op in ("*", "×"):
        return x * y
    if op in ("/", "÷"):
        return x / y
    raise BuiltinParameterError(f"Unknown surd operator {op!r}", operator=op)


def sqrt_rational(q: RationalLike) -> QuadSurd:
    """sqrt(p/q) = sqrt(p*q)/q, reduced to r*sqrt(d) with d square-free."""
    q = Fraction(q)
    if q < 0:
        raise OutOfRangeError("Square root of a negative rational", value=format_rational(q))
    s, d = square_free_split(q.numerator * q.denominator)
    return QuadSurd(Fraction(0), Fraction(s, q.denominator), d)


def gaussian_mul(x: Gaussian, y: Gaussian) -> Gaussian:
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def gaussian_pow(x: Gaussian, m: int) -> Gaussian:
    result: Gaussian = (Fraction(1), Fraction(0))
    for _ in range(m):
        result = gaussian_mul(result, x)
    return result


def format_gaussian(z: Gaussian) -> str:
    re, im = z
    if im == 0:
        return format_rational(re)
    op = "-" if im < 0 else "+"
    return f"{format_rational(re)} {op} {format_rational(abs(im))}i"


@lru_cache(maxsize=None)
def _classical_bernoulli(n_max: int) -> Tuple[Fraction, ...]:
    """Classical B_0..B_n_max (B_1 = -1/2) from sum_{j<=m} C(m+1, j) B_j = 0."""
    values: List[Fraction] = [Fraction(1)]
    for m in range(1, n_max + 1):
        acc = sum((math.comb(m + 1, j) * values[j] for j in range(m)), Fraction(0))
        values.append(-acc / (m + 1))
    return tuple(values)


def bernoulli(k: int) -> Fraction:
    """B_k with B_1 = 1/6, B_2 = 1/30, B_3 = 1/42 (cached)."""
    limit = settings.bernoulli_max_index
    if not isinstance(k, int) or k < 1 or k > limit:
        raise OutOfRangeError(f"Bernoulli index must be in [1, {limit}]", k=k)
    return abs(_classical_bernoulli(2 * limit)[2 * k])


def classical_bernoulli(n: int) -> Fraction:
    """Classical B_n (B_1 = -1/2); used to check the defining recurrence."""
    limit = 2 * settings.bernoulli_max_index
    if n < 0 or n > limit:
        raise OutOfRangeError(f"Classical Bernoulli index must be in [0, {limit}]", n=n)
    return _classical_bernoulli(limit)[n]


def even_zeta_factor(two_k: int) -> Fraction:
    """The rational r with zeta(2k) = r * pi^(2k)."""
    if two_k < 2 or two_k % 2:
        raise BuiltinParameterError("zeta argument must be a positive even integer", argument=two_k)
    k = two_k // 2
    return Fraction(2 ** (two_k - 1), math.factorial(two_k)) * bernoulli(k)
