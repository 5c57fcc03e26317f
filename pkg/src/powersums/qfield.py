"""Exact arithmetic in real quadratic fields Q(sqrt D) and logarithmic heights."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from typing import Tuple, Union

from sympy.ntheory.factor_ import core

from .config import Config
from .errors import DomainError
from .intervals import HighPrecReal, maximum

Rational = Union[int, Fraction]


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


@total_ordering
class QuadElem:
    """x + y*sqrt(D) with D squarefree; rationals are stored as (x, 0, 1)"""

    __slots__ = ("x", "y", "D")

    def __init__(self, x: Rational = 0, y: Rational = 0, D: int = 1):
        x, y = Fraction(x), Fraction(y)
        if D < 0:
            raise DomainError(f"negative radicand {D}: only real quadratic fields are supported")
        if y == 0 or D == 0:
            y, D = Fraction(0), 1
        else:
            squarefree = int(core(D, 2))
            y *= math.isqrt(D // squarefree)
            D = squarefree
            if D == 1:
                x, y = x + y, Fraction(0)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "D", D)

    def __setattr__(self, name, value):
        raise AttributeError("QuadElem is immutable")

    @classmethod
    def sqrt(cls, n: int) -> QuadElem:
        return cls(0, 1, n)

    @property
    def is_rational(self) -> bool:
        return self.y == 0

    @property
    def is_integer(self) -> bool:
        return self.is_rational and self.x.denominator == 1

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise DomainError(f"{self} is irrational")
        return self.x

    def _promote(self, other) -> QuadElem:
        if isinstance(other, QuadElem):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElem(other)
        return NotImplemented

    def _radicand(self, other: QuadElem) -> int:
        if self.is_rational:
            return other.D
        if other.is_rational or other.D == self.D:
            return self.D
        raise ValueError(f"incompatible fields Q(sqrt {self.D}) and Q(sqrt {other.D})")

    # -- ring operations ------------------------------------------------------

    def __add__(self, other):
        other = self._promote(other)
        if other is NotImplemented:
            return other
        return QuadElem(self.x + other.x, self.y + other.y, self._radicand(other))

    __radd__ = __add__

    def __neg__(self) -> QuadElem:
        return QuadElem(-self.x, -self.y, self.D)

    def __sub__(self, other):
        other = self._promote(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._promote(other)
        if other is NotImplemented:
            return other
        D = self._radicand(other)
        return QuadElem(
            self.x * other.x + self.y * other.y * D,
            self.x * other.y + self.y * other.x,
            D,
        )

    __rmul__ = __mul__

    def conjugate(self) -> QuadElem:
        return QuadElem(self.x, -self.y, self.D)

    def norm(self) -> Fraction:
        return self.x * self.x - self.D * self.y * self.y

    def trace(self) -> Fraction:
        return 2 * self.x

    def inverse(self) -> QuadElem:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        c = self.conjugate()
        return QuadElem(c.x / n, c.y / n, self.D)

    def __truediv__(self, other):
        other = self._promote(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int) -> QuadElem:
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        result = QuadElem(1)
        for bit in bin(abs(n))[2:]:
            result = result * result
            if bit == "1":
                result = result * base
        return result

    # -- order ----------------------------------------------------------------

    def sign(self) -> int:
        sx, sy = _sign(self.x), _sign(self.y)
        if sy == 0:
            return sx
        if sx == sy or sx == 0:
            return sy
        # opposite signs: the larger square wins
        if self.x * self.x > self.D * self.y * self.y:
            return sx
        return sy

    def __abs__(self) -> QuadElem:
        return -self if self.sign() < 0 else self

    def __eq__(self, other) -> bool:
        other = self._promote(other)
        if other is NotImplemented:
            return False
        return (self.x, self.y, self.D) == (other.x, other.y, other.D)

    def __lt__(self, other) -> bool:
        other = self._promote(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).sign() < 0

    def __hash__(self) -> int:
        return hash((self.x, self.y, self.D))

    def __bool__(self) -> bool:
        return self.x != 0 or self.y != 0

    def __float__(self) -> float:
        return float(to_real(self, 64))

    def __str__(self) -> str:
        if self.y == 0:
            return str(self.x)
        y = "" if abs(self.y) == 1 else f"{abs(self.y)}*"
        root = f"{y}√{self.D}"
        if self.x == 0:
            return root if self.y > 0 else f"-{root}"
        return f"{self.x}{' + ' if self.y > 0 else ' - '}{root}"

    def __repr__(self) -> str:
        return f"QuadElem({self.x}, {self.y}, {self.D})"


def to_real(e: QuadElem, bits: int = Config.INITIAL_PRECISION_BITS) -> HighPrecReal:
    if bits < 16:
        raise DomainError(f"precision {bits} below 16 bits")
    x = HighPrecReal.exact(e.x, bits)
    if e.y == 0:
        return x
    return x + HighPrecReal.exact(e.y, bits) * HighPrecReal.exact(e.D, bits).sqrt()


def minimal_polynomial(e: QuadElem) -> Tuple[int, ...]:
    """Primitive integer coefficients, highest degree first, positive leading term"""
    if e.is_rational:
        return (e.x.denominator, -e.x.numerator)
    coeffs = (Fraction(1), -e.trace(), e.norm())
    lcm = math.lcm(*(c.denominator for c in coeffs))
    ints = [int(c * lcm) for c in coeffs]
    g = math.gcd(*ints)
    return tuple(c // g for c in ints)


def log_height(e: QuadElem, bits: int = Config.BOUND_PRECISION_BITS) -> HighPrecReal:
    """Absolute logarithmic height from the minimal polynomial over Z"""
    if not e:
        raise DomainError("height of zero is undefined")
    if e.is_rational:
        return HighPrecReal.exact(max(abs(e.x.numerator), e.x.denominator), bits).log()
    poly = minimal_polynomial(e)
    total = HighPrecReal.exact(poly[0], bits).log()
    for root in (e, e.conjugate()):
        total = total + maximum(1, abs(to_real(root, bits))).log()
    return total / (len(poly) - 1)


def floor(e: QuadElem) -> int:
    """Exact floor of a quadratic irrational"""
    if e.is_rational:
        return math.floor(e.x)
    bits = Config.INITIAL_PRECISION_BITS
    while True:
        k = to_real(e, bits).floor()
        if k is not None:
            return k
        bits *= 2


def ceil(e: QuadElem) -> int:
    return -floor(-e)
