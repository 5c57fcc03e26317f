"""Certified real numbers.

A `HighPrecReal` is a closed interval with raw mpmath endpoints. Every
operation rounds its endpoints outward at an explicit precision, so the
true value always stays inside; mpmath's global precision is never touched.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Optional, Tuple, Union

import mpmath
from mpmath.libmp import (
    from_int,
    from_rational,
    fzero,
    mpf_le,
    mpf_lt,
    mpf_shift,
    mpf_sign,
    mpi_abs,
    mpi_add,
    mpi_div,
    mpi_exp,
    mpi_log,
    mpi_mid,
    mpi_mul,
    mpi_neg,
    mpi_pow_int,
    mpi_sqrt,
    mpi_sub,
    mpf_sub,
    round_ceiling,
    round_floor,
    round_up,
    to_float,
    to_int,
    to_rational,
    to_str,
)

from .config import Config
from .errors import DomainError

Number = Union[int, Fraction, float]
RealLike = Union["HighPrecReal", int, Fraction, float, mpmath.mpf]


def _fraction(x: Number) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _as_fraction(raw: tuple) -> Fraction:
    # mpmath may hand back gmpy integers
    p, q = to_rational(raw)
    return Fraction(int(p), int(q))


@dataclass(frozen=True)
class HighPrecReal:
    lower: tuple
    upper: tuple
    precision_bits: int = Config.INITIAL_PRECISION_BITS

    # -- construction -------------------------------------------------------

    @classmethod
    def exact(cls, x: Number, bits: int = Config.INITIAL_PRECISION_BITS) -> HighPrecReal:
        """Point interval if x is dyadic, otherwise the tightest enclosure at `bits`"""
        if isinstance(x, int):
            raw = from_int(x)
            return cls(raw, raw, bits)
        x = _fraction(x)
        return cls.from_bounds(x, x, bits)

    @classmethod
    def from_bounds(cls, lo: Number, hi: Number, bits: int = Config.INITIAL_PRECISION_BITS) -> HighPrecReal:
        lo, hi = _fraction(lo), _fraction(hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        return cls(
            from_rational(lo.numerator, lo.denominator, bits, round_floor),
            from_rational(hi.numerator, hi.denominator, bits, round_ceiling),
            bits,
        )

    def _coerce(self, other: RealLike) -> HighPrecReal:
        if isinstance(other, HighPrecReal):
            return other
        if isinstance(other, (int, Fraction, float)):
            return HighPrecReal.exact(other, self.precision_bits)
        if isinstance(other, mpmath.mpf):
            return HighPrecReal(other._mpf_, other._mpf_, self.precision_bits)
        return NotImplemented

    def _operand(self, other: RealLike) -> HighPrecReal:
        coerced = self._coerce(other)
        if coerced is NotImplemented:
            raise TypeError(f"cannot compare HighPrecReal with {type(other).__name__}")
        return coerced

    def _bits(self, other: HighPrecReal) -> int:
        return max(self.precision_bits, other.precision_bits)

    # -- derived views ------------------------------------------------------

    @property
    def value(self) -> mpmath.mpf:
        return mpmath.mp.make_mpf(mpi_mid((self.lower, self.upper), self.precision_bits + 2))

    @property
    def error_radius(self) -> mpmath.mpf:
        width = mpf_sub(self.upper, self.lower, self.precision_bits, round_up)
        return mpmath.mp.make_mpf(mpf_shift(width, -1))

    def to_fractions(self) -> Tuple[Fraction, Fraction]:
        return _as_fraction(self.lower), _as_fraction(self.upper)

    def lower_float(self) -> float:
        return to_float(self.lower, rnd=round_floor)

    def upper_float(self) -> float:
        return to_float(self.upper, rnd=round_ceiling)

    def __float__(self) -> float:
        return to_float(mpi_mid((self.lower, self.upper), 64))

    def to_decimal_strings(self, digits: int = Config.REPORT_DIGITS) -> Tuple[str, str]:
        return to_str(self.lower, digits), to_str(self.upper, digits)

    def __str__(self) -> str:
        lo, hi = self.to_decimal_strings(12)
        return f"[{lo}, {hi}]"

    def __repr__(self) -> str:
        return f"HighPrecReal({self}, bits={self.precision_bits})"

    # -- certified predicates -------------------------------------------------

    def is_positive(self) -> bool:
        return mpf_sign(self.lower) > 0

    def is_negative(self) -> bool:
        return mpf_sign(self.upper) < 0

    def is_nonzero(self) -> bool:
        return self.is_positive() or self.is_negative()

    def certainly_lt(self, other: RealLike) -> bool:
        other = self._operand(other)
        return mpf_lt(self.upper, other.lower)

    def certainly_le(self, other: RealLike) -> bool:
        other = self._operand(other)
        return mpf_le(self.upper, other.lower)

    def contains(self, x: RealLike) -> bool:
        x = self._operand(x)
        return mpf_le(self.lower, x.lower) and mpf_le(x.upper, self.upper)

    def floor(self) -> Optional[int]:
        """floor(x) if it is the same over the whole interval, else None"""
        lo = int(to_int(self.lower, round_floor))
        return lo if lo == int(to_int(self.upper, round_floor)) else None

    def ceil_upper(self) -> int:
        return int(to_int(self.upper, round_ceiling))

    def floor_upper(self) -> int:
        return int(to_int(self.upper, round_floor))

    def distance_to_nearest_int(self) -> Optional[HighPrecReal]:
        """||x||, or None when the interval straddles a half-integer"""
        lo, hi = self.to_fractions()
        half = Fraction(1, 2)
        k = math.floor(lo + half)
        if k != math.floor(hi + half):
            return None
        d_lo, d_hi = abs(lo - k), abs(hi - k)
        least = Fraction(0) if lo <= k <= hi else min(d_lo, d_hi)
        return HighPrecReal.from_bounds(least, max(d_lo, d_hi), self.precision_bits)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: RealLike) -> HighPrecReal:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        bits = self._bits(other)
        return HighPrecReal(*mpi_add((self.lower, self.upper), (other.lower, other.upper), bits), bits)

    __radd__ = __add__

    def __sub__(self, other: RealLike) -> HighPrecReal:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        bits = self._bits(other)
        return HighPrecReal(*mpi_sub((self.lower, self.upper), (other.lower, other.upper), bits), bits)

    def __rsub__(self, other: RealLike) -> HighPrecReal:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other: RealLike) -> HighPrecReal:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        bits = self._bits(other)
        return HighPrecReal(*mpi_mul((self.lower, self.upper), (other.lower, other.upper), bits), bits)

    __rmul__ = __mul__

    def __truediv__(self, other: RealLike) -> HighPrecReal:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.is_nonzero():
            raise ZeroDivisionError(f"division by an interval containing zero: {other}")
        bits = self._bits(other)
        return HighPrecReal(*mpi_div((self.lower, self.upper), (other.lower, other.upper), bits), bits)

    def __rtruediv__(self, other: RealLike) -> HighPrecReal:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __neg__(self) -> HighPrecReal:
        return HighPrecReal(*mpi_neg((self.lower, self.upper), self.precision_bits), self.precision_bits)

    def __abs__(self) -> HighPrecReal:
        return HighPrecReal(*mpi_abs((self.lower, self.upper), self.precision_bits), self.precision_bits)

    def __pow__(self, n: int) -> HighPrecReal:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0 and not self.is_nonzero():
            raise ZeroDivisionError("negative power of an interval containing zero")
        return HighPrecReal(*mpi_pow_int((self.lower, self.upper), n, self.precision_bits), self.precision_bits)

    def log(self) -> HighPrecReal:
        if not self.is_positive():
            raise DomainError(f"log of an interval that is not strictly positive: {self}")
        return HighPrecReal(*mpi_log((self.lower, self.upper), self.precision_bits), self.precision_bits)

    def exp(self) -> HighPrecReal:
        return HighPrecReal(*mpi_exp((self.lower, self.upper), self.precision_bits), self.precision_bits)

    def sqrt(self) -> HighPrecReal:
        if mpf_sign(self.lower) < 0:
            raise DomainError(f"sqrt of an interval with negative part: {self}")
        return HighPrecReal(*mpi_sqrt((self.lower, self.upper), self.precision_bits), self.precision_bits)

    def root(self, h: int) -> HighPrecReal:
        """Real h-th root of a non-negative interval"""
        if h == 1:
            return self
        if mpf_sign(self.upper) == 0:
            return self
        if mpf_sign(self.lower) <= 0:
            hi = (HighPrecReal(self.upper, self.upper, self.precision_bits).log() / h).exp()
            return HighPrecReal(fzero, hi.upper, self.precision_bits)
        return (self.log() / h).exp()


def real(x: RealLike, bits: int = Config.INITIAL_PRECISION_BITS) -> HighPrecReal:
    if isinstance(x, HighPrecReal):
        return x
    if isinstance(x, mpmath.mpf):
        return HighPrecReal(x._mpf_, x._mpf_, bits)
    return HighPrecReal.exact(x, bits)


def maximum(*values: RealLike) -> HighPrecReal:
    items = [real(v) for v in values]
    bits = max(v.precision_bits for v in items)
    lower = items[0].lower
    upper = items[0].upper
    for v in items[1:]:
        if mpf_lt(lower, v.lower):
            lower = v.lower
        if mpf_lt(upper, v.upper):
            upper = v.upper
    return HighPrecReal(lower, upper, bits)


def round_up_fraction(x: RealLike, digits: int = Config.SIGNIFICANT_DIGITS) -> Fraction:
    """Smallest decimal with `digits` significant digits that is >= upper(x)"""
    upper = Fraction(x) if isinstance(x, (int, Fraction)) else real(x).to_fractions()[1]
    if upper == 0:
        return Fraction(0)
    magnitude = abs(upper)
    e = math.floor(math.log10(magnitude.numerator) - math.log10(magnitude.denominator))
    while Fraction(10) ** e > magnitude:
        e -= 1
    while Fraction(10) ** (e + 1) <= magnitude:
        e += 1
    scale = Fraction(10) ** (digits - 1 - e)
    return Fraction(math.ceil(upper * scale)) / scale


def format_decimal(value: Fraction, digits: int = Config.SIGNIFICANT_DIGITS) -> str:
    """Short decimal string for a value produced by `round_up_fraction`"""
    if value.denominator == 1 and abs(value.numerator) < 10**digits:
        return str(value.numerator)
    d = Decimal(value.numerator) / Decimal(value.denominator)
    if Fraction(1, 10**digits) <= abs(value) < 10**digits:
        return f"{d:f}"
    return f"{d:.{digits - 1}e}"
