"""Binary recurrences u_n = P u_{n-1} + Q u_{n-2} and their Binet data."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import islice
from typing import Iterator, List, Optional, Tuple

from .config import Config
from .errors import ArithmeticConsistencyError, DomainError, NonDegeneracyError, UnsupportedInstanceError
from .intervals import HighPrecReal, maximum
from .qfield import QuadElem, ceil, to_real
from .types import DominanceConstants, NonDegeneracyCertificate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RecurrenceSpec:
    P: int
    Q: int
    u0: int
    u1: int

    @classmethod
    def balancing(cls) -> RecurrenceSpec:
        return cls(6, -1, 0, 1)

    @classmethod
    def fibonacci(cls) -> RecurrenceSpec:
        return cls(1, 1, 0, 1)

    @cached_property
    def delta(self) -> int:
        return self.P * self.P + 4 * self.Q

    @cached_property
    def alpha(self) -> QuadElem:
        """Dominant root, |alpha| >= |beta|"""
        root = QuadElem.sqrt(self.delta)
        return (self.P + root) / 2 if self.P >= 0 else (self.P - root) / 2

    @cached_property
    def beta(self) -> QuadElem:
        return self.P - self.alpha

    @cached_property
    def a(self) -> QuadElem:
        return self.u1 - self.u0 * self.beta

    @cached_property
    def b(self) -> QuadElem:
        return self.u1 - self.u0 * self.alpha

    @cached_property
    def sqrt_delta(self) -> QuadElem:
        """alpha - beta, equal to +-sqrt(delta)"""
        return self.alpha - self.beta

    def __str__(self) -> str:
        return f"u_n = {self.P} u_(n-1) + {self.Q} u_(n-2), u_0 = {self.u0}, u_1 = {self.u1}"


def term(spec: RecurrenceSpec, n: int) -> int:
    if n < 0:
        raise DomainError(f"negative index {n}")
    prev, cur = spec.u0, spec.u1
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, spec.P * cur + spec.Q * prev
    return cur


def iter_terms(spec: RecurrenceSpec, start: int = 0) -> Iterator[Tuple[int, int]]:
    """(n, u_n) for n = start, start + 1, ..."""
    prev, cur = spec.u0, spec.u1
    n = 0
    while True:
        if n >= start:
            yield n, prev
        prev, cur = cur, spec.P * cur + spec.Q * prev
        n += 1


def terms(spec: RecurrenceSpec, n_max: int) -> List[int]:
    """u_0 .. u_{n_max}"""
    return [value for _, value in islice(iter_terms(spec), n_max + 1)]


def binet_term(spec: RecurrenceSpec, n: int) -> int:
    if not spec.sqrt_delta:
        raise DomainError("Binet form needs distinct roots")
    value = (spec.a * spec.alpha**n - spec.b * spec.beta**n) / spec.sqrt_delta
    if not value.is_integer:
        raise ArithmeticConsistencyError(f"Binet form at n={n} did not reduce to an integer: {value}")
    return value.as_fraction().numerator


def check_nondegenerate(spec: RecurrenceSpec) -> NonDegeneracyCertificate:
    violations: List[str] = []
    notes: List[str] = []
    if spec.P * spec.Q == 0:
        violations.append("PQ = 0")
    if abs(spec.u0) + abs(spec.u1) == 0:
        violations.append("|u0| + |u1| = 0")
    if spec.delta <= 0:
        violations.append(f"discriminant P^2 + 4Q = {spec.delta} is not positive")
        return NonDegeneracyCertificate(False, violations, notes)

    notes.append(f"delta = {spec.delta} > 0: alpha = {spec.alpha}, beta = {spec.beta} are real and distinct")
    notes.append("a real root of unity is +-1; alpha/beta = 1 needs delta = 0 and alpha/beta = -1 needs P = 0")
    if spec.P == 0:
        violations.append("alpha/beta is a root of unity (alpha = -beta since P = 0)")
    if spec.Q == 0:
        violations.append("alpha*beta = -Q = 0")
    if not spec.a:
        violations.append("a = 0")
    if not spec.b:
        violations.append("b = 0")
    if not violations:
        notes.append(f"a = {spec.a}, b = {spec.b}, alpha*beta = {-spec.Q}: all nonzero")
    return NonDegeneracyCertificate(not violations, violations, notes)


def require_nondegenerate(spec: RecurrenceSpec) -> NonDegeneracyCertificate:
    cert = check_nondegenerate(spec)
    if not cert.passed:
        raise NonDegeneracyError(cert.violations)
    return cert


def require_analytic(spec: RecurrenceSpec) -> None:
    """The bound cascade needs alpha > 0 and a > 0"""
    if spec.alpha.sign() <= 0:
        raise UnsupportedInstanceError(f"dominant root {spec.alpha} is not positive (P = {spec.P})")
    if spec.a.sign() <= 0:
        raise UnsupportedInstanceError(f"leading Binet coefficient a = {spec.a} is not positive")


def dominance_constants(spec: RecurrenceSpec, p: int, bits: int = Config.BOUND_PRECISION_BITS) -> DominanceConstants:
    if p < 2:
        raise DomainError(f"p = {p} must be at least 2")
    exact_d0 = (abs(spec.a) + abs(spec.b)) / abs(spec.sqrt_delta)
    d0_int = max(1, ceil(exact_d0))
    target = d0_int * abs(spec.alpha)
    d1 = 1
    while QuadElem(p**d1) < target or QuadElem(p**d1) <= abs(spec.alpha):
        d1 += 1
    logger.debug(f"dominance constants for p={p}: d0={exact_d0}, d0_int={d0_int}, d1={d1}")
    return DominanceConstants(to_real(exact_d0, bits), d0_int, d1)


def ell_bound(spec: RecurrenceSpec, t: int, bits: int = Config.BOUND_PRECISION_BITS) -> HighPrecReal:
    """Largest n1 for which a stage form can vanish; non-positive when |beta| < |alpha|"""
    if not spec.b:
        raise DomainError("ell is undefined for b = 0")
    if t == 1:
        # a single term: u_n = p^z, the form never vanishes
        return HighPrecReal.exact(0, bits)
    log_ratio = to_real(abs(spec.beta) / abs(spec.alpha), bits).log()
    values = []
    for i in range(1, t + 1):
        arg = (abs(spec.a) * (t - i) + (t - 1) * abs(spec.b)) / abs(spec.b)
        values.append(to_real(arg, bits).log() / log_ratio)
    return maximum(*values)


def minimum_term(spec: RecurrenceSpec, n_floor: int) -> Optional[int]:
    """Certified min of u_n over n >= n_floor, or None when it cannot be certified

    Needs alpha > 1, |beta| <= 1 and a > 0, so that u_n >= (a alpha^n - |b|)/sqrt(delta)
    grows without bound.
    """
    if not (spec.alpha > 1 and abs(spec.beta) <= 1 and spec.a.sign() > 0):
        return None
    root = abs(spec.sqrt_delta)
    running: Optional[int] = None
    power = spec.alpha**n_floor
    for _, value in islice(iter_terms(spec, n_floor), Config.U_MIN_SCAN_LIMIT):
        running = value if running is None else min(running, value)
        if (spec.a * power - abs(spec.b)) / root >= running:
            return running
        power = power * spec.alpha
    return None
