"""Bound, reduce, search: the end-to-end resolution of u_n1 + ... + u_nt = p^z."""

import bisect
import logging
from dataclasses import dataclass, field
from itertools import accumulate
from typing import Dict, List, Optional

from sympy import isprime
from sympy.ntheory import multiplicity

from .bounds import n1_bound
from .config import Config
from .errors import ArithmeticConsistencyError, ConfigError, ResourceGuardError
from .recurrence import RecurrenceSpec, require_analytic, require_nondegenerate, terms
from .reduction import reduce_bounds
from .types import Anchor, BoundCertificate, DegenerateCase, LedgerEntry, ReductionTrace, Solution

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProblemInstance:
    spec: RecurrenceSpec
    p: int
    t: int
    brute_limit: int = Config.DEFAULT_BRUTE_LIMIT

    def __post_init__(self):
        if self.p < 2 or not isprime(self.p):
            raise ConfigError(f"p = {self.p} is not prime")
        if not 2 <= self.t <= Config.MAX_T:
            raise ConfigError(f"t = {self.t} outside 2..{Config.MAX_T}")
        if self.brute_limit < 0:
            raise ConfigError(f"brute_limit = {self.brute_limit} is negative")


@dataclass
class SolveResult:
    t: int
    certificate: BoundCertificate
    trace: ReductionTrace
    search_limit: int
    solutions: List[Solution]
    degenerate_cases: List[DegenerateCase] = field(default_factory=list)
    subproblems: List["SolveResult"] = field(default_factory=list)


def is_power_of(value: int, p: int) -> Optional[int]:
    """z with value == p^z, else None"""
    if value < 1:
        return None
    z = multiplicity(p, value)
    return z if p**z == value else None


def _search(spec: RecurrenceSpec, p: int, t: int, n_max: int, min_index: int = 0) -> List[Solution]:
    if n_max < min_index:
        return []
    u = terms(spec, n_max)
    index: Dict[int, List[int]] = {}
    for n in range(min_index, n_max + 1):
        index.setdefault(u[n], []).append(n)
    window = u[min_index:]
    low = list(accumulate(window, min))
    high = list(accumulate(window, max))

    top = max(t * high[-1], 1)
    powers = [1]
    while powers[-1] * p <= top:
        powers.append(powers[-1] * p)

    found: List[Solution] = []

    def last_index(prefix: List[int], total: int):
        cap = prefix[-1] if prefix else n_max
        lo_sum, hi_sum = total + low[cap - min_index], total + high[cap - min_index]
        start = bisect.bisect_left(powers, lo_sum)
        stop = bisect.bisect_right(powers, hi_sum)
        for z in range(start, stop):
            for n in index.get(powers[z] - total, ()):
                if n <= cap:
                    found.append(Solution(tuple(prefix + [n]), z))

    def extend(prefix: List[int], total: int):
        if len(prefix) == t - 1:
            last_index(prefix, total)
            return
        cap = prefix[-1] if prefix else n_max
        for n in range(min_index, cap + 1):
            extend(prefix + [n], total + u[n])

    extend([], 0)
    for solution in found:
        if is_power_of(sum(u[n] for n in solution.indices), p) != solution.z:
            raise ArithmeticConsistencyError(f"search produced a false solution {solution}")
    return sorted(found, reverse=True)


def brute_force(
    instance: ProblemInstance,
    n_max: int,
    min_index: int = 0,
    allow_large: bool = False,
) -> List[Solution]:
    """All weakly ordered n_max >= n1 >= ... >= nt >= min_index with a power-of-p sum"""
    if not allow_large and (instance.t > Config.BRUTE_GUARD_T or n_max > Config.BRUTE_GUARD_N):
        raise ResourceGuardError(
            f"search with t={instance.t}, n_max={n_max} exceeds the guard "
            f"(t <= {Config.BRUTE_GUARD_T}, n_max <= {Config.BRUTE_GUARD_N}); set allow_large_search"
        )
    solutions = _search(instance.spec, instance.p, instance.t, n_max, min_index)
    logger.info(f"search up to n={n_max}: {len(solutions)} solutions")
    return solutions


def handle_degenerate(instance: ProblemInstance, n_max: Optional[int] = None) -> List[DegenerateCase]:
    spec, p, t = instance.spec, instance.p, instance.t
    window = instance.brute_limit if n_max is None else n_max
    u = terms(spec, window)
    cases: List[DegenerateCase] = []

    equal = []
    for n, value in enumerate(u):
        z = is_power_of(t * value, p)
        if z is not None:
            equal.append(Solution((n,) * t, z))
    cases.append(
        DegenerateCase(
            "all-equal",
            f"n1 = ... = n{t}: {t} * u_n = {p}^z scanned for n <= {window}; larger n by the general search",
            sorted(equal, reverse=True),
            delegated=True,
        )
    )

    if spec.u0 == 0:
        cases.append(
            DegenerateCase(
                "trailing-zero",
                f"n{t} = 0 with u_0 = 0: the equation drops to {t - 1} terms",
                delegated=True,
                reduced_t=t - 1,
            )
        )
        if t == 2:
            single = []
            for n, value in enumerate(u):
                z = is_power_of(value, p)
                if z is not None:
                    single.append(Solution((n, 0), z))
            cases.append(
                DegenerateCase(
                    "single-term",
                    f"n2 = 0: u_n = {p}^z scanned for n <= {window}; larger n by the one-term pipeline",
                    sorted(single, reverse=True),
                    delegated=True,
                    reduced_t=1,
                )
            )
    else:
        cases.append(
            DegenerateCase(
                "zero-index-kept",
                f"u_0 = {spec.u0} != 0: index 0 stays an ordinary term of the search",
            )
        )
    return cases


def _solve_terms(
    spec: RecurrenceSpec,
    p: int,
    t: int,
    brute_limit: int,
    reduction_M: Optional[int],
    precision_cap: int,
    allow_large: bool,
) -> SolveResult:
    n_floor = 1 if spec.u0 == 0 else 0
    logger.info(f"solving {t}-term equation for p={p} ({spec})")
    certificate = n1_bound(spec, p, t, n1_floor=max(brute_limit, Config.MIN_BOUND_FLOOR))
    M = reduction_M if reduction_M is not None else certificate.z_max
    trace = reduce_bounds(
        spec, p, t, M,
        n_floor=n_floor, d0_int=certificate.d0_int, precision_cap=precision_cap,
    )
    limit = max(trace.n1_bound, brute_limit, max(0, certificate.ell.ceil_upper()))
    certificate.ledger.append(
        LedgerEntry("search_limit", str(limit), "max(reduced n1 bound, brute window, ell)", Anchor.SEARCH_WINDOW.value)
    )
    if not allow_large and (t > Config.BRUTE_GUARD_T or limit > Config.BRUTE_GUARD_N):
        raise ResourceGuardError(
            f"reduced search over t={t}, n1 <= {limit} exceeds the guard "
            f"(t <= {Config.BRUTE_GUARD_T}, n_max <= {Config.BRUTE_GUARD_N}); set allow_large_search"
        )
    solutions = _search(spec, p, t, limit, n_floor)

    subproblems: List[SolveResult] = []
    if spec.u0 == 0 and t > 1:
        sub = _solve_terms(spec, p, t - 1, brute_limit, reduction_M, precision_cap, allow_large)
        subproblems.append(sub)
        solutions.extend(Solution(s.indices + (0,), s.z) for s in sub.solutions)
    solutions = sorted(set(solutions), reverse=True)
    return SolveResult(t, certificate, trace, limit, solutions, subproblems=subproblems)


def solve(
    instance: ProblemInstance,
    reduction_M: Optional[int] = None,
    precision_cap: int = Config.PRECISION_CAP_BITS,
    allow_large: bool = False,
) -> SolveResult:
    """Certificate, reduction trace and every solution of the instance"""
    require_nondegenerate(instance.spec)
    require_analytic(instance.spec)
    result = _solve_terms(
        instance.spec, instance.p, instance.t, instance.brute_limit, reduction_M, precision_cap, allow_large
    )
    result.degenerate_cases = handle_degenerate(instance, result.search_limit)
    for case in result.degenerate_cases:
        missing = [s for s in case.solutions if s not in result.solutions and len(s.indices) == instance.t]
        if missing:
            raise ArithmeticConsistencyError(f"{case.kind} solutions {missing} missing from the search")
    logger.info(f"{len(result.solutions)} solutions for t={instance.t}, p={instance.p}")
    return result
