"""Baker-Davenport reduction of the analytic bounds.

For each stage the form |z*gamma - n1 + mu| < A * B^(-gap), with gamma = log p / log alpha
and z <= M, is excluded for large gaps by a convergent denominator q > 6M with
eps = ||mu q|| - M ||gamma q|| > 0.
"""

from __future__ import annotations

import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator, List, Optional, Sequence, Tuple, Union

from sympy.ntheory import multiplicity

from .config import Config
from .errors import PrecisionExhaustedError, RationalGammaError, ReductionInconclusiveError
from .intervals import HighPrecReal
from .qfield import QuadElem, to_real
from .recurrence import RecurrenceSpec, minimum_term
from .bounds import c_constant, log_base
from .types import CFExpansion, ReductionRecord, ReductionTrace, SignCertificate, StageSummary

logger = logging.getLogger(__name__)

RealAt = Callable[[int], HighPrecReal]


def _at(x: Union[HighPrecReal, RealAt]) -> RealAt:
    if isinstance(x, HighPrecReal):
        return lambda bits: x
    return x


def cf_expand(gamma: HighPrecReal, k_max: int = Config.CF_MAX_TERMS) -> CFExpansion:
    """Partial quotients shared by every point of the interval gamma"""
    lo, hi = gamma.to_fractions()
    quotients: List[int] = []
    convergents: List[Tuple[int, int]] = []
    p_prev, q_prev, p_cur, q_cur = 0, 1, 1, 0
    needs_precision = False
    boundary = None
    while len(quotients) < k_max:
        a = math.floor(lo)
        if a != math.floor(hi):
            b = math.floor(hi)
            needs_precision = True
            boundary = (b * p_cur + p_prev, b * q_cur + q_prev)
            break
        p_prev, q_prev, p_cur, q_cur = p_cur, q_cur, a * p_cur + p_prev, a * q_cur + q_prev
        quotients.append(a)
        convergents.append((p_cur, q_cur))
        lo_frac, hi_frac = lo - a, hi - a
        if lo_frac == 0 and hi_frac == 0:
            raise RationalGammaError(
                f"gamma appears rational ({p_cur}/{q_cur}); check multiplicative independence of p and alpha"
            )
        if lo_frac == 0 or hi_frac == 0:
            needs_precision = True
            boundary = (p_cur, q_cur)
            break
        lo, hi = 1 / hi_frac, 1 / lo_frac
    return CFExpansion(gamma, tuple(quotients), tuple(convergents), needs_precision, boundary)


def _required_bits(M: int) -> int:
    return 2 * (6 * max(M, 1)).bit_length() + 64


def certified_expansion(
    gamma_at: RealAt,
    M: int,
    bits: int = Config.INITIAL_PRECISION_BITS,
    precision_cap: int = Config.PRECISION_CAP_BITS,
    extra_terms: int = Config.CONVERGENT_RETRIES,
) -> CFExpansion:
    """Expansion reaching `extra_terms` convergents past q > 6M, doubling precision as needed"""
    while True:
        cfe = cf_expand(gamma_at(bits))
        k = _first_index_above(cfe, 6 * M)
        if k is not None and (k + extra_terms <= cfe.certified_upto or not cfe.needs_precision):
            return cfe
        if bits * 2 > precision_cap:
            if k is not None:
                return cfe
            if cfe.boundary is not None and cfe.gamma.contains(Fraction(*cfe.boundary)):
                p, q = cfe.boundary
                raise RationalGammaError(
                    f"gamma appears rational: {p}/{q} stays inside the interval up to {bits} bits; "
                    "check multiplicative independence of p and alpha"
                )
            raise PrecisionExhaustedError(
                f"no certified convergent with q > {6 * M} at {bits} bits", _required_bits(M)
            )
        bits *= 2
        logger.info(f"raising continued fraction precision to {bits} bits")


def _first_index_above(cfe: CFExpansion, bound: int) -> Optional[int]:
    for k, (_, q) in enumerate(cfe.convergents):
        if q > bound:
            return k
    return None


def find_denominator(
    cfe: CFExpansion,
    M: int,
    *,
    gamma_at: Optional[RealAt] = None,
    precision_cap: int = Config.PRECISION_CAP_BITS,
) -> Tuple[int, int]:
    """Smallest certified k with q_k > 6M"""
    k = _first_index_above(cfe, 6 * M)
    if k is None and gamma_at is not None:
        cfe = certified_expansion(gamma_at, M, cfe.gamma.precision_bits * 2, precision_cap, extra_terms=0)
        k = _first_index_above(cfe, 6 * M)
    if k is None:
        raise PrecisionExhaustedError(
            f"expansion certified to index {cfe.certified_upto} never exceeds 6M = {6 * M}", _required_bits(M)
        )
    return k, cfe.convergents[k][1]


def dp_reduce(
    gamma: Union[HighPrecReal, RealAt],
    mu: Union[HighPrecReal, RealAt],
    A: HighPrecReal,
    B_base: QuadElem,
    M: int,
    *,
    stage: int = 0,
    gaps: Tuple[int, ...] = (),
    expansion: Optional[Callable[[int], CFExpansion]] = None,
    retries: int = Config.CONVERGENT_RETRIES,
    start_bits: int = Config.INITIAL_PRECISION_BITS,
    precision_cap: int = Config.PRECISION_CAP_BITS,
) -> ReductionRecord:
    """Largest m not excluded by a convergent with eps > 0"""
    gamma_at, mu_at = _at(gamma), _at(mu)
    expand = expansion or (lambda bits: cf_expand(gamma_at(bits)))
    bits = start_bits
    while True:
        cfe = expand(bits)
        k0 = _first_index_above(cfe, 6 * M)
        uncertain = k0 is None
        tried = 0
        if k0 is not None:
            g, m = gamma_at(bits), mu_at(bits)
            for k in range(k0, min(k0 + retries, cfe.certified_upto + 1)):
                tried += 1
                q = cfe.convergents[k][1]
                mu_dist = (m * q).distance_to_nearest_int()
                gamma_dist = (g * q).distance_to_nearest_int()
                if mu_dist is None or gamma_dist is None:
                    uncertain = True
                    break
                epsilon = mu_dist - M * gamma_dist
                if epsilon.is_positive():
                    log_B = to_real(B_base, bits).log()
                    threshold = (A * q / epsilon).log() / log_B
                    m_bound = max(0, threshold.floor_upper())
                    logger.debug(f"stage {stage} gaps {gaps}: q_{k}, eps={float(epsilon):.4g}, m <= {m_bound}")
                    return ReductionRecord(stage, gaps, m, A, B_base, M, k, q, epsilon, bits, m_bound)
                if not epsilon.certainly_le(0):
                    uncertain = True
                    break
            else:
                uncertain = uncertain or tried < retries
        if not uncertain:
            raise ReductionInconclusiveError(
                f"reduction inconclusive for stage {stage} gaps {gaps}: eps <= 0 for {tried} convergents; "
                "raise precision or attempt limit"
            )
        if bits * 2 > precision_cap:
            raise PrecisionExhaustedError(
                f"reduction for stage {stage} gaps {gaps} not certified at {bits} bits", _required_bits(M) * 2
            )
        bits *= 2
        logger.info(f"raising reduction precision to {bits} bits")


def homogeneous_reduce(
    gamma: Union[HighPrecReal, RealAt],
    shift: Tuple[int, int],
    A: HighPrecReal,
    B_base: QuadElem,
    M: int,
    *,
    stage: int = 0,
    gaps: Tuple[int, ...] = (),
    expansion: Optional[Callable[[int], CFExpansion]] = None,
    start_bits: int = Config.INITIAL_PRECISION_BITS,
    precision_cap: int = Config.PRECISION_CAP_BITS,
) -> ReductionRecord:
    """Largest m for |z*gamma - n1 + k + j*gamma| < A * B^(-m) when mu = k + j*gamma

    With z' = z + j and n = n1 - k the form is |z' gamma - n|, |z'| <= M + |j|. For
    0 < |z'| < q_k it exceeds |q_(k-1) gamma - p_(k-1)| > 1 / ((a_k + 2) q_(k-1)).
    z' = 0 leaves n1 = k, so the gap is at most k.
    """
    gamma_at = _at(gamma)
    expand = expansion or (lambda bits: cf_expand(gamma_at(bits)))
    k_shift, j = shift
    span = M + abs(j)
    bits = start_bits
    while True:
        cfe = expand(bits)
        k = _first_index_above(cfe, span)
        if k is not None:
            k = max(k, 1)
        if k is not None and k <= cfe.certified_upto:
            a_k, q_prev = cfe.partial_quotients[k], cfe.convergents[k - 1][1]
            separation = HighPrecReal.exact(Fraction(1, (a_k + 2) * q_prev), bits)
            threshold = (A / separation).log() / to_real(B_base, bits).log()
            m_bound = max(0, threshold.floor_upper())
            if j <= 0 <= M + j:
                m_bound = max(m_bound, k_shift)
            mu = k_shift + j * gamma_at(bits)
            logger.debug(f"stage {stage} gaps {gaps}: mu = {k_shift} + {j} gamma, q_{k - 1}, m <= {m_bound}")
            return ReductionRecord(
                stage, gaps, mu, A, B_base, M, k, cfe.convergents[k][1], separation, bits, m_bound, shift
            )
        if bits * 2 > precision_cap:
            raise PrecisionExhaustedError(
                f"homogeneous reduction for stage {stage} gaps {gaps} not certified at {bits} bits",
                _required_bits(span),
            )
        bits *= 2
        logger.info(f"raising reduction precision to {bits} bits")


def require_irrational_gamma(spec: RecurrenceSpec, p: int) -> None:
    """log p / log alpha is rational exactly when alpha is a power of p

    alpha^b = p^a forces alpha^b = beta^b unless alpha is rational, and a rational
    root of x^2 - Px - Q is an integer.
    """
    if not spec.alpha.is_rational:
        return
    alpha = spec.alpha.as_fraction()
    if alpha.denominator == 1 and alpha > 1:
        e = multiplicity(p, alpha.numerator)
        if p**e == alpha.numerator:
            raise RationalGammaError(
                f"gamma = log {p} / log {alpha} = 1/{e} is rational: alpha is a power of p"
            )


def stage_value(spec: RecurrenceSpec, gaps: Sequence[int]) -> QuadElem:
    """(alpha - beta) / (a (1 + alpha^-x1 + ... + alpha^-xk)), exact"""
    inv = 1 / spec.alpha
    total = QuadElem(1)
    for x in gaps:
        total = total + inv**x
    return spec.sqrt_delta / (spec.a * total)


def stage_functions(spec: RecurrenceSpec) -> Tuple[Callable[[int], QuadElem], Callable[[int, int], QuadElem]]:
    def phi(x: int) -> QuadElem:
        return stage_value(spec, (x,))

    def psi(x1: int, x2: int) -> QuadElem:
        return stage_value(spec, (x1, x2))

    return phi, psi


@lru_cache(maxsize=Config.GAMMA_CACHE_SIZE)
def _log_alpha(spec: RecurrenceSpec, bits: int) -> HighPrecReal:
    return to_real(spec.alpha, bits).log()


@lru_cache(maxsize=Config.GAMMA_CACHE_SIZE)
def gamma_value(spec: RecurrenceSpec, p: int, bits: int) -> HighPrecReal:
    """log p / log alpha"""
    return HighPrecReal.exact(p, bits).log() / _log_alpha(spec, bits)


@lru_cache(maxsize=Config.GAMMA_CACHE_SIZE)
def gamma_expansion(spec: RecurrenceSpec, p: int, bits: int) -> CFExpansion:
    return cf_expand(gamma_value(spec, p, bits))


def mu_value(spec: RecurrenceSpec, gaps: Sequence[int], bits: int) -> HighPrecReal:
    return to_real(stage_value(spec, gaps), bits).log() / _log_alpha(spec, bits)


def integral_shift(
    spec: RecurrenceSpec,
    p: int,
    gaps: Sequence[int],
    bits: int = Config.BOUND_PRECISION_BITS,
) -> Optional[Tuple[int, int]]:
    """(k, j) with stage value alpha^k p^j exactly, so mu = k + j*gamma; None otherwise"""
    value = stage_value(spec, gaps)
    log_alpha = _log_alpha(spec, bits)
    for j in range(-Config.SHIFT_POWER_RANGE, Config.SHIFT_POWER_RANGE + 1):
        rest = value / QuadElem(p) ** j
        if rest.sign() <= 0:
            continue
        k = (to_real(rest, bits).log() / log_alpha + Fraction(1, 2)).floor()
        if k is not None and spec.alpha**k == rest:
            return k, j
    return None


def sign_analysis(
    spec: RecurrenceSpec,
    t: int,
    stage: int,
    n_floor: int = 0,
    d0_int: int = 1,
    bits: int = Config.BOUND_PRECISION_BITS,
) -> SignCertificate:
    """One-sided or doubled two-sided constant A for the stage's logarithmic form"""
    c = c_constant(spec, t, stage, d0_int)
    log_alpha = _log_alpha(spec, bits)
    c_real = to_real(c, bits)
    u_min = None
    if stage < t:
        u_min = minimum_term(spec, n_floor)
    if u_min is not None and u_min > 0:
        slack = (t - stage) * u_min - stage * abs(spec.b) / abs(spec.sqrt_delta)
        if slack.sign() > 0:
            return SignCertificate(
                stage, True, c, c_real / log_alpha, 0, u_min,
                f"Lambda > 0: the {t - stage} trailing terms are >= {u_min} and outweigh "
                f"{stage}|b|/sqrt(delta)",
            )
    two_c = 2 * c
    base = log_base(spec)
    if two_c <= 1:
        min_gap = 0
    else:
        ratio = to_real(two_c, bits).log() / to_real(base, bits).log()
        min_gap = max(0, ratio.floor_upper() + 1)
    reason = "final stage" if stage == t else "sign of Lambda not certified"
    return SignCertificate(
        stage, False, c, 2 * c_real / log_alpha, min_gap, u_min,
        f"{reason}: |Lambda| < 1/2 once the gap reaches {min_gap}, so |log(1 + Lambda)| < 2|Lambda|",
    )


def gap_grid(bounds: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    """Weakly increasing tuples x1 <= x2 <= ... with x_j <= bounds[j]"""
    if not bounds:
        yield ()
        return

    def extend(prefix: Tuple[int, ...], j: int) -> Iterator[Tuple[int, ...]]:
        if j == len(bounds):
            yield prefix
            return
        start = prefix[-1] if prefix else 0
        for x in range(start, bounds[j] + 1):
            yield from extend(prefix + (x,), j + 1)

    yield from extend((), 0)


def reduce_bounds(
    spec: RecurrenceSpec,
    p: int,
    t: int,
    M: int,
    *,
    n_floor: int = 0,
    d0_int: int = 1,
    precision_cap: int = Config.PRECISION_CAP_BITS,
    retries: int = Config.CONVERGENT_RETRIES,
) -> ReductionTrace:
    """Stage-by-stage reduction; the last stage bounds n1"""
    trace = ReductionTrace(M)
    require_irrational_gamma(spec, p)
    gamma_at = lambda bits: gamma_value(spec, p, bits)  # noqa: E731
    cfe = certified_expansion(gamma_at, M, Config.INITIAL_PRECISION_BITS, precision_cap)
    bits = cfe.gamma.precision_bits
    base = log_base(spec)
    if cfe.certified_upto > Config.CF_REPORT_TERMS:
        logger.warning(
            f"gamma = log {p} / log alpha treated as irrational: {cfe.certified_upto + 1} certified quotients, "
            "no proof of multiplicative independence"
        )

    bounds: List[int] = []
    for stage in range(1, t + 1):
        sign = sign_analysis(spec, t, stage, n_floor, d0_int)
        label = "n1" if stage == t else f"n1-n{stage + 1}"
        stage_bound = 0
        count = 0
        for gaps in gap_grid(bounds):
            shift = integral_shift(spec, p, gaps)
            if shift is not None:
                record = homogeneous_reduce(
                    gamma_at,
                    shift,
                    sign.A,
                    base,
                    M,
                    stage=stage,
                    gaps=gaps,
                    expansion=lambda b: gamma_expansion(spec, p, b),
                    start_bits=bits,
                    precision_cap=precision_cap,
                )
            else:
                record = dp_reduce(
                    gamma_at,
                    lambda b, gaps=gaps: mu_value(spec, gaps, b),
                    sign.A,
                    base,
                    M,
                    stage=stage,
                    gaps=gaps,
                    expansion=lambda b: gamma_expansion(spec, p, b),
                    retries=retries,
                    start_bits=bits,
                    precision_cap=precision_cap,
                )
            bits = max(bits, record.precision_bits)
            trace.records.append(record)
            stage_bound = max(stage_bound, record.m_bound, sign.min_gap - 1)
            count += 1
        logger.info(f"stage {stage}: {label} <= {stage_bound} over {count} reductions")
        trace.stages.append(StageSummary(stage, label, stage_bound, sign, count))
        bounds.append(stage_bound)

    trace.records.sort(key=lambda r: (r.stage, r.gaps))
    trace.precision_bits = bits
    return trace
