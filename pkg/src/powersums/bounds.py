"""The analytic bound chain.

Each stage k bounds gap_k = n1 - n_(k+1) (the last stage bounds n1 itself) through
a linear form in three logarithms

    Lambda_k = p^z * alpha^(-n1) * (alpha - beta) / (a * Phi_k) - 1,
    Phi_k = 1 + alpha^(n2 - n1) + ... + alpha^(nk - n1),

squeezed between Matveev's lower bound and |Lambda_k| < c_k * base^(-gap_k).
Every constant is certified and rounded up to `Config.SIGNIFICANT_DIGITS` digits.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Union

from .config import Config
from .errors import DomainError
from .intervals import HighPrecReal, format_decimal, maximum, real, round_up_fraction
from .qfield import QuadElem, log_height, to_real
from .recurrence import (
    RecurrenceSpec,
    dominance_constants,
    ell_bound,
    require_analytic,
    require_nondegenerate,
)
from .types import Anchor, BoundCertificate, LedgerEntry, StageBound

logger = logging.getLogger(__name__)

BITS = Config.BOUND_PRECISION_BITS
MIN_A = Fraction(4, 25)  # 0.16

GapPrior = Union[StageBound, int]


@dataclass(frozen=True)
class LinearFormParams:
    num_logs: int
    degree_D: int
    A: Sequence[Union[Fraction, int]]
    B: Optional[int] = None
    heights: Optional[Sequence[HighPrecReal]] = None
    logs: Optional[Sequence[HighPrecReal]] = None

    def __post_init__(self):
        if self.num_logs < 1 or len(self.A) != self.num_logs:
            raise DomainError(f"expected {self.num_logs} A-values, got {len(self.A)}")
        if self.degree_D < 1:
            raise DomainError(f"degree {self.degree_D} must be positive")
        for j, A in enumerate(self.A):
            if A < MIN_A:
                raise DomainError(f"A{j + 1} = {A} is below 0.16")
            if self.heights is not None and not (self.degree_D * self.heights[j]).certainly_le(A):
                raise DomainError(f"A{j + 1} = {A} is below D*h = {self.degree_D * self.heights[j]}")
            if self.logs is not None and not abs(self.logs[j]).certainly_le(A):
                raise DomainError(f"A{j + 1} = {A} is below |log| = {abs(self.logs[j])}")


def matveev_exponent(params: LinearFormParams, bits: int = BITS) -> Fraction:
    """C0 with |Lambda| > exp(-C0 * (1 + log B)), rounded up"""
    t, D = params.num_logs, params.degree_D
    value = HighPrecReal.exact(Fraction(7, 5) * 30 ** (t + 3) * t**4 * D * D, bits)
    value = value * HighPrecReal.exact(t, bits).sqrt()
    value = value * (1 + HighPrecReal.exact(D, bits).log())
    for A in params.A:
        value = value * A
    return round_up_fraction(value)


def a3_constant(spec: RecurrenceSpec, i: int, bits: int = BITS) -> HighPrecReal:
    """The gap-free part of A3(i): 2(h(a) + d2 log max(sqrt D, 1/sqrt D) + |log sqrt D|) + (i+1) log 4"""
    root = to_real(abs(spec.sqrt_delta), bits)
    value = log_height(spec.a, bits) + abs(root.log())
    # d2 log max(sqrt D, 1/sqrt D) drops out: d2 = 0 for an integer discriminant
    return 2 * value + (i + 1) * HighPrecReal.exact(4, bits).log()


def a3_height(spec: RecurrenceSpec, i: int, gaps: Sequence[int], bits: int = BITS) -> Fraction:
    if len(gaps) != max(i - 1, 0) or any(g < 0 for g in gaps):
        raise DomainError(f"A3({i}) needs {i - 1} non-negative gaps, got {list(gaps)}")
    value = a3_constant(spec, i, bits) + 2 * sum(gaps) * log_height(spec.alpha, bits)
    return round_up_fraction(maximum(value, MIN_A))


def petho_deweger_solve(u, v, h: int, bits: int = BITS) -> Fraction:
    """Upper bound for every x with x < u + v (log x)^h, rounded up"""
    if h < 1:
        raise DomainError(f"h = {h} must be at least 1")
    u, v = real(u, bits), real(v, bits)
    if u.is_negative() or v.is_negative():
        raise DomainError("u and v must be non-negative")
    two_h = HighPrecReal.exact(2**h, bits)
    u_root = u.root(h)
    e2 = HighPrecReal.exact(2, bits).exp()
    second = two_h * (u_root + 2 * e2) ** h
    if v.certainly_le(0):
        return round_up_fraction(maximum(u, second))
    candidates = [second]
    scaled = HighPrecReal.exact(h**h, bits) * v
    if HighPrecReal.exact(1, bits).certainly_lt(scaled):
        first = two_h * (u_root + v.root(h) * scaled.log()) ** h
        candidates.append(first)
    return round_up_fraction(maximum(*candidates))


def log_base(spec: RecurrenceSpec) -> QuadElem:
    """base = min(alpha/|beta|, alpha)"""
    return min(spec.alpha / abs(spec.beta), spec.alpha)


def _ceil_log(p: int, t: int) -> int:
    e = 0
    while p**e < t:
        e += 1
    return e


def c_constant(spec: RecurrenceSpec, t: int, k: int, d0_int: int) -> QuadElem:
    """c_k with |Lambda_k| < c_k * base^(-gap_k)"""
    a = abs(spec.a)
    return k * abs(spec.b) / a + (t - k) * d0_int * abs(spec.sqrt_delta) / a


def stage_gap_bound(
    spec: RecurrenceSpec,
    p: int,
    t: int,
    stage: int,
    prior_gap_bounds: Sequence[GapPrior],
    *,
    matveev_factor: Fraction,
    rho: Fraction,
    n1_floor: int,
    d0_int: int,
    bits: int = BITS,
) -> StageBound:
    """gap_stage * L < C * (log n1)^E, from analytic or fixed prior gap bounds"""
    if len(prior_gap_bounds) != stage - 1:
        raise DomainError(f"stage {stage} needs {stage - 1} prior gap bounds")
    L = to_real(log_base(spec), bits).log()
    lam0 = HighPrecReal.exact(n1_floor, bits).log()
    h_alpha = log_height(spec.alpha, bits)
    c = c_constant(spec, t, stage, d0_int)
    kappa = a3_constant(spec, stage, bits)
    K_rho = HighPrecReal.exact(matveev_factor * rho, bits)

    analytic = [g for g in prior_gap_bounds if isinstance(g, StageBound)]
    fixed = sum(g for g in prior_gap_bounds if not isinstance(g, StageBound))
    E = max([1] + [g.exponent + 1 for g in analytic])

    log_c = to_real(c, bits).log()
    total = (maximum(log_c, 0) / lam0**E) + K_rho * kappa / lam0 ** (E - 1)
    slope = 2 * K_rho * h_alpha
    if fixed:
        total = total + slope * fixed / lam0 ** (E - 1)
    for g in analytic:
        total = total + slope / L * g.C / lam0 ** (E - 1 - g.exponent)

    label = "C_n1" if stage == t else f"C{stage + 1}"
    C = round_up_fraction(total)
    logger.info(f"stage {stage}/{t}: {label} = {format_decimal(C)} (exponent {E})")
    return StageBound(label, stage, c, round_up_fraction(kappa), E, C)


def n1_bound(spec: RecurrenceSpec, p: int, t: int, n1_floor: int = Config.DEFAULT_BRUTE_LIMIT, bits: int = BITS) -> BoundCertificate:
    require_nondegenerate(spec)
    require_analytic(spec)
    if t < 1:
        raise DomainError(f"t = {t} must be positive")
    if n1_floor < 3:
        raise DomainError(f"n1_floor = {n1_floor} must be at least 3")

    ledger: List[LedgerEntry] = []

    def note(name: str, value, text: str, anchor: Anchor):
        shown = format_decimal(value) if isinstance(value, Fraction) else str(value)
        ledger.append(LedgerEntry(name, shown, text, anchor.value))

    dom = dominance_constants(spec, p, bits)
    note("d0", round_up_fraction(dom.d0), "(|a| + |b|) / sqrt(delta)", Anchor.DOMINANCE)
    note("d0_int", dom.d0_int, "max(1, ceil(d0)); |u_n| <= d0_int * alpha^n", Anchor.DOMINANCE)
    note("d1", dom.d1, "smallest d1 with d0_int * alpha <= p^d1; z <= d1 * n1 + e", Anchor.DOMINANCE)
    d2 = 0
    note("d2", d2, "integer discriminant: the denominator term vanishes", Anchor.HEIGHT)

    ell = ell_bound(spec, t, bits)
    note("ell", round_up_fraction(ell), "largest n1 where a stage form may vanish", Anchor.NONVANISHING)

    D = 1 if spec.alpha.is_rational else 2
    log_p = HighPrecReal.exact(p, bits).log()
    log_alpha = to_real(spec.alpha, bits).log()
    h_alpha = log_height(spec.alpha, bits)
    A1 = round_up_fraction(maximum(D * log_p, MIN_A))
    A2 = round_up_fraction(maximum(D * h_alpha, log_alpha, MIN_A))
    note("h(p)", round_up_fraction(log_height(QuadElem(p), bits)), "log p", Anchor.HEIGHT)
    note("h(alpha)", round_up_fraction(h_alpha), "from the minimal polynomial of alpha", Anchor.HEIGHT)
    note("A1", A1, "max(D log p, 0.16)", Anchor.MATVEEV)
    note("A2", A2, "max(D h(alpha), log alpha, 0.16)", Anchor.MATVEEV)

    K = matveev_exponent(LinearFormParams(3, D, (A1, A2, 1)), bits)
    note("K", K, f"1.4 * 30^6 * 3^4.5 * D^2 (1 + log D) * A1 * A2 with D = {D}", Anchor.MATVEEV)

    e = _ceil_log(p, t)
    rho = round_up_fraction(
        1 + (1 + HighPrecReal.exact(dom.d1 + e, bits).log()) / HighPrecReal.exact(n1_floor, bits).log()
    )
    note("e", e, "ceil(log_p t): z <= d1 * n1 + e", Anchor.DOMINANCE)
    note("rho", rho, f"1 + log B <= rho * log n1 for n1 >= {n1_floor}", Anchor.MATVEEV)
    L = to_real(log_base(spec), bits).log()
    note("L", round_up_fraction(L), f"log min(alpha/|beta|, alpha) = log {log_base(spec)}", Anchor.GAP_STAGE)

    stages: List[StageBound] = []
    for stage in range(1, t + 1):
        bound = stage_gap_bound(
            spec, p, t, stage, stages,
            matveev_factor=K, rho=rho, n1_floor=n1_floor, d0_int=dom.d0_int, bits=bits,
        )
        anchor = Anchor.FINAL_STAGE if stage == t else Anchor.GAP_STAGE
        what = "n1" if stage == t else f"n1 - n{stage + 1}"
        note(f"c{stage}", round_up_fraction(to_real(bound.c, bits)), f"|Lambda_{stage}| < c{stage} * base^-({what})", anchor)
        note(f"kappa{stage}", bound.a3_constant, f"gap-free part of A3({stage})", anchor)
        note(bound.label, bound.C, f"({what}) * L < {bound.label} * (log n1)^{bound.exponent}", anchor)
        stages.append(bound)

    final = stages[-1]
    x_bound = petho_deweger_solve(0, HighPrecReal.exact(final.C, bits) / L, final.exponent, bits)
    note("x_bound", x_bound, f"x < (C_n1 / L) (log x)^{final.exponent} closed", Anchor.PETHO_DE_WEGER)

    ell_ceil = max(0, ell.ceil_upper())
    n1_max = max(math.ceil(x_bound), n1_floor, ell_ceil) + e
    z_max = dom.d1 * n1_max
    note("n1_max", n1_max, "max(x_bound, n1_floor, ell) + e", Anchor.PETHO_DE_WEGER)
    note("z_max", z_max, "d1 * n1_max", Anchor.DOMINANCE)
    logger.info(f"n1 <= {n1_max}, z <= {z_max} for p={p}, t={t}")

    return BoundCertificate(
        P=spec.P, Q=spec.Q, u0=spec.u0, u1=spec.u1, p=p, t=t,
        d0_int=dom.d0_int, d1=dom.d1, d2=d2, degree=D, ell=ell,
        A1=A1, A2=A2, matveev_factor=K, n1_floor=n1_floor, e=e, rho=rho,
        log_base=L, stage_constants=stages, n1_max=n1_max, z_max=z_max, ledger=ledger,
    )
