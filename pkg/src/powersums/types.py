from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Tuple

from .intervals import HighPrecReal
from .qfield import QuadElem


class Mode(str, Enum):
    SOLVE = "solve"
    BOUND = "bound"
    REDUCE = "reduce"
    SEARCH = "search"
    CF = "cf"


class Anchor(str, Enum):
    DOMINANCE = "dominance"
    HEIGHT = "height"
    MATVEEV = "matveev"
    NONVANISHING = "nonvanishing"
    GAP_STAGE = "gap-stage"
    FINAL_STAGE = "final-stage"
    PETHO_DE_WEGER = "petho-de-weger"
    SEARCH_WINDOW = "search-window"


@dataclass(frozen=True)
class LedgerEntry:
    name: str
    value: str
    note: str
    anchor: str


@dataclass(frozen=True)
class DominanceConstants:
    d0: HighPrecReal
    d0_int: int
    d1: int


@dataclass
class NonDegeneracyCertificate:
    passed: bool
    violations: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)


@dataclass(frozen=True)
class StageBound:
    """gap * L < C * (log n1) ** exponent, or n1 * L < ... for the final stage"""

    label: str
    stage: int
    c: QuadElem
    a3_constant: Fraction
    exponent: int
    C: Fraction


@dataclass
class BoundCertificate:
    P: int
    Q: int
    u0: int
    u1: int
    p: int
    t: int
    d0_int: int
    d1: int
    d2: int
    degree: int
    ell: HighPrecReal
    A1: Fraction
    A2: Fraction
    matveev_factor: Fraction
    n1_floor: int
    e: int
    rho: Fraction
    log_base: HighPrecReal
    stage_constants: List[StageBound]
    n1_max: int
    z_max: int
    ledger: List[LedgerEntry] = field(default_factory=list)


@dataclass(frozen=True)
class CFExpansion:
    gamma: HighPrecReal
    partial_quotients: Tuple[int, ...]
    convergents: Tuple[Tuple[int, int], ...]
    needs_precision: bool = False
    # rational (p, q) the interval was still straddling when expansion stopped
    boundary: Optional[Tuple[int, int]] = None

    @property
    def certified_upto(self) -> int:
        return len(self.partial_quotients) - 1


@dataclass(frozen=True)
class SignCertificate:
    stage: int
    one_sided: bool
    c: QuadElem
    A: HighPrecReal
    min_gap: int
    u_min: Optional[int]
    reason: str


@dataclass(frozen=True)
class ReductionRecord:
    stage: int
    gaps: Tuple[int, ...]
    mu: HighPrecReal
    A: HighPrecReal
    B_base: QuadElem
    M: int
    k: int
    q: int
    epsilon: HighPrecReal
    precision_bits: int
    m_bound: int
    # (k, j) when the stage value is alpha^k p^j and the form is homogeneous
    shift: Optional[Tuple[int, int]] = None


@dataclass(frozen=True)
class StageSummary:
    stage: int
    label: str
    bound: int
    sign: SignCertificate
    reductions: int


@dataclass
class ReductionTrace:
    M: int
    stages: List[StageSummary] = field(default_factory=list)
    records: List[ReductionRecord] = field(default_factory=list)
    precision_bits: int = 0

    @property
    def n1_bound(self) -> int:
        return self.stages[-1].bound

    @property
    def gap_bounds(self) -> List[int]:
        return [s.bound for s in self.stages[:-1]]


@dataclass(frozen=True, order=True)
class Solution:
    indices: Tuple[int, ...]
    z: int

    def as_list(self) -> List[int]:
        return [*self.indices, self.z]


@dataclass
class DegenerateCase:
    kind: str
    description: str
    solutions: List[Solution] = field(default_factory=list)
    delegated: bool = False
    reduced_t: Optional[int] = None
