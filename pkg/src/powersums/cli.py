import argparse
import json
import logging
import sys
import time
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .bounds import n1_bound
from .config import Config
from .errors import ConfigError, PowersumsError, PrecisionExhaustedError
from .pipeline import ProblemInstance, SolveResult, brute_force, solve
from .recurrence import RecurrenceSpec, dominance_constants, require_analytic, require_nondegenerate
from .reduction import cf_expand, gamma_value, reduce_bounds, require_irrational_gamma
from .report import build_report, load_report, write_report
from .types import Mode

logger = logging.getLogger(__name__)


class RunConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    P: int = Field(6, description="Recurrence coefficient P in u_n = P u_(n-1) + Q u_(n-2)")
    Q: int = Field(-1, description="Recurrence coefficient Q")
    u0: int = Field(0, description="Initial term u_0")
    u1: int = Field(1, description="Initial term u_1")
    p: int = Field(3, ge=2, description="Prime on the right-hand side")
    t: int = Field(3, ge=2, le=Config.MAX_T, description="Number of terms in the sum")
    brute_limit: int = Field(Config.DEFAULT_BRUTE_LIMIT, ge=0, description="Indices always searched exhaustively")
    precision_cap_bits: int = Field(
        Config.PRECISION_CAP_BITS, ge=Config.INITIAL_PRECISION_BITS, description="Largest working precision"
    )
    output_path: str = Field("report.json", description="Where the JSON report is written")
    mode: Mode = Field(Mode.SOLVE, description="solve, bound, reduce, search or cf")
    reduction_M: Optional[int] = Field(None, ge=1, description="Override of the bound on z used in the reduction")
    certificate_path: Optional[str] = Field(None, description="Earlier report whose certificate supplies M in reduce mode")
    cf_terms: int = Field(Config.CF_REPORT_TERMS, ge=1, description="Partial quotients reported in cf mode")
    include_timing: bool = Field(False, description="Add wall-clock seconds to the report")
    allow_large_search: bool = Field(False, description="Lift the brute-force guard")

    @property
    def spec(self) -> RecurrenceSpec:
        return RecurrenceSpec(self.P, self.Q, self.u0, self.u1)

    def instance(self) -> ProblemInstance:
        return ProblemInstance(self.spec, self.p, self.t, self.brute_limit)


def _subproblem_summary(result: SolveResult) -> List[Dict[str, Any]]:
    out = []
    for sub in result.subproblems:
        out.append(
            {
                "t": sub.t,
                "n1_max": sub.certificate.n1_max,
                "z_max": sub.certificate.z_max,
                "reduced_bounds": [s.bound for s in sub.trace.stages],
                "search_limit": sub.search_limit,
                "solutions": [s.as_list() for s in sub.solutions],
            }
        )
        out.extend(_subproblem_summary(sub))
    return out


def _run_solve(config: RunConfig) -> Dict[str, Any]:
    result = solve(config.instance(), config.reduction_M, config.precision_cap_bits, config.allow_large_search)
    return {
        "precision_bits": result.trace.precision_bits,
        "certificate": result.certificate,
        "reduction": result.trace,
        "solutions": [s.as_list() for s in result.solutions],
        "degenerate_cases": result.degenerate_cases,
        "search": {
            "n_max": result.search_limit,
            "min_index": 1 if config.u0 == 0 else 0,
            "subproblems": _subproblem_summary(result),
        },
    }


def _run_bound(config: RunConfig) -> Dict[str, Any]:
    config.instance()
    certificate = n1_bound(config.spec, config.p, config.t, n1_floor=max(config.brute_limit, Config.MIN_BOUND_FLOOR))
    return {"precision_bits": Config.BOUND_PRECISION_BITS, "certificate": certificate}


def _reduction_M(config: RunConfig) -> int:
    if config.reduction_M is not None:
        return config.reduction_M
    if config.certificate_path:
        previous = load_report(config.certificate_path)
        try:
            return int(previous["certificate"]["z_max"])
        except (KeyError, TypeError, ValueError) as e:
            raise ConfigError(f"{config.certificate_path} holds no certificate z_max: {e}")
    bound = n1_bound(config.spec, config.p, config.t, n1_floor=max(config.brute_limit, Config.MIN_BOUND_FLOOR))
    return bound.z_max


def _run_reduce(config: RunConfig) -> Dict[str, Any]:
    config.instance()
    spec = config.spec
    require_nondegenerate(spec)
    require_analytic(spec)
    M = _reduction_M(config)
    trace = reduce_bounds(
        spec, config.p, config.t, M,
        n_floor=1 if spec.u0 == 0 else 0,
        d0_int=dominance_constants(spec, config.p).d0_int,
        precision_cap=config.precision_cap_bits,
    )
    return {"precision_bits": trace.precision_bits, "reduction": trace}


def _run_search(config: RunConfig) -> Dict[str, Any]:
    solutions = brute_force(config.instance(), config.brute_limit, allow_large=config.allow_large_search)
    return {
        "solutions": [s.as_list() for s in solutions],
        "search": {"n_max": config.brute_limit, "min_index": 0},
    }


def _run_cf(config: RunConfig) -> Dict[str, Any]:
    spec = config.instance().spec
    require_nondegenerate(spec)
    require_analytic(spec)
    require_irrational_gamma(spec, config.p)
    bits = Config.INITIAL_PRECISION_BITS
    while True:
        cfe = cf_expand(gamma_value(spec, config.p, bits), config.cf_terms)
        if len(cfe.partial_quotients) >= config.cf_terms:
            break
        if bits * 2 > config.precision_cap_bits:
            raise PrecisionExhaustedError(f"only {len(cfe.partial_quotients)} quotients certified at {bits} bits")
        bits *= 2
    return {
        "precision_bits": bits,
        "continued_fraction": {
            "gamma": cfe.gamma,
            "partial_quotients": list(cfe.partial_quotients),
            "convergents": [list(c) for c in cfe.convergents],
        },
    }


RUNNERS = {
    Mode.SOLVE: _run_solve,
    Mode.BOUND: _run_bound,
    Mode.REDUCE: _run_reduce,
    Mode.SEARCH: _run_search,
    Mode.CF: _run_cf,
}


def run(config: RunConfig) -> int:
    """Run one mode and write its report; returns the exit code"""
    started = time.perf_counter()
    echo = config.model_dump(mode="json")
    exit_code = 0
    try:
        sections = RUNNERS[config.mode](config)
    except PowersumsError as e:
        logger.error(f"{type(e).__name__}: {e}")
        sections = {"error": {"type": type(e).__name__, "message": str(e), "exit_code": e.exit_code}}
        exit_code = e.exit_code
    except Exception as e:
        logger.error(f"Unexpected error in {config.mode.value} mode: {e}")
        logger.exception("Full traceback:")
        sections = {"error": {"type": type(e).__name__, "message": str(e), "exit_code": 1}}
        exit_code = 1
    if config.include_timing:
        sections["wall_clock_seconds"] = round(time.perf_counter() - started, 3)
    write_report(build_report(config.mode.value, echo, **sections), config.output_path)
    return exit_code


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="powersums", description="Solve u_n1 + ... + u_nt = p^z for a binary recurrence"
    )
    parser.add_argument("--config", help="JSON config file")
    parser.add_argument("--mode", choices=[m.value for m in Mode])
    parser.add_argument("--precision-cap", type=int, dest="precision_cap_bits")
    parser.add_argument("--brute-limit", type=int, dest="brute_limit")
    parser.add_argument("--out", dest="output_path")
    parser.add_argument("--reduction-m", type=int, dest="reduction_M")
    parser.add_argument(
        "--log-level", type=str.upper, default="WARNING", choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
    )
    return parser.parse_args(argv)


def load_config(args: argparse.Namespace) -> RunConfig:
    data: Dict[str, Any] = {}
    if args.config:
        try:
            with open(args.config) as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"cannot read config {args.config}: {e}")
        if not isinstance(data, dict):
            raise ConfigError(f"config {args.config} is not a JSON object")
    for key in ("mode", "precision_cap_bits", "brute_limit", "output_path", "reduction_M"):
        value = getattr(args, key)
        if value is not None:
            data[key] = value
    try:
        return RunConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigError(str(e))


def main(argv: Optional[List[str]] = None) -> int:
    args = parse_args(argv)
    logging.basicConfig(level=args.log_level, format=Config.LOG_FORMAT)
    try:
        config = load_config(args)
    except ConfigError as e:
        logger.error(f"Invalid configuration: {e}")
        return e.exit_code
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
