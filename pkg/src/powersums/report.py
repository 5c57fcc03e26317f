"""JSON reports: certified reals as decimal endpoints, big integers as strings."""

import dataclasses
import json
import logging
from decimal import Context, Decimal
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional

from . import __version__
from .config import Config
from .intervals import HighPrecReal
from .qfield import QuadElem

logger = logging.getLogger(__name__)

MAX_SAFE_INT = 2**53


def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) > MAX_SAFE_INT else obj
    if isinstance(obj, float):
        return obj
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, HighPrecReal):
        lower, upper = obj.to_decimal_strings(Config.REPORT_DIGITS)
        return {"lower": lower, "upper": upper}
    if isinstance(obj, Fraction):
        if obj.denominator == 1:
            return to_jsonable(obj.numerator)
        ctx = Context(prec=Config.REPORT_DIGITS)
        return str(ctx.divide(Decimal(obj.numerator), Decimal(obj.denominator)))
    if isinstance(obj, QuadElem):
        return str(obj)
    if dataclasses.is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def build_report(mode: str, config: Dict[str, Any], **sections: Any) -> Dict[str, Any]:
    report: Dict[str, Any] = {
        "tool": "powersums",
        "version": __version__,
        "mode": mode,
        "config": to_jsonable(config),
        "precision_bits": None,
        "certificate": None,
        "reduction": None,
        "solutions": None,
        "degenerate_cases": None,
        "continued_fraction": None,
        "search": None,
        "error": None,
    }
    for key, value in sections.items():
        report[key] = to_jsonable(value)
    return report


def write_report(report: Dict[str, Any], output_path: str) -> Path:
    path = Path(output_path)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump(report, f, indent=2)
        f.write("\n")
    logger.info(f"Report written to {path}")
    return path


def load_report(path: str) -> Optional[Dict[str, Any]]:
    with open(path) as f:
        return json.load(f)
