from typing import Optional, Sequence


class PowersumsError(Exception):
    """Base error; `exit_code` is what the CLI returns for it"""

    exit_code = 1


class ConfigError(PowersumsError):
    exit_code = 2


class UnsupportedInstanceError(PowersumsError):
    """Instance is valid but outside the analytic bound/reduction route"""

    exit_code = 2


class NonDegeneracyError(PowersumsError):
    exit_code = 3

    def __init__(self, violations: Sequence[str]):
        self.violations = tuple(violations)
        super().__init__("degenerate recurrence: " + "; ".join(self.violations))


class ReductionInconclusiveError(PowersumsError):
    exit_code = 4


class RationalGammaError(ReductionInconclusiveError):
    pass


class ResourceGuardError(PowersumsError):
    exit_code = 5


class PrecisionExhaustedError(ResourceGuardError):
    def __init__(self, message: str, required_bits: Optional[int] = None):
        self.required_bits = required_bits
        if required_bits is not None:
            message = f"{message} (estimated requirement: {required_bits} bits)"
        super().__init__(message)


class ArithmeticConsistencyError(PowersumsError):
    pass


class DomainError(PowersumsError, ValueError):
    pass
