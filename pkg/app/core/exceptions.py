"""
Error hierarchy shared by the library, the CLI and the HTTP layer.

Every error carries a machine-readable code and a detail dict; the CLI prints
``to_payload()`` on stderr and exits with ``exit_code``, the API returns it as
the ``detail`` of an HTTPException.
"""
from typing import Any, Dict, Iterable, Optional


class PeriodError(Exception):
    code = "period_error"
    exit_code = 2
    status_code = 400

    def __init__(self, message: str, **detail: Any):
        super().__init__(message)
        self.message = message
        self.detail: Dict[str, Any] = detail

    def to_payload(self) -> Dict[str, Any]:
        payload = {"error": self.code, "message": self.message}
        payload.update({k: jsonable(v) for k, v in self.detail.items()})
        return payload


def jsonable(value: Any) -> Any:
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if isinstance(value, (list, tuple, set, frozenset)):
        return [jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    return str(value)


class ExactArithmeticError(PeriodError):
    code = "division_by_zero"


class MixedRadicandError(PeriodError):
    code = "mixed_radicand"


class OutOfRangeError(PeriodError):
    code = "out_of_range"


class DimensionMismatchError(PeriodError):
    code = "dimension_mismatch"


class EmptyDomainError(PeriodError):
    code = "empty_domain"


class BoxViolationError(PeriodError):
    code = "box_violation"
    exit_code = 1


class UnknownBuiltinError(PeriodError):
    code = "unknown_builtin"


class BuiltinParameterError(PeriodError):
    code = "builtin_parameter"


class SamplingParameterError(PeriodError):
    code = "sampling_parameter"


class ZeroPolynomialError(PeriodError):
    code = "zero_polynomial"


class EndpointRootError(PeriodError):
    code = "endpoint_root"


class PoleInIntervalError(PeriodError):
    code = "pole_in_interval"


class UnfactorableError(PeriodError):
    code = "unfactorable_denominator"


class InconsistentFactorizationError(PeriodError):
    code = "inconsistent_factorization"


class NonConvergenceError(PeriodError):
    code = "non_convergence"
    exit_code = 1


class ExprSyntaxError(PeriodError):
    code = "syntax_error"
    status_code = 422

    def __init__(self, message: str, offset: int, expected: Optional[Iterable[str]] = None):
        super().__init__(message, offset=offset, expected=sorted(set(expected or ())))
        self.offset = offset
        self.expected = self.detail["expected"]


class VerificationError(PeriodError):
    code = "verification_failed"
    exit_code = 1
    status_code = 500


class InternalError(PeriodError):
    """Any failure that is not a PeriodError, reported with its type."""

    code = "internal_error"
    exit_code = 1
    status_code = 500
