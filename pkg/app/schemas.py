import math
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, Field, computed_field


def decimal_text(value: Union[int, float]) -> str:
    """Shortest round-trip decimal string; "inf" for an unbounded value."""
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return repr(value)


class VolumeEstimate(BaseModel):
    mean: float
    stderr: float = Field(ge=0.0)
    samples: int
    seed: int

    @computed_field
    @property
    def mean_decimal(self) -> str:
        return decimal_text(self.mean)

    @computed_field
    @property
    def stderr_decimal(self) -> str:
        return decimal_text(self.stderr)


class EstimateDifference(BaseModel):
    mean: float
    stderr: float = Field(ge=0.0)

    @computed_field
    @property
    def mean_decimal(self) -> str:
        return decimal_text(self.mean)

    @computed_field
    @property
    def stderr_decimal(self) -> str:
        return decimal_text(self.stderr)


class ComplexEstimate(BaseModel):
    re: EstimateDifference
    im: EstimateDifference
    samples: int
    seed: int
    buckets: Dict[str, VolumeEstimate] = {}


class DegreeBoundResponse(BaseModel):
    value: Union[int, float]
    provenance: Literal["dimension", "registry", "arithmetic"]
    signature: str
    coefficient: str
    max_cell_dim: int

    @computed_field
    @property
    def value_decimal(self) -> str:
        return decimal_text(self.value)


class ZetaEvaluation(BaseModel):
    t: float
    M: int
    series_value: float
    closed_bound: float
    power_bounds: List[Union[int, float]]
    tail_bound: float
    surrogate: str = "power-degree upper bounds replace exact degrees; series_value bounds the true zeta from above"

    @computed_field
    @property
    def series_value_decimal(self) -> str:
        return decimal_text(self.series_value)

    @computed_field
    @property
    def closed_bound_decimal(self) -> str:
        return decimal_text(self.closed_bound)

    @computed_field
    @property
    def tail_bound_decimal(self) -> str:
        return decimal_text(self.tail_bound)


class TermSchema(BaseModel):
    coeff: str
    arg: str


class ClosedFormSchema(BaseModel):
    """Exact parts as "p/q" or "a + b*sqrt(d)" strings next to the float value."""

    constant: str
    arctan: List[TermSchema]
    log: List[TermSchema]
    float_value: float
    oracle_value: Optional[float] = None

    @computed_field
    @property
    def float_value_decimal(self) -> str:
        return decimal_text(self.float_value)


class TranscendenceReport(BaseModel):
    signatures: List[str]
    bounds: List[Union[int, float]]
    asserted_degrees: Optional[List[int]] = None
    conditional: bool
    conclusions: List[str]
    note: str = ""


class GalleryEntry(BaseModel):
    name: str
    expression: str
    value: float
    bound: int
    provenance: str
    anchor: str


class WitnessSchema(BaseModel):
    signature: str
    bound: Union[int, float]
    buckets: Dict[str, List[Dict[str, Any]]]


class SuiteResult(BaseModel):
    suite: str
    passed: bool
    checks: int
    failures: List[str] = []
    seed: int


# Requests

class ExprRequest(BaseModel):
    expr: str


class EvalRequest(ExprRequest):
    samples: Optional[int] = None
    seed: Optional[int] = None


class ZetaRequest(ExprRequest):
    t: float
    terms: Optional[int] = None


class RatintRequest(BaseModel):
    num: List[str]
    den: Optional[List[str]] = None
    factored: Optional[Dict[str, Any]] = None
    lo: str = Field(alias="from")
    hi: str = Field(alias="to")

    class Config:
        populate_by_name = True


class ReportRequest(BaseModel):
    expr1: str
    expr2: str
    assert_degrees: Optional[List[int]] = None
