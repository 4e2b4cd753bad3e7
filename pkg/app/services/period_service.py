"""
Period service: turns expression text and request fields into witnesses,
estimates, bounds, zeta values, closed forms and reports.
Shared by the CLI and the HTTP routes.
"""
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from ..core.config import settings
from ..core.exceptions import BuiltinParameterError
from ..mcvol import evaluate_witness
from ..models import Polynomial
from ..ratint import FactorList, RationalFunction, closed_form_from_factored, integrate_definite, quad_oracle
from ..seeders.gallery import gallery_entries
from ..schemas import (
    ClosedFormSchema,
    ComplexEstimate,
    DegreeBoundResponse,
    GalleryEntry,
    TranscendenceReport,
    WitnessSchema,
    ZetaEvaluation,
)
from ..utils.codec import decode_payload, domain_to_json
from ..utils.exactnum import format_gaussian, parse_rational
from ..utils.expr import parse_expr
from ..witness import PeriodWitness, build_witness, transcendence_report
from ..zeta import zeta_truncated


def parse_coefficients(values: Sequence[Any]) -> List[Fraction]:
    """Coefficients constant term first, each an int or a "p/q" string."""
    return [parse_rational(str(v)) for v in values]


def parse_factored(data: Dict[str, Any]) -> FactorList:
    """
    {"lead": "2", "linear": [["a", n], ...], "quadratic": [["b", "c", n], ...]}
    for lead * prod (x - a)^n * prod (x^2 + b x + c)^n.
    """
    try:
        linear = tuple((parse_rational(str(a)), int(n)) for a, n in data.get("linear", ()))
        quadratic = tuple((parse_rational(str(b)), parse_rational(str(c)), int(n))
                          for b, c, n in data.get("quadratic", ()))
        lead = parse_rational(str(data.get("lead", "1")))
    except (TypeError, ValueError, AttributeError) as exc:
        raise BuiltinParameterError(f"Malformed factored denominator: {exc}")
    return FactorList(linear, quadratic, lead)


class PeriodService:

    @staticmethod
    def build(text: str) -> PeriodWitness:
        return build_witness(parse_expr(text))

    @staticmethod
    def evaluate(text: str, samples: Optional[int] = None, seed: Optional[int] = None,
                 workers: Optional[int] = None, batch_size: Optional[int] = None) -> ComplexEstimate:
        w = PeriodService.build(text)
        return evaluate_witness(w,
                                settings.default_samples if samples is None else samples,
                                settings.default_seed if seed is None else seed,
                                batch_size=batch_size, workers=workers)

    @staticmethod
    def bound(text: str) -> DegreeBoundResponse:
        w = PeriodService.build(text)
        return DegreeBoundResponse(value=w.bound, provenance=w.bound_ledger.provenance,
                                   signature=str(w), coefficient=format_gaussian(w.signature.coefficient),
                                   max_cell_dim=w.max_dim())

    @staticmethod
    def witness(text: str) -> WitnessSchema:
        w = PeriodService.build(text)
        names = ("re_pos", "re_neg", "im_pos", "im_neg")
        return WitnessSchema(signature=str(w), bound=w.bound,
                             buckets={n: domain_to_json(d) for n, d in zip(names, w.buckets)})

    @staticmethod
    def zeta(text: str, t: float, terms: Optional[int] = None) -> ZetaEvaluation:
        return zeta_truncated(PeriodService.build(text), t, terms)

    @staticmethod
    def ratint(num: Sequence[Any], lo: Any, hi: Any,
               den: Optional[Sequence[Any]] = None,
               factored: Optional[Dict[str, Any]] = None) -> ClosedFormSchema:
        if (den is None) == (factored is None):
            raise BuiltinParameterError("Give exactly one of a coefficient denominator or a factored one")
        num_c = parse_coefficients(num)
        a, b = parse_rational(str(lo)), parse_rational(str(hi))
        if factored is not None:
            factors = parse_factored(factored)
            form = closed_form_from_factored(num_c, factors, a, b)
            f = RationalFunction.from_coefficients(num_c, factors.expand())
        else:
            f = RationalFunction(Polynomial.from_coefficients(num_c),
                                 Polynomial.from_coefficients(parse_coefficients(den)))
            form = integrate_definite(f, a, b)
        return form.to_schema(quad_oracle(f, a, b, settings.quad_tolerance))

    @staticmethod
    def parse_denominator(text: str) -> Dict[str, Any]:
        """CLI helper: a JSON object is a factored denominator, anything else coefficients."""
        stripped = text.strip()
        if stripped.startswith("{"):
            return {"factored": decode_payload(stripped)}
        return {"den": [c for c in stripped.split(",") if c.strip()]}

    @staticmethod
    def gallery() -> List[GalleryEntry]:
        return gallery_entries()

    @staticmethod
    def report(text1: str, text2: str, assert_degrees: Optional[Sequence[int]] = None) -> TranscendenceReport:
        w1, w2 = PeriodService.build(text1), PeriodService.build(text2)
        if assert_degrees is not None and len(assert_degrees) != 2:
            raise BuiltinParameterError("Exactly two asserted degrees are required", given=len(assert_degrees))
        return transcendence_report(w1, w2, tuple(assert_degrees) if assert_degrees is not None else None)
