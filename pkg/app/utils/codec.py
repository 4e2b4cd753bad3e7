"""JSON encoding of polynomials, cells and domains (exact rationals as "p/q" strings)."""
import json
from typing import Any, Dict, List

from ..core.exceptions import BuiltinParameterError, PeriodError
from ..models import Box, Cell, Domain, Inequality, Polynomial
from .exactnum import format_rational, parse_rational


def polynomial_to_json(p: Polynomial) -> Dict[str, str]:
    return {",".join(str(e) for e in exps): format_rational(c)
            for exps, c in sorted(p.terms.items())}


def polynomial_from_json(data: Dict[str, str], nvars: int) -> Polynomial:
    terms = {}
    for key, coeff in data.items():
        exps = tuple(int(e) for e in key.split(",")) if key else ()
        terms[exps] = parse_rational(str(coeff))
    return Polynomial(nvars, terms)


def cell_to_json(c: Cell) -> Dict[str, Any]:
    return {
        "dim": c.dim,
        "constraints": [polynomial_to_json(i.poly) for i in c.constraints],
        "box": [[format_rational(lo), format_rational(hi)] for lo, hi in c.box.intervals],
    }


def cell_from_json(data: Dict[str, Any]) -> Cell:
    try:
        dim = int(data["dim"])
        box = Box(tuple((parse_rational(str(lo)), parse_rational(str(hi))) for lo, hi in data["box"]))
        constraints = tuple(Inequality(polynomial_from_json(p, dim)) for p in data["constraints"])
    except PeriodError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise BuiltinParameterError(f"Malformed cell payload: {exc}")
    return Cell(dim, constraints, box)


def domain_to_json(d: Domain) -> List[Dict[str, Any]]:
    return [cell_to_json(c) for c in d]


def domain_from_json(data: List[Dict[str, Any]]) -> Domain:
    return Domain(tuple(cell_from_json(c) for c in data))


def encode_payload(payload: Any) -> str:
    """Compact, key-sorted JSON so identical results give identical bytes."""
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def decode_payload(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise BuiltinParameterError(f"Invalid JSON payload: {exc.msg}", position=exc.pos)
