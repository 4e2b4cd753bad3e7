"""
Gallery of named periods: each entry pairs an expression with its reference
value and the identity that defines its witness.
"""
import math
from typing import List, NamedTuple

from ..schemas import GalleryEntry
from ..utils.expr import parse_expr
from ..witness import PeriodWitness, build_witness


class _Seed(NamedTuple):
    name: str
    expression: str
    value: float
    anchor: str


GALLERY: List[_Seed] = [
    _Seed("half", "1/2", 0.5, "1/2 = vol{0 <= x <= 1/2}"),
    _Seed("sqrt2", "sqrt(2)", math.sqrt(2), "sqrt(2) = vol{x >= 0, x^2 <= 2}"),
    _Seed("pi", "pi", math.pi, "pi = vol{x^2 + y^2 <= 1}"),
    _Seed("log2", "log(2)", math.log(2), "log(2) = vol{1 <= x <= 2, 0 <= y, xy <= 1}"),
    _Seed("log3", "log(3)", math.log(3), "log(3) = vol{1 <= x <= 3, 0 <= y, xy <= 1}"),
    _Seed("pi_log2", "pi_log2", math.pi * math.log(2),
          "pi log(2) = vol{x^2 + y^2 <= 1, 0 <= z(x^2 + y^2 + 1) <= 1}"),
    _Seed("pi_log3", "pi_log(3)", math.pi * math.log(3),
          "pi log(3) = vol{x^2 + y^2 <= 2, 0 <= z(x^2 + y^2 + 1) <= 1}"),
    _Seed("pi_squared", "pi_squared", math.pi ** 2,
          "pi^2 = vol{x^2 + y^2 <= 1, 0 <= z((x^2 + y^2)^2 + 1) <= 4}"),
    _Seed("zeta2", "zeta(2)", math.pi ** 2 / 6, "zeta(2) = 2 B_1 pi^2 / 2! with B_1 = 1/6"),
    _Seed("zeta4", "zeta(4)", math.pi ** 4 / 90, "zeta(4) = 2^3 B_2 pi^4 / 4! with B_2 = 1/30"),
    _Seed("non_sharp", "add(pi, add(1, neg(pi)))", 1.0,
          "pi + (1 - pi) = 1 keeps bound 2: cancellation is invisible to the ledger"),
]


def gallery_witnesses() -> List[PeriodWitness]:
    return [build_witness(parse_expr(seed.expression)) for seed in GALLERY]


def gallery_entries() -> List[GalleryEntry]:
    entries = []
    for seed, w in zip(GALLERY, gallery_witnesses()):
        entries.append(GalleryEntry(
            name=seed.name,
            expression=seed.expression,
            value=seed.value,
            bound=int(w.bound),
            provenance=w.bound_ledger.provenance,
            anchor=seed.anchor,
        ))
    return entries
