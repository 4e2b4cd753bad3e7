"""
Operations on semi-algebraic cells and domains: evaluation, membership,
exact substitutions and the product / padding / translation constructions
used to combine witnesses.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, List, Sequence, Union

import numpy as np

from .core.exceptions import (
    BoxViolationError,
    DimensionMismatchError,
    EmptyDomainError,
    OutOfRangeError,
)
from .models import Box, Cell, Domain, Exponent, Inequality, Polynomial
from .utils.exactnum import RationalLike, format_rational

Scalar = Union[int, Fraction, float]


def poly_eval(p: Polynomial, point: Sequence[Scalar]) -> Union[Fraction, float]:
    """Exact on rational points; on float points the exact value rounded once."""
    if len(point) != p.nvars:
        raise DimensionMismatchError("Point dimension differs from polynomial",
                                     expected=p.nvars, got=len(point))
    floating = any(isinstance(v, float) for v in point)
    exact = [Fraction(v) for v in point]
    total = Fraction(0)
    for exps, c in p.terms.items():
        term = c
        for v, e in zip(exact, exps):
            if e:
                term *= v ** e
        total += term
    return float(total) if floating else total


def cell_contains(c: Cell, point: Sequence[Scalar]) -> bool:
    if len(point) != c.dim:
        raise DimensionMismatchError("Point dimension differs from cell",
                                     expected=c.dim, got=len(point))
    for v, (lo, hi) in zip(point, c.box.intervals):
        if not lo <= Fraction(v) <= hi:
            return False
    return all(poly_eval(ineq.poly, point) >= 0 for ineq in c.constraints)


def cell_contains_array(c: Cell, points: np.ndarray) -> np.ndarray:
    """Vectorised double-precision membership of the rows of ``points``."""
    mask = c.box.contains_array(points)
    for ineq in c.constraints:
        if not mask.any():
            break
        mask &= ineq.poly.evaluate_array(points) >= 0.0
    return mask


def poly_shift(p: Polynomial, axis: int, offset: RationalLike) -> Polynomial:
    """q(x) = p(x with x_axis replaced by x_axis - offset), by binomial expansion."""
    if not 0 <= axis < p.nvars:
        raise DimensionMismatchError("Shift axis out of range", axis=axis, nvars=p.nvars)
    offset = Fraction(offset)
    if offset == 0:
        return p
    out: Dict[Exponent, Fraction] = {}
    for exps, c in p.terms.items():
        e = exps[axis]
        for k in range(e + 1):
            new = exps[:axis] + (k,) + exps[axis + 1:]
            out[new] = out.get(new, Fraction(0)) + c * math.comb(e, k) * (-offset) ** (e - k)
    return Polynomial(p.nvars, out)


def poly_scale_axis(p: Polynomial, axis: int, factor: RationalLike) -> Polynomial:
    """p(x_axis / factor) * factor^D with D the degree in x_axis; factor > 0."""
    factor = Fraction(factor)
    if factor <= 0:
        raise OutOfRangeError("Axis scale factor must be positive", factor=format_rational(factor))
    top = p.degree_in(axis)
    return Polynomial(p.nvars, {e: c * factor ** (top - e[axis]) for e, c in p.terms.items()})


def product(a: Domain, b: Domain) -> Domain:
    """All pairwise cell products; volumes multiply."""
    cells: List[Cell] = []
    for ca in a:
        for cb in b:
            dim = ca.dim + cb.dim
            constraints = tuple(Inequality(i.poly.embed(dim, 0)) for i in ca.constraints)
            constraints += tuple(Inequality(i.poly.embed(dim, ca.dim)) for i in cb.constraints)
            cells.append(Cell(dim, constraints, ca.box * cb.box))
    return Domain(tuple(cells))


def _pad_cell(c: Cell, extra: int) -> Cell:
    dim = c.dim + extra
    constraints = [Inequality(i.poly.embed(dim, 0)) for i in c.constraints]
    for axis in range(c.dim, dim):
        x = Polynomial.variable(dim, axis)
        constraints.append(Inequality(x))
        constraints.append(Inequality(1 - x))
    return Cell(dim, tuple(constraints), Box(c.box.intervals + ((Fraction(0), Fraction(1)),) * extra))


def pad(a: Domain, extra: int) -> Domain:
    """Append ``extra`` unit-interval coordinates to every cell."""
    if extra < 0:
        raise OutOfRangeError("Padding must be non-negative", extra=extra)
    if extra == 0:
        return a
    return Domain(tuple(_pad_cell(c, extra) for c in a))


def _translate_cell(c: Cell, axis: int, offset: Fraction) -> Cell:
    if c.dim <= axis:
        raise DimensionMismatchError("Cell has no such axis", axis=axis, dim=c.dim)
    intervals = list(c.box.intervals)
    lo, hi = intervals[axis]
    intervals[axis] = (lo + offset, hi + offset)
    constraints = tuple(Inequality(poly_shift(i.poly, axis, offset)) for i in c.constraints)
    return Cell(c.dim, constraints, Box(tuple(intervals)))


def translate(a: Domain, axis: int, offset: RationalLike) -> Domain:
    offset = Fraction(offset)
    return Domain(tuple(_translate_cell(c, axis, offset) for c in a))


def scale_axis(a: Domain, factor: RationalLike, axis: int = 0) -> Domain:
    """Stretch ``axis`` of every cell by ``factor`` > 0; volumes scale by ``factor``."""
    factor = Fraction(factor)
    cells = []
    for c in a:
        if c.dim <= axis:
            raise DimensionMismatchError("Cell has no such axis", axis=axis, dim=c.dim)
        intervals = list(c.box.intervals)
        lo, hi = intervals[axis]
        intervals[axis] = (lo * factor, hi * factor)
        constraints = tuple(Inequality(poly_scale_axis(i.poly, axis, factor)) for i in c.constraints)
        cells.append(Cell(c.dim, constraints, Box(tuple(intervals))))
    return Domain(tuple(cells))


def materialize_single_domain(a: Domain) -> Domain:
    """
    Pad every cell to the common maximal dimension, then shift cells along
    axis 0 so that each box starts one unit past the previous box's end.
    """
    if a.is_empty():
        raise EmptyDomainError("Cannot materialize an empty domain")
    top = a.max_dim()
    out: List[Cell] = []
    cursor: Fraction | None = None
    for c in a:
        padded = _pad_cell(c, top - c.dim) if c.dim < top else c
        lo, hi = padded.box.intervals[0]
        if cursor is not None:
            padded = _translate_cell(padded, 0, cursor - lo)
            lo, hi = padded.box.intervals[0]
        out.append(padded)
        cursor = hi + 1
    return Domain(tuple(out))


def check_box(c: Cell, samples: int = 10_000, seed: int = 0, inflation: RationalLike = Fraction(1, 2)) -> None:
    """
    Spot-check the box contract: sample an inflated box and fail if some point
    satisfies every constraint while lying outside the declared box.
    """
    rng = np.random.Generator(np.random.Philox(key=seed))
    lows, widths = c.box.lows(), c.box.widths()
    pad_width = np.maximum(widths * float(inflation), 1.0)
    lo = lows - pad_width
    span = widths + 2 * pad_width
    points = lo + rng.random((samples, c.dim)) * span
    member = np.ones(samples, dtype=bool)
    for ineq in c.constraints:
        member &= ineq.poly.evaluate_array(points) >= 0.0
    escaped = member & ~c.box.contains_array(points)
    if escaped.any():
        witness = points[np.argmax(escaped)].tolist()
        raise BoxViolationError("Cell has members outside its declared box",
                                dim=c.dim, point=witness, escaped=int(escaped.sum()))
