import math
from fractions import Fraction

import numpy as np
import pytest

from app.core.exceptions import (
    BoxViolationError,
    BuiltinParameterError,
    DimensionMismatchError,
    EmptyDomainError,
    OutOfRangeError,
)
from app.mcvol import estimate
from app.models import Box, Cell, Domain, Polynomial
from app.semialg import (
    cell_contains,
    cell_contains_array,
    check_box,
    materialize_single_domain,
    pad,
    poly_eval,
    poly_scale_axis,
    poly_shift,
    product,
    scale_axis,
    translate,
)
from app.utils.codec import cell_from_json, cell_to_json, decode_payload, domain_from_json, domain_to_json


def _disk() -> Cell:
    x, y = Polynomial.variable(2, 0), Polynomial.variable(2, 1)
    return Cell.build(Box.of((-1, 1), (-1, 1)), 1 - x * x - y * y)


def _unit_interval() -> Cell:
    x = Polynomial.variable(1, 0)
    return Cell.build(Box.of((0, 1)), x, 1 - x)


def test_polynomial_arithmetic():
    x = Polynomial.variable(1, 0)
    p = (x + 1) ** 2
    assert p == Polynomial.from_coefficients([1, 2, 1])
    assert p.coefficients() == [1, 2, 1]
    assert (p - p).is_zero()
    assert str(x * x - 2) == "x0^2 - 2"
    with pytest.raises(DimensionMismatchError):
        x + Polynomial.variable(2, 0)


def test_poly_eval_exact_and_float():
    x, y = Polynomial.variable(2, 0), Polynomial.variable(2, 1)
    p = x * x + y
    assert poly_eval(p, (Fraction(1, 2), Fraction(1, 3))) == Fraction(7, 12)
    assert isinstance(poly_eval(p, (0.5, 0.25)), float)
    with pytest.raises(DimensionMismatchError):
        poly_eval(p, (1,))


def test_cell_membership():
    disk = _disk()
    assert cell_contains(disk, (0, 0))
    assert cell_contains(disk, (1, 0))
    assert not cell_contains(disk, (1, 1))
    assert not cell_contains(disk, (2, 0))
    points = np.array([[0.0, 0.0], [0.9, 0.9], [0.5, -0.5]])
    assert cell_contains_array(disk, points).tolist() == [True, False, True]


def test_poly_shift():
    x = Polynomial.variable(1, 0)
    assert poly_shift(x * x, 0, 1) == Polynomial.from_coefficients([1, -2, 1])
    assert poly_shift(x, 0, 0) == x


def test_poly_scale_axis():
    x = Polynomial.variable(1, 0)
    assert poly_scale_axis(x * x - 2, 0, 3) == Polynomial.from_coefficients([-18, 0, 1])
    with pytest.raises(OutOfRangeError):
        poly_scale_axis(x, 0, 0)


def test_product_and_pad():
    prod = product(Domain.of(_disk()), Domain.of(_unit_interval()))
    (cell,) = prod.cells
    assert cell.dim == 3
    assert cell.box.volume() == 4
    assert len(cell.constraints) == 3
    assert cell_contains(cell, (0, 0, Fraction(1, 2)))
    assert not cell_contains(cell, (0, 0, 2))

    padded = pad(Domain.of(_disk()), 2)
    (cell,) = padded.cells
    assert cell.dim == 4
    assert len(cell.constraints) == 1 + 4
    assert cell.box.intervals[2:] == ((0, 1), (0, 1))


def test_translate_and_scale():
    (moved,) = translate(Domain.of(_disk()), 0, 5).cells
    assert moved.box.intervals[0] == (4, 6)
    assert cell_contains(moved, (5, 0))
    assert not cell_contains(moved, (0, 0))

    (wide,) = scale_axis(Domain.of(_disk()), 2).cells
    assert wide.box.intervals[0] == (-2, 2)
    assert cell_contains(wide, (Fraction(19, 10), 0))
    assert not cell_contains(wide, (Fraction(3, 2), Fraction(9, 10)))


def test_materialize_single_domain():
    x, y = Polynomial.variable(2, 0), Polynomial.variable(2, 1)
    log2 = Cell.build(Box.of((1, 2), (0, 1)), x - 1, 2 - x, y, 1 - x * y)
    merged = materialize_single_domain(Domain.of(_disk(), log2, _unit_interval()))
    assert {c.dim for c in merged} == {2}
    boxes = [c.box for c in merged]
    assert all(a.disjoint(b) for i, a in enumerate(boxes) for b in boxes[i + 1:])
    assert boxes[1].intervals[0] == (2, 3)
    assert boxes[2].intervals[0] == (4, 5)


def test_materialized_volume_is_the_sum():
    x, y = Polynomial.variable(2, 0), Polynomial.variable(2, 1)
    log2 = Cell.build(Box.of((1, 2), (0, 1)), x - 1, 2 - x, y, 1 - x * y)
    merged = materialize_single_domain(Domain.of(_disk(), log2))
    est = estimate(merged, 40_000, seed=3)
    assert abs(est.mean - (math.pi + math.log(2))) <= 4 * est.stderr


def test_materialize_empty():
    with pytest.raises(EmptyDomainError):
        materialize_single_domain(Domain.empty())


def test_check_box(gallery):
    for _, w in gallery:
        for bucket in w.buckets:
            for cell in bucket:
                check_box(cell, samples=2_000)

    x = Polynomial.variable(1, 0)
    unbounded = Cell.build(Box.of((0, 1)), x)
    with pytest.raises(BoxViolationError):
        check_box(unbounded, samples=2_000)


def test_cell_json():
    cell = _disk()
    assert cell_from_json(cell_to_json(cell)) == cell
    with pytest.raises(BuiltinParameterError):
        cell_from_json({"dim": 2})
    with pytest.raises(BuiltinParameterError):
        decode_payload("{not json")


def test_disk_times_disk_is_pi_squared():
    est = estimate(product(Domain.of(_disk()), Domain.of(_disk())), 40_000, seed=6)
    assert abs(est.mean - math.pi ** 2) <= 4 * est.stderr


def test_domain_json(gallery):
    for _, w in gallery:
        for bucket in w.buckets:
            assert domain_from_json(domain_to_json(bucket)) == bucket
    assert domain_from_json([]) == Domain.empty()
