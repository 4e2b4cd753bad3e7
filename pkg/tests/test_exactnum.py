from fractions import Fraction

import pytest

from app.core.exceptions import (
    BuiltinParameterError,
    ExactArithmeticError,
    MixedRadicandError,
    OutOfRangeError,
)
from app.utils.exactnum import (
    QuadSurd,
    bernoulli,
    classical_bernoulli,
    even_zeta_factor,
    format_gaussian,
    format_rational,
    gaussian_mul,
    gaussian_pow,
    parse_rational,
    rat_arith,
    sqrt_rational,
    square_free_split,
)


def test_rat_arith():
    assert rat_arith(Fraction(1, 2), Fraction(1, 3), "+") == Fraction(5, 6)
    assert rat_arith(2, 3, "×") == 6
    with pytest.raises(ExactArithmeticError):
        rat_arith(1, 0, "/")
    with pytest.raises(BuiltinParameterError):
        rat_arith(1, 2, "%")


def test_parse_and_format_rational():
    assert parse_rational("-3/4") == Fraction(-3, 4)
    assert parse_rational(" 7 ") == 7
    assert format_rational(Fraction(6, 3)) == "2"
    assert format_rational(Fraction(-1, 2)) == "-1/2"
    with pytest.raises(BuiltinParameterError):
        parse_rational("1.5")
    with pytest.raises(ExactArithmeticError):
        parse_rational("1/0")


def test_square_free_split():
    assert square_free_split(72) == (6, 2)
    assert square_free_split(49) == (7, 1)
    assert square_free_split(30) == (1, 30)
    assert square_free_split(0) == (0, 0)
    with pytest.raises(OutOfRangeError):
        square_free_split(-4)


def test_surd_normalisation():
    s = QuadSurd(0, 1, 8)
    assert (s.b, s.d) == (2, 2)
    folded = QuadSurd(1, 1, 4)
    assert folded.is_rational and folded.a == 3
    assert QuadSurd(5, 0, 7).d == 0


def test_surd_arithmetic():
    r2 = QuadSurd(0, 1, 2)
    assert r2 * r2 == QuadSurd.rational(2)
    assert (QuadSurd(1, 1, 2) + QuadSurd(1, -1, 2)) == QuadSurd.rational(2)
    assert QuadSurd(1, 1, 2).reciprocal() == QuadSurd(-1, 1, 2)
    assert (QuadSurd(3, 1, 5) / QuadSurd(3, 1, 5)) == QuadSurd.rational(1)
    with pytest.raises(MixedRadicandError):
        QuadSurd(0, 1, 2) + QuadSurd(0, 1, 3)
    with pytest.raises(ExactArithmeticError):
        QuadSurd().reciprocal()


@pytest.mark.parametrize("surd, sign", [
    (QuadSurd(3, -2, 2), 1),
    (QuadSurd(-3, 2, 2), -1),
    (QuadSurd(1, -1, 2), -1),
    (QuadSurd(0, 0, 0), 0),
    (QuadSurd(-1, 1, 3), 1),
])
def test_surd_sign_is_exact(surd, sign):
    assert surd.sign() == sign


def test_sqrt_rational():
    half = sqrt_rational(Fraction(1, 2))
    assert (half.a, half.b, half.d) == (0, Fraction(1, 2), 2)
    assert sqrt_rational(Fraction(4, 9)) == QuadSurd.rational(Fraction(2, 3))
    assert float(sqrt_rational(3)) == pytest.approx(3 ** 0.5)
    with pytest.raises(OutOfRangeError):
        sqrt_rational(-1)


def test_gaussian_helpers():
    i = (Fraction(0), Fraction(1))
    assert gaussian_mul(i, i) == (-1, 0)
    assert gaussian_pow((Fraction(1), Fraction(1)), 2) == (0, 2)
    assert format_gaussian((Fraction(1, 2), Fraction(-3))) == "1/2 - 3i"
    assert format_gaussian((Fraction(2), Fraction(0))) == "2"


def test_bernoulli_convention():
    assert [bernoulli(k) for k in (1, 2, 3)] == [Fraction(1, 6), Fraction(1, 30), Fraction(1, 42)]
    assert classical_bernoulli(1) == Fraction(-1, 2)
    assert classical_bernoulli(3) == 0
    with pytest.raises(OutOfRangeError):
        bernoulli(0)
    with pytest.raises(OutOfRangeError):
        bernoulli(65)


def test_even_zeta_factor():
    assert even_zeta_factor(2) == Fraction(1, 6)
    assert even_zeta_factor(4) == Fraction(1, 90)
    assert even_zeta_factor(6) == Fraction(1, 945)
    with pytest.raises(BuiltinParameterError):
        even_zeta_factor(3)
