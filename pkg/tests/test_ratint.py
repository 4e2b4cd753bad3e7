import math
from fractions import Fraction

import pytest

from app.core.exceptions import (
    EndpointRootError,
    InconsistentFactorizationError,
    OutOfRangeError,
    PoleInIntervalError,
    UnfactorableError,
    ZeroPolynomialError,
)
from app.models import Polynomial
from app.ratint import (
    ClosedForm,
    FactorList,
    LinearTerm,
    RationalFunction,
    antiderivative_check,
    closed_form_from_factored,
    factor_denominator,
    integrate_definite,
    partial_fractions,
    quad_oracle,
    square_free_part,
    sturm_count,
)
from app.services.verification_service import RATINT_CORPUS, VerificationService
from app.utils.exactnum import QuadSurd

P = Polynomial.from_coefficients
F = RationalFunction.from_coefficients


# -- Sturm ------------------------------------------------------------------------

@pytest.mark.parametrize("coeffs, lo, hi, count", [
    ([-2, 0, 1], 0, 2, 1),
    ([-2, 0, 1], -2, 2, 2),
    ([1, 0, 1], -10, 10, 0),
    ([0, -1, 0, 1], Fraction(-1, 2), Fraction(3, 2), 2),
    ([5], 0, 1, 0),
    ([1, -2, 1], 0, 2, 1),
])
def test_sturm_count(coeffs, lo, hi, count):
    assert sturm_count(P(coeffs), lo, hi) == count


def test_sturm_errors():
    with pytest.raises(ZeroPolynomialError):
        sturm_count(P([]), 0, 1)
    with pytest.raises(EndpointRootError):
        sturm_count(P([-1, 1]), 1, 2)
    with pytest.raises(OutOfRangeError):
        sturm_count(P([1, 1]), 2, 2)


# -- factorisation ----------------------------------------------------------------

def test_factor_rational_roots():
    factors = factor_denominator(P([0, -1, 0, 1]))
    assert factors.linear == ((-1, 1), (0, 1), (1, 1))
    assert factors.quadratic == ()


def test_factor_repeated_quadratic():
    factors = factor_denominator(P([1, 0, 2, 0, 1]))
    assert factors.linear == ()
    assert factors.quadratic == ((0, 1, 2),)


def test_factor_even_quartics():
    assert set(factor_denominator(P([6, 0, -5, 0, 1])).quadratic) == {(0, -3, 1), (0, -2, 1)}
    assert set(factor_denominator(P([4, 0, 0, 0, 1])).quadratic) == {(2, 2, 1), (-2, 2, 1)}


def test_factor_keeps_leading_coefficient():
    factors = factor_denominator(P([2, 0, 2]))
    assert factors.lead == 2
    assert factors.quadratic == ((0, 1, 1),)
    assert factors.expand() == [2, 0, 2]


@pytest.mark.parametrize("coeffs", [[1, 0, 0, 0, 1], [-2, 0, 0, 1]])
def test_unfactorable(coeffs):
    with pytest.raises(UnfactorableError):
        factor_denominator(P(coeffs))


def test_reducible_quadratic_is_rejected():
    with pytest.raises(InconsistentFactorizationError):
        FactorList(quadratic=((0, -1, 1),))


# -- partial fractions ------------------------------------------------------------

def test_partial_fractions_simple():
    f = F([1], [0, 1, 1])
    pf = partial_fractions(f, factor_denominator(f.den))
    assert pf.polynomial == []
    assert pf.terms == (LinearTerm(Fraction(-1), 1, Fraction(-1)), LinearTerm(Fraction(0), 1, Fraction(1)))


def test_partial_fractions_wrong_factors():
    f = F([1], [0, 1, 1])
    with pytest.raises(InconsistentFactorizationError):
        partial_fractions(f, FactorList(linear=((0, 2),)))


def test_recombination_is_exact():
    factors = FactorList(linear=((1, 2), (-2, 1)), quadratic=((1, 1, 2),))
    f = F([3, -1, 0, 2, 5], factors.expand())
    num, den = partial_fractions(f, factors).recombine()
    assert P(num) * f.den == f.num * P(den)


# -- antiderivatives ---------------------------------------------------------------

@pytest.mark.parametrize("num, den, lo, hi", RATINT_CORPUS)
def test_corpus_antiderivatives(num, den, lo, hi):
    assert antiderivative_check(F(num, den))


# -- definite integrals ---------------------------------------------------------------

def test_arctan_closed_form():
    form = integrate_definite(F([1], [1, 0, 1]), 0, 1)
    assert form.constant == QuadSurd()
    assert form.log == ()
    assert form.float_value == pytest.approx(math.pi / 4, abs=1e-12)


def test_log_closed_form():
    form = integrate_definite(F([1], [0, 1]), 1, 2)
    assert form.log == ((QuadSurd.rational(1), QuadSurd.rational(2)),)
    assert form.float_value == pytest.approx(math.log(2), abs=1e-12)


def test_repeated_quadratic_has_rational_part():
    form = integrate_definite(F([1], [1, 0, 2, 0, 1]), 0, 1)
    assert form.constant == QuadSurd.rational(Fraction(1, 4))
    assert form.float_value == pytest.approx(math.pi / 8 + 0.25, abs=1e-12)


def test_surd_log_closed_form():
    form = integrate_definite(F([1], [-2, 0, 1]), -1, 1)
    r2 = math.sqrt(2)
    assert form.float_value == pytest.approx(r2 * math.log(r2 - 1), abs=1e-9)
    assert all(coeff.d == 2 for coeff, _ in form.log)


def test_polynomial_part():
    form = integrate_definite(F([1, 0, 0, 1], [1, 0, 1]), 0, 1)
    expected = 0.5 - math.log(2) / 2 + math.pi / 4
    assert form.float_value == pytest.approx(expected, abs=1e-12)


def test_leading_coefficient_is_honoured():
    assert integrate_definite(F([1], [2, 0, 2]), 0, 1).float_value == pytest.approx(math.pi / 8)
    factored = closed_form_from_factored([1], FactorList(quadratic=((0, 1, 1),), lead=2), 0, 1)
    assert factored.float_value == pytest.approx(math.pi / 8)


def test_orientation_and_empty_interval():
    f = F([1], [1, 0, 1])
    assert integrate_definite(f, 1, 0).float_value == pytest.approx(-math.pi / 4)
    assert integrate_definite(f, 3, 3).float_value == 0.0


@pytest.mark.parametrize("den, lo, hi", [
    ([-Fraction(1, 2), 1], 0, 1),
    ([0, 1], 0, 1),
    ([-2, 0, 1], 0, 2),
])
def test_poles_are_rejected(den, lo, hi):
    with pytest.raises(PoleInIntervalError):
        integrate_definite(F([1], den), lo, hi)


def test_log_argument_must_be_positive():
    with pytest.raises(OutOfRangeError):
        ClosedForm(log=((QuadSurd.rational(1), QuadSurd.rational(-1)),))


def test_quad_oracle():
    assert quad_oracle(F([1], [1, 0, 1]), 0, 1, 1e-10) == pytest.approx(math.pi / 4, abs=1e-10)
    assert quad_oracle(F([1], [1, 0, 1]), 2, 2, 1e-10) == 0.0


def test_random_factored_integrals(rng):
    for _ in range(30):
        a = Fraction(int(rng.integers(-3, 4)))
        b = int(rng.integers(-2, 3))
        factors = FactorList(linear=((a, int(rng.integers(1, 3))),),
                             quadratic=((Fraction(b), Fraction(b * b // 4 + int(rng.integers(1, 4))), 1),))
        den = factors.expand()
        num = [Fraction(int(v)) for v in rng.integers(-5, 6, size=len(den))]
        f = F(num, den)
        assert antiderivative_check(f, factors)
        assert factor_denominator(f.den).expand() == f.den_coeffs
        lo = a + Fraction(1, 2)
        form = integrate_definite(f, lo, lo + 2, factors)
        assert form.float_value == pytest.approx(quad_oracle(f, lo, lo + 2, 1e-10), abs=1e-8)


def test_against_sympy():
    sympy = pytest.importorskip("sympy")
    x = sympy.symbols("x")
    cases = [
        ([1], [1, 2, 3, 2, 1], 0, 1),
        ([0, 1], [4, 0, -4, 0, 1], 0, 1),
        ([1], [0, 1, 2, 2, 2, 1], 1, 2),
    ]
    for num, den, lo, hi in cases:
        expr = sum(c * x ** i for i, c in enumerate(num)) / sum(c * x ** i for i, c in enumerate(den))
        expected = float(sympy.integrate(expr, (x, lo, hi)).evalf(30))
        assert integrate_definite(F(num, den), lo, hi).float_value == pytest.approx(expected, abs=1e-10)


def test_product_of_two_quadratics_is_split():
    factors = factor_denominator(P([1, 1, 2, 1, 1]))
    assert factors.linear == ()
    assert set(factors.quadratic) == {(0, 1, 1), (1, 1, 1)}
    assert factors.expand() == [1, 1, 2, 1, 1]


def test_unfactorable_names_the_residual():
    with pytest.raises(UnfactorableError) as info:
        factor_denominator(P([-1, -1, 0, 0, 0, 1]) * P([1, 0, 1]))
    assert info.value.detail["degree"] == 5
    assert "degree >= 3" in info.value.message


def test_square_free_part():
    assert square_free_part(P([2, -3, 0, 1])) == P([-2, 1, 1])
    assert square_free_part(P([3, 0, 3])) == P([1, 0, 1])
    with pytest.raises(ZeroPolynomialError):
        square_free_part(P([]))


def test_sturm_against_random_polynomials():
    (result,) = VerificationService.run("sturm", seed=17)
    assert result.passed, result.failures
    assert result.checks >= 150
