"""
Exact definite integration of univariate rational functions over Q.

The denominator is split into rational roots and quadratics irreducible over
Q, the integrand into partial fractions, and every piece integrates to a
rational function, a logarithm or an arctangent. The result is a ClosedForm
c + sum a_i arctan(u_i) + sum b_j log(v_j) whose constants live in Q(sqrt d),
one radicand per quadratic factor.

Polynomial arithmetic runs on sympy ``Poly`` over QQ; coefficient lists
(constant term first, ``Fraction`` entries) are the exchange format with the
rest of the package.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import integrate
from sympy import Matrix, Poly, QQ, Rational, Symbol
from sympy.polys.polyerrors import ExactQuotientFailed

from .core.config import settings
from .core.events import timed_event
from .core.exceptions import (
    EndpointRootError,
    InconsistentFactorizationError,
    NonConvergenceError,
    OutOfRangeError,
    PoleInIntervalError,
    UnfactorableError,
    VerificationError,
    ZeroPolynomialError,
)
from .models import Polynomial
from .schemas import ClosedFormSchema, TermSchema
from .utils.exactnum import QuadSurd, RationalLike, format_rational, sqrt_rational

Coeffs = List[Fraction]

_X = Symbol("x")


# -- dense univariate helpers (constant term first) ---------------------------

def _trim(p: Sequence[Fraction]) -> Coeffs:
    out = [Fraction(c) for c in p]
    while out and out[-1] == 0:
        out.pop()
    return out


def _rational(c: RationalLike) -> Rational:
    q = Fraction(c)
    return Rational(q.numerator, q.denominator)


def _to_poly(p: Sequence[RationalLike]) -> Poly:
    coeffs = _trim(p)
    return Poly([_rational(c) for c in reversed(coeffs)] or [0], _X, domain=QQ)


def _from_poly(p: Poly) -> Coeffs:
    return _trim([Fraction(int(c.p), int(c.q)) for c in reversed(p.all_coeffs())])


def _deg(p: Coeffs) -> int:
    return len(p) - 1


def _add(p: Coeffs, q: Coeffs) -> Coeffs:
    return _from_poly(_to_poly(p) + _to_poly(q))


def _scale(p: Coeffs, c: Fraction) -> Coeffs:
    return _trim([c * x for x in p])


def _sub(p: Coeffs, q: Coeffs) -> Coeffs:
    return _from_poly(_to_poly(p) - _to_poly(q))


def _mul(p: Coeffs, q: Coeffs) -> Coeffs:
    return _from_poly(_to_poly(p) * _to_poly(q))


def _pow(p: Coeffs, n: int) -> Coeffs:
    return _from_poly(_to_poly(p) ** n)


def _divmod(a: Coeffs, b: Coeffs) -> Tuple[Coeffs, Coeffs]:
    if not _trim(b):
        raise ZeroPolynomialError("Polynomial division by zero")
    quo, rem = _to_poly(a).div(_to_poly(b))
    return _from_poly(quo), _from_poly(rem)


def _exact_div(a: Coeffs, b: Coeffs) -> Coeffs:
    if not _trim(b):
        raise ZeroPolynomialError("Polynomial division by zero")
    try:
        return _from_poly(_to_poly(a).exquo(_to_poly(b)))
    except ExactQuotientFailed:
        raise InconsistentFactorizationError("Expected exact polynomial division",
                                             dividend=_poly_str(_trim(a)), divisor=_poly_str(_trim(b)))


def _monic(p: Coeffs) -> Coeffs:
    p = _trim(p)
    return _from_poly(_to_poly(p).monic()) if p else p


def _gcd(a: Coeffs, b: Coeffs) -> Coeffs:
    """Monic gcd; [] when both are zero."""
    return _from_poly(_to_poly(a).gcd(_to_poly(b)))


def _deriv(p: Coeffs) -> Coeffs:
    return _from_poly(_to_poly(p).diff(_X))


def _eval(p: Sequence, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _linear(a: Fraction) -> Coeffs:
    """x - a"""
    return _trim([-a, Fraction(1)])


def _quadratic(b: Fraction, c: Fraction) -> Coeffs:
    """x^2 + b x + c"""
    return [Fraction(c), Fraction(b), Fraction(1)]


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _coeffs(p: Polynomial) -> Coeffs:
    if p.nvars != 1:
        raise OutOfRangeError("Expected a univariate polynomial", nvars=p.nvars)
    return _trim(p.coefficients())


def _poly_str(p: Coeffs) -> str:
    return str(Polynomial.from_coefficients(p)) if p else "0"


# -- rational functions -------------------------------------------------------

@dataclass(frozen=True)
class RationalFunction:
    """num/den with den monic; the leading coefficient is folded into num."""

    num: Polynomial
    den: Polynomial

    def __post_init__(self):
        den = _coeffs(self.den)
        if not den:
            raise ZeroPolynomialError("Denominator is identically zero")
        lead = den[-1]
        object.__setattr__(self, "num", Polynomial.from_coefficients(_scale(_coeffs(self.num), 1 / lead)))
        object.__setattr__(self, "den", Polynomial.from_coefficients(_scale(den, 1 / lead)))

    @classmethod
    def from_coefficients(cls, num: Sequence[RationalLike], den: Sequence[RationalLike]) -> "RationalFunction":
        return cls(Polynomial.from_coefficients(num), Polynomial.from_coefficients(den))

    @property
    def num_coeffs(self) -> Coeffs:
        return _coeffs(self.num)

    @property
    def den_coeffs(self) -> Coeffs:
        return _coeffs(self.den)


# -- Sturm sequences ------------------------------------------------------------

def sturm_sequence(p: Coeffs) -> List[Coeffs]:
    """Sturm sequence of the square-free part of p."""
    return [_from_poly(s) for s in _to_poly(p).sturm()]


def _sign_changes(seq: List[Coeffs], x: Fraction) -> int:
    signs = [s for s in (_sign(_eval(p, x)) for p in seq) if s]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def sturm_count(p: Polynomial, lo: RationalLike, hi: RationalLike) -> int:
    """Number of distinct real roots of p in (lo, hi); endpoints must not be roots."""
    coeffs = _coeffs(p)
    if not coeffs:
        raise ZeroPolynomialError("Sturm count of the zero polynomial")
    lo, hi = Fraction(lo), Fraction(hi)
    if lo >= hi:
        raise OutOfRangeError("Sturm count needs lo < hi", lo=format_rational(lo), hi=format_rational(hi))
    for end in (lo, hi):
        if _eval(coeffs, end) == 0:
            raise EndpointRootError("Polynomial vanishes at an interval endpoint",
                                    endpoint=format_rational(end), polynomial=_poly_str(coeffs))
    if len(coeffs) == 1:
        return 0
    seq = sturm_sequence(coeffs)
    return _sign_changes(seq, lo) - _sign_changes(seq, hi)


def square_free_part(p: Polynomial) -> Polynomial:
    """Product of the distinct irreducible factors of p, made monic."""
    coeffs = _coeffs(p)
    if not coeffs:
        raise ZeroPolynomialError("Square-free part of the zero polynomial")
    return Polynomial.from_coefficients(_from_poly(_to_poly(coeffs).sqf_part()))


# -- factorisation over Q -----------------------------------------------------

@dataclass(frozen=True)
class FactorList:
    """
    den = lead * prod (x - a)^n * prod (x^2 + b x + c)^n, quadratics having
    no rational root (negative discriminant, or positive non-square).
    """

    linear: Tuple[Tuple[Fraction, int], ...] = ()
    quadratic: Tuple[Tuple[Fraction, Fraction, int], ...] = ()
    lead: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "linear", tuple((Fraction(a), int(n)) for a, n in self.linear))
        object.__setattr__(self, "quadratic", tuple((Fraction(b), Fraction(c), int(n)) for b, c, n in self.quadratic))
        for _, n in self.linear:
            if n < 1:
                raise OutOfRangeError("Factor multiplicity must be >= 1", multiplicity=n)
        for b, c, n in self.quadratic:
            if n < 1:
                raise OutOfRangeError("Factor multiplicity must be >= 1", multiplicity=n)
            if not _to_poly(_quadratic(b, c)).is_irreducible:
                raise InconsistentFactorizationError(
                    "Quadratic factor is reducible over Q", b=format_rational(b), c=format_rational(c))

    def expand(self) -> Coeffs:
        out = _to_poly([self.lead])
        for a, n in self.linear:
            out *= _to_poly(_linear(a)) ** n
        for b, c, n in self.quadratic:
            out *= _to_poly(_quadratic(b, c)) ** n
        return _from_poly(out)

    def degree(self) -> int:
        return sum(n for _, n in self.linear) + 2 * sum(n for _, _, n in self.quadratic)


def factor_denominator(den: Polynomial) -> FactorList:
    """
    Square-free split, then each square-free part into irreducibles over Q.
    Linear factors become rational roots and quadratics are kept; an
    irreducible factor of degree >= 3 cannot be integrated here.
    """
    coeffs = _coeffs(den)
    if _deg(coeffs) < 1:
        raise OutOfRangeError("Denominator must have degree >= 1", degree=max(_deg(coeffs), 0))
    linear: Dict[Fraction, int] = {}
    quadratic: List[Tuple[Fraction, Fraction, int]] = []
    _, parts = _to_poly(coeffs).sqf_list()
    for part, mult in parts:
        _, irreducibles = part.factor_list()
        for factor, k in irreducibles:
            f = _from_poly(factor.monic())
            if _deg(f) == 1:
                linear[-f[0]] = linear.get(-f[0], 0) + mult * k
            elif _deg(f) == 2:
                quadratic.append((f[1], f[0], mult * k))
            else:
                raise UnfactorableError(
                    "Denominator has an irreducible factor of degree >= 3 over Q; pass a pre-factored denominator",
                    residual=_poly_str(f), degree=_deg(f))
    return FactorList(tuple(sorted(linear.items())), tuple(sorted(quadratic)), coeffs[-1])


# -- partial fractions ------------------------------------------------------------

@dataclass(frozen=True)
class LinearTerm:
    """A / (x - a)^n"""

    a: Fraction
    n: int
    A: Fraction


@dataclass(frozen=True)
class QuadraticTerm:
    """(B x + C) / (x^2 + b x + c)^n"""

    b: Fraction
    c: Fraction
    n: int
    B: Fraction
    C: Fraction


@dataclass(frozen=True)
class PartialFractions:
    polynomial: Coeffs
    terms: Tuple[Union[LinearTerm, QuadraticTerm], ...]

    def recombine(self) -> Tuple[Coeffs, Coeffs]:
        """(numerator, denominator) of the sum, over the common monic denominator."""
        den: Coeffs = [Fraction(1)]
        powers: Dict[Tuple, int] = {}
        for t in self.terms:
            key = ("l", t.a) if isinstance(t, LinearTerm) else ("q", t.b, t.c)
            powers[key] = max(powers.get(key, 0), t.n)
        for key, n in powers.items():
            base = _linear(key[1]) if key[0] == "l" else _quadratic(key[1], key[2])
            den = _mul(den, _pow(base, n))
        num = _mul(self.polynomial, den)
        for t in self.terms:
            if isinstance(t, LinearTerm):
                part = _scale(_exact_div(den, _pow(_linear(t.a), t.n)), t.A)
            else:
                cofactor = _exact_div(den, _pow(_quadratic(t.b, t.c), t.n))
                part = _mul(cofactor, _trim([t.C, t.B]))
            num = _add(num, part)
        return num, den


def _solve(matrix: List[List[Fraction]], rhs: List[Fraction]) -> List[Fraction]:
    system = Matrix([[_rational(v) for v in row] for row in matrix])
    try:
        solution = system.LUsolve(Matrix([_rational(v) for v in rhs]))
    except ValueError:
        raise InconsistentFactorizationError("Partial fraction system is singular")
    return [Fraction(int(v.p), int(v.q)) for v in solution]


def partial_fractions(f: RationalFunction, factors: FactorList) -> PartialFractions:
    den = f.den_coeffs
    if _monic(factors.expand()) != den:
        raise InconsistentFactorizationError("Factors do not multiply to the denominator",
                                             denominator=_poly_str(den),
                                             product=_poly_str(_monic(factors.expand())))
    poly, rem = _divmod(f.num_coeffs, den)
    size = _deg(den)
    columns: List[Coeffs] = []
    labels: List[Tuple] = []
    for a, n in factors.linear:
        for j in range(1, n + 1):
            columns.append(_exact_div(den, _pow(_linear(a), j)))
            labels.append(("l", a, j))
    for b, c, n in factors.quadratic:
        for j in range(1, n + 1):
            cofactor = _exact_div(den, _pow(_quadratic(b, c), j))
            columns.append(_mul(cofactor, [Fraction(0), Fraction(1)]))
            labels.append(("qB", b, c, j))
            columns.append(cofactor)
            labels.append(("qC", b, c, j))
    matrix = [[col[i] if i < len(col) else Fraction(0) for col in columns] for i in range(size)]
    rhs = [rem[i] if i < len(rem) else Fraction(0) for i in range(size)]
    solution = _solve(matrix, rhs) if size else []

    terms: List[Union[LinearTerm, QuadraticTerm]] = []
    pending: Dict[Tuple, Fraction] = {}
    for label, value in zip(labels, solution):
        if label[0] == "l":
            if value != 0:
                terms.append(LinearTerm(label[1], label[2], value))
        elif label[0] == "qB":
            pending[label[1:]] = value
        else:
            B = pending.pop(label[1:])
            if B != 0 or value != 0:
                terms.append(QuadraticTerm(label[1], label[2], label[3], B, value))
    return PartialFractions(poly, tuple(terms))


# -- antiderivatives ---------------------------------------------------------------

@dataclass(frozen=True)
class RationalPiece:
    """coeff * N(x) / base(x)^power"""

    coeff: Fraction
    numerator: Tuple[Fraction, ...]
    base: Tuple[Fraction, ...]
    power: int

    def at(self, x: Fraction) -> Fraction:
        return self.coeff * _eval(self.numerator, x) / _eval(self.base, x) ** self.power

    def derivative(self) -> Tuple[Coeffs, Coeffs]:
        n, b = list(self.numerator), list(self.base)
        num = _sub(_mul(_deriv(n), b), _scale(_mul(n, _deriv(b)), Fraction(self.power)))
        return _scale(num, self.coeff), _pow(b, self.power + 1)


@dataclass(frozen=True)
class LogPiece:
    """coeff * log|P(x)| (shift is None) or coeff * log|(u - k)/(u + k)| with u = x + shift."""

    coeff: QuadSurd
    poly: Tuple[Fraction, ...] = ()
    shift: Optional[Fraction] = None
    k: Optional[QuadSurd] = None

    def argument(self, x: Fraction) -> QuadSurd:
        if self.shift is None:
            return QuadSurd.rational(abs(_eval(self.poly, x)))
        u = QuadSurd.rational(x + self.shift)
        ratio = (u - self.k) / (u + self.k)
        return ratio if ratio.sign() > 0 else -ratio

    def derivative(self) -> Tuple[Coeffs, Coeffs]:
        if self.shift is None:
            return _scale(_deriv(list(self.poly)), _rational_part(self.coeff)), list(self.poly)
        # d/dx log((u-k)/(u+k)) = 2k / (u^2 - k^2)
        top = _rational_part(self.coeff * 2 * self.k)
        k2 = _rational_part(self.k * self.k)
        return [top], _quadratic(2 * self.shift, self.shift * self.shift - k2)


@dataclass(frozen=True)
class ArctanPiece:
    """coeff * arctan((x + shift) * inv)"""

    coeff: QuadSurd
    shift: Fraction
    inv: QuadSurd

    def argument(self, x: Fraction) -> QuadSurd:
        return QuadSurd.rational(x + self.shift) * self.inv

    def derivative(self) -> Tuple[Coeffs, Coeffs]:
        # d/dx arctan(u inv) = inv / (1 + inv^2 u^2) = (1/inv) / (u^2 + 1/inv^2)
        inv2 = _rational_part(self.inv * self.inv)
        top = _rational_part(self.coeff / self.inv)
        return [top], _quadratic(2 * self.shift, self.shift * self.shift + 1 / inv2)


def _rational_part(x: QuadSurd) -> Fraction:
    if not x.is_rational:
        raise VerificationError("Expected a rational quantity", value=str(x))
    return x.a


@dataclass(frozen=True)
class Antiderivative:
    polynomial: Tuple[Fraction, ...] = ()
    rational: Tuple[RationalPiece, ...] = ()
    logs: Tuple[LogPiece, ...] = ()
    arctans: Tuple[ArctanPiece, ...] = ()

    def derivative(self) -> Tuple[Coeffs, Coeffs]:
        """Sum of the derivatives of all pieces as one fraction over Q."""
        num: Coeffs = _deriv(list(self.polynomial))
        den: Coeffs = [Fraction(1)]
        for piece in (*self.rational, *self.logs, *self.arctans):
            pn, pd = piece.derivative()
            g = _gcd(den, pd) or [Fraction(1)]
            num = _add(_mul(num, _exact_div(pd, g)), _mul(pn, _exact_div(den, g)))
            den = _mul(den, _exact_div(pd, g))
        return num, den


def _reduction(j: int, K: Fraction, shift: Fraction, b: Fraction, c: Fraction) -> Tuple[List[RationalPiece], Fraction]:
    """
    int du/(u^2+K)^j = R_j(u) + lam_j * int du/(u^2+K), via
    I_j = u / (2(j-1)K (u^2+K)^(j-1)) + (2j-3)/(2(j-1)K) I_(j-1).
    """
    if j == 1:
        return [], Fraction(1)
    prev, lam = _reduction(j - 1, K, shift, b, c)
    factor = Fraction(2 * j - 3, 2 * (j - 1)) / K
    pieces = [RationalPiece(p.coeff * factor, p.numerator, p.base, p.power) for p in prev]
    pieces.append(RationalPiece(1 / (2 * (j - 1) * K), (shift, Fraction(1)), tuple(_quadratic(b, c)), j - 1))
    return pieces, lam * factor


def antiderivative(f: RationalFunction, factors: Optional[FactorList] = None) -> Antiderivative:
    if factors is None:
        factors = FactorList() if _deg(f.den_coeffs) == 0 else factor_denominator(f.den)
    pf = partial_fractions(f, factors)
    poly = tuple([Fraction(0)] + [c / (i + 1) for i, c in enumerate(pf.polynomial)]) if pf.polynomial else ()
    rational: List[RationalPiece] = []
    logs: List[LogPiece] = []
    arctans: List[ArctanPiece] = []
    base_coeff: Dict[Tuple[Fraction, Fraction], Fraction] = {}
    for t in pf.terms:
        if isinstance(t, LinearTerm):
            if t.n == 1:
                logs.append(LogPiece(QuadSurd.rational(t.A), tuple(_linear(t.a))))
            else:
                rational.append(RationalPiece(-t.A / (t.n - 1), (Fraction(1),), tuple(_linear(t.a)), t.n - 1))
            continue
        q = tuple(_quadratic(t.b, t.c))
        if t.B != 0:
            if t.n == 1:
                logs.append(LogPiece(QuadSurd.rational(t.B / 2), q))
            else:
                rational.append(RationalPiece(t.B / (2 * (1 - t.n)), (Fraction(1),), q, t.n - 1))
        D = t.C - t.B * t.b / 2
        if D != 0:
            K = t.c - t.b * t.b / 4
            pieces, lam = _reduction(t.n, K, t.b / 2, t.b, t.c)
            rational.extend(RationalPiece(p.coeff * D, p.numerator, p.base, p.power) for p in pieces)
            key = (t.b, t.c)
            base_coeff[key] = base_coeff.get(key, Fraction(0)) + D * lam
    for (b, c), coeff in base_coeff.items():
        if coeff == 0:
            continue
        shift, K = b / 2, c - b * b / 4
        if K > 0:
            inv = sqrt_rational(K).reciprocal()
            arctans.append(ArctanPiece(inv * coeff, shift, inv))
        else:
            k = sqrt_rational(-K)
            logs.append(LogPiece(QuadSurd.rational(coeff) / (k * 2), (), shift, k))
    return Antiderivative(poly, tuple(rational), tuple(logs), tuple(arctans))


def antiderivative_check(f: RationalFunction, factors: Optional[FactorList] = None) -> bool:
    """Differentiate the antiderivative exactly and compare with f."""
    num, den = antiderivative(f, factors).derivative()
    return _mul(num, f.den_coeffs) == _mul(f.num_coeffs, den)


# -- closed forms --------------------------------------------------------------------

@dataclass(frozen=True)
class ClosedForm:
    constant: QuadSurd = field(default_factory=QuadSurd)
    arctan: Tuple[Tuple[QuadSurd, QuadSurd], ...] = ()
    log: Tuple[Tuple[QuadSurd, QuadSurd], ...] = ()

    def __post_init__(self):
        for _, arg in self.log:
            if arg.sign() <= 0:
                raise OutOfRangeError("Log argument must be positive", argument=str(arg))

    @property
    def float_value(self) -> float:
        total = float(self.constant)
        total += math.fsum(float(a) * math.atan(float(u)) for a, u in self.arctan)
        total += math.fsum(float(b) * math.log(float(v)) for b, v in self.log)
        return total

    def negated(self) -> "ClosedForm":
        return ClosedForm(-self.constant,
                          tuple((-a, u) for a, u in self.arctan),
                          tuple((-b, v) for b, v in self.log))

    def to_schema(self, oracle_value: Optional[float] = None) -> ClosedFormSchema:
        return ClosedFormSchema(
            constant=str(self.constant),
            arctan=[TermSchema(coeff=str(a), arg=str(u)) for a, u in self.arctan],
            log=[TermSchema(coeff=str(b), arg=str(v)) for b, v in self.log],
            float_value=self.float_value,
            oracle_value=oracle_value,
        )


def _check_no_poles(den: Coeffs, lo: Fraction, hi: Fraction) -> None:
    for end in (lo, hi):
        if _eval(den, end) == 0:
            raise PoleInIntervalError("Denominator vanishes at an endpoint",
                                      endpoint=format_rational(end), denominator=_poly_str(den))
    roots = sturm_count(Polynomial.from_coefficients(den), lo, hi)
    if roots:
        raise PoleInIntervalError("Denominator has real roots inside the interval",
                                  roots=roots, lo=format_rational(lo), hi=format_rational(hi))


def evaluate_between(F: Antiderivative, lo: Fraction, hi: Fraction) -> ClosedForm:
    constant = _eval(F.polynomial, hi) - _eval(F.polynomial, lo) if F.polynomial else Fraction(0)
    constant += sum((p.at(hi) - p.at(lo) for p in F.rational), Fraction(0))
    logs = tuple((p.coeff, p.argument(hi) / p.argument(lo)) for p in F.logs)
    arctans: List[Tuple[QuadSurd, QuadSurd]] = []
    for p in F.arctans:
        arctans.append((p.coeff, p.argument(hi)))
        arctans.append((-p.coeff, p.argument(lo)))
    return ClosedForm(QuadSurd.rational(constant), tuple(arctans), logs)


def integrate_definite(f: RationalFunction, lo: RationalLike, hi: RationalLike,
                       factors: Optional[FactorList] = None, verify: bool = True) -> ClosedForm:
    lo, hi = Fraction(lo), Fraction(hi)
    if lo == hi:
        return ClosedForm()
    if lo > hi:
        return integrate_definite(f, hi, lo, factors, verify).negated()
    with timed_event("integrate_definite", lo=format_rational(lo), hi=format_rational(hi),
                     denominator=_poly_str(f.den_coeffs)) as detail:
        _check_no_poles(f.den_coeffs, lo, hi)
        form = evaluate_between(antiderivative(f, factors), lo, hi)
        if verify:
            oracle = quad_oracle(f, lo, hi, settings.quad_tolerance)
            delta = abs(form.float_value - oracle)
            detail.update(value=form.float_value, oracle_delta=delta)
            if delta > settings.closed_form_tolerance * max(1.0, abs(oracle)):
                raise VerificationError("Closed form disagrees with the quadrature oracle",
                                        closed_form=form.float_value, oracle=oracle, delta=delta)
    return form


def closed_form_from_factored(num: Sequence[RationalLike], factors: FactorList,
                              lo: RationalLike, hi: RationalLike) -> ClosedForm:
    """Integrate num / expand(factors) with the caller's factorisation."""
    f = RationalFunction.from_coefficients(num, factors.expand())
    return integrate_definite(f, lo, hi, factors)


def quad_oracle(f: RationalFunction, lo: RationalLike, hi: RationalLike, tol: float) -> float:
    lo, hi = Fraction(lo), Fraction(hi)
    if lo == hi:
        return 0.0
    a, b = (lo, hi) if lo < hi else (hi, lo)
    _check_no_poles(f.den_coeffs, a, b)
    num = np.array([float(c) for c in f.num_coeffs] or [0.0])
    den = np.array([float(c) for c in f.den_coeffs])

    def integrand(x: float) -> float:
        return float(np.polynomial.polynomial.polyval(x, num) / np.polynomial.polynomial.polyval(x, den))

    result = integrate.quad(integrand, float(lo), float(hi), epsabs=tol, epsrel=0.0,
                            limit=settings.quad_subdivision_limit, full_output=1)
    value, error = result[0], result[1]
    if len(result) > 3 or error > tol:
        raise NonConvergenceError("Adaptive quadrature did not reach the tolerance",
                                  estimate=value, error=error, tolerance=tol)
    return float(value)
