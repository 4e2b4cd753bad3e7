"""
Named invariant suites behind `periods verify`.

Each suite runs a batch of exact or statistical checks and returns a
SuiteResult; a suite passes when no check failed.
"""
import math
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from itertools import product as product_indices
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..core.config import settings
from ..core.events import timed_event
from ..core.exceptions import BoxViolationError, BuiltinParameterError, PeriodError
from ..mcvol import estimate, evaluate_witness
from ..models import Domain, Polynomial
from ..ratint import (
    FactorList,
    RationalFunction,
    antiderivative_check,
    factor_denominator,
    integrate_definite,
    partial_fractions,
    quad_oracle,
    square_free_part,
    sturm_count,
)
from ..schemas import SuiteResult
from ..seeders.gallery import gallery_witnesses
from ..semialg import check_box, materialize_single_domain, poly_eval, poly_scale_axis, poly_shift, product
from ..utils.exactnum import (
    QuadSurd,
    bernoulli,
    classical_bernoulli,
    even_zeta_factor,
    format_rational,
    parse_rational,
    sqrt_rational,
)
from ..utils.expr import Add, Expr, Literal, Mul, Name, Neg, Pow, Scale, parse_expr, to_text
from ..witness import add, build_witness, builtin, distance_bound, ledger_for, mul, power_bound, scale
from ..zeta import zeta_closed_algebraic, zeta_sum_bound, zeta_truncated, zeta_upper_bound

T_GRID = tuple(round(0.1 * k, 1) for k in range(1, 10))
ZETA_SLACK = 1e-10
SIGMAS = 4.0

# (numerator, denominator, lo, hi), coefficients constant term first
RATINT_CORPUS: Tuple[Tuple[Sequence[int], Sequence[int], Fraction, Fraction], ...] = (
    ([1], [0, 1], Fraction(1), Fraction(2)),
    ([1], [-3, 1], Fraction(0), Fraction(2)),
    ([1], [1, 2, 1], Fraction(0), Fraction(1)),
    ([1], [1, 3, 3, 1], Fraction(0), Fraction(1)),
    ([1], [1, 0, 1], Fraction(0), Fraction(1)),
    ([0, 1], [1, 0, 1], Fraction(0), Fraction(1)),
    ([1], [2, 2, 1], Fraction(0), Fraction(1)),
    ([1], [2, 0, 2], Fraction(0), Fraction(1)),
    ([1], [2, 0, 1], Fraction(-1), Fraction(3)),
    ([1], [1, 0, 2, 0, 1], Fraction(0), Fraction(1)),
    ([1], [1, 0, 3, 0, 3, 0, 1], Fraction(0), Fraction(1)),
    ([0, 1], [1, 0, 2, 0, 1], Fraction(0), Fraction(2)),
    ([1, 1], [1, 2, 3, 2, 1], Fraction(-1), Fraction(1)),
    ([1], [1, 3, 6, 7, 6, 3, 1], Fraction(0), Fraction(1)),
    ([1], [-2, 0, 1], Fraction(-1), Fraction(1)),
    ([1], [4, 0, -4, 0, 1], Fraction(0), Fraction(1)),
    ([1], [4, 0, 0, 0, 1], Fraction(0), Fraction(1)),
    ([1], [6, 0, -5, 0, 1], Fraction(-1), Fraction(1)),
    ([1, 0, 0, 1], [1, 0, 1], Fraction(0), Fraction(1)),
    ([3, -1, 2], [-2, 1, -2, 1], Fraction(0), Fraction(1)),
    ([1], [0, 1, 2, 2, 2, 1], Fraction(1), Fraction(2)),
    ([1], [1, 0, 1, 0, 1], Fraction(0), Fraction(1)),
)

_LEAVES = ("pi", "log(2)", "log(3)", "pi_log2", "pi_squared", "sqrt(2)", "zeta(2)", "1/2", "-3", "5/3")
_SCALES = (Fraction(2), Fraction(-1, 3), Fraction(5, 2))


class _Checks:
    def __init__(self, suite: str, seed: int):
        self.suite = suite
        self.seed = seed
        self.count = 0
        self.failures: List[str] = []

    def check(self, condition: bool, message: str) -> bool:
        self.count += 1
        if not condition:
            self.failures.append(message)
        return condition

    def extend(self, failures: List[str]) -> None:
        self.count += 1
        self.failures.extend(failures)

    def result(self) -> SuiteResult:
        return SuiteResult(suite=self.suite, passed=not self.failures, checks=self.count,
                           failures=self.failures, seed=self.seed)


def random_expression(rng: np.random.Generator, depth: int = 3) -> Expr:
    """A random expression tree over the gallery builtins."""
    if depth <= 0 or rng.random() < 0.3:
        return parse_expr(_LEAVES[rng.integers(len(_LEAVES))])
    kind = rng.integers(5)
    if kind == 0:
        return Add(random_expression(rng, depth - 1), random_expression(rng, depth - 1))
    if kind == 1:
        return Mul(random_expression(rng, depth - 1), random_expression(rng, depth - 1))
    if kind == 2:
        return Neg(random_expression(rng, depth - 1))
    if kind == 3:
        q = _SCALES[rng.integers(len(_SCALES))]
        return Scale(q, Fraction(0), random_expression(rng, depth - 1))
    return Pow(random_expression(rng, depth - 1), int(rng.integers(1, 4)))


def _within(value: float, target: float, stderr: float) -> bool:
    return abs(value - target) <= SIGMAS * stderr


# -- suites ---------------------------------------------------------------------------

def _exactnum(seed: int, samples: int) -> _Checks:
    c = _Checks("exactnum", seed)
    c.check(bernoulli(1) == Fraction(1, 6), "B_1 != 1/6")
    c.check(bernoulli(2) == Fraction(1, 30), "B_2 != 1/30")
    c.check(bernoulli(3) == Fraction(1, 42), "B_3 != 1/42")
    for m in range(1, 41):
        total = sum((math.comb(m + 1, j) * classical_bernoulli(j) for j in range(m + 1)), Fraction(0))
        c.check(total == 0, f"Bernoulli recurrence fails at m={m}")
    c.check(even_zeta_factor(2) == Fraction(1, 6), "zeta(2) factor != 1/6")
    c.check(even_zeta_factor(4) == Fraction(1, 90), "zeta(4) factor != 1/90")
    c.check(even_zeta_factor(6) == Fraction(1, 945), "zeta(6) factor != 1/945")
    x = QuadSurd(Fraction(1), Fraction(2), 3)
    c.check(x * x.reciprocal() == QuadSurd.rational(1), "surd reciprocal")
    c.check(sqrt_rational(Fraction(8, 9)) == QuadSurd(Fraction(0), Fraction(2, 3), 2), "sqrt(8/9)")
    c.check(QuadSurd(Fraction(-3), Fraction(2), 2).sign() == -1, "sign of -3 + 2 sqrt 2")
    rng = np.random.default_rng(seed)
    for _ in range(50):
        q = Fraction(int(rng.integers(-999, 1000)), int(rng.integers(1, 1000)))
        c.check(parse_rational(format_rational(q)) == q, f"rational round trip {q}")
    return c


def _semialg(seed: int, samples: int) -> _Checks:
    c = _Checks("semialg", seed)
    for i, w in enumerate(gallery_witnesses()):
        for bucket in w.buckets:
            for cell in bucket:
                try:
                    check_box(cell, settings.box_check_samples, seed + i)
                    problem = ""
                except BoxViolationError as exc:
                    problem = exc.message
                c.check(not problem, f"gallery entry {i}: {problem}")
    rng = np.random.default_rng(seed)
    x, y = Polynomial.variable(2, 0), Polynomial.variable(2, 1)
    for _ in range(50):
        p = int(rng.integers(-3, 4)) * x * x * y + int(rng.integers(-3, 4)) * y + int(rng.integers(-3, 4))
        a = Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 5)))
        s = Fraction(int(rng.integers(1, 6)), int(rng.integers(1, 5)))
        pt = (Fraction(int(rng.integers(-9, 10)), 7), Fraction(int(rng.integers(-9, 10)), 5))
        c.check(poly_eval(poly_shift(p, 0, a), (pt[0] + a, pt[1])) == poly_eval(p, pt), "shift identity")
        top = p.degree_in(0)
        scaled = poly_eval(poly_scale_axis(p, 0, s), (pt[0] * s, pt[1]))
        c.check(scaled == poly_eval(p, pt) * s ** max(top, 0), "scale identity")
    disk = builtin("pi").re_pos
    squared = estimate(product(disk, disk), samples, seed)
    c.check(_within(squared.mean, math.pi ** 2, squared.stderr), f"disk x disk: {squared.mean} vs pi^2")
    return c


def _ledger(seed: int, samples: int) -> _Checks:
    c = _Checks("ledger", seed)
    rng = np.random.default_rng(seed)
    for _ in range(1000):
        e1, e2 = random_expression(rng, 2), random_expression(rng, 2)
        w1, w2 = build_witness(e1), build_witness(e2)
        b1, b2 = w1.bound, w2.bound
        label = f"{to_text(e1)} ; {to_text(e2)}"
        c.check(mul(w1, w2).bound <= b1 + b2, f"mul law: {label}")
        c.check(add(w1, w2).bound <= max(b1, b2), f"add law: {label}")
        q = _SCALES[rng.integers(len(_SCALES))]
        c.check(scale(q, w1).bound == b1, f"scale law: {to_text(e1)}")
    witnesses = gallery_witnesses()
    n = len(witnesses)
    d = [[distance_bound(a, b) for b in witnesses] for a in witnesses]
    for i, j in combinations(range(n), 2):
        c.check(d[i][j] == d[j][i], f"distance symmetry: {witnesses[i]}, {witnesses[j]}")
    for i, j, k in product_indices(range(n), repeat=3):
        c.check(d[i][k] <= d[i][j] + d[j][k],
                f"distance triangle: {witnesses[i]}, {witnesses[j]}, {witnesses[k]}")
    return c


def _registry(seed: int, samples: int) -> _Checks:
    c = _Checks("registry", seed)
    pi = builtin("pi")
    w = build_witness(parse_expr("mul(pi, log(2))"))
    c.check(w.bound == 3 and w.bound_ledger.provenance == "registry", "bound(mul(pi, log(2))) != 3")
    c.check(power_bound(pi, 2) == 3, "power_bound(pi, 2) != 3")
    c.check(power_bound(pi, 4) == 6, "power_bound(pi, 4) != 6")
    c.check(pi.bound == 2, "bound(pi) != 2")
    c.check(builtin("log", [2]).bound == 2, "bound(log 2) != 2")
    c.check(builtin("pi_log2").bound == 3, "bound(pi_log2) != 3")
    c.check(builtin("pi_squared").bound == 3, "bound(pi_squared) != 3")
    for q in (Fraction(3), Fraction(5, 2), Fraction(7)):
        c.check(build_witness(Mul(Name("pi"), Name("log", (q,)))).bound == 3, f"pi*log({q}) != 3")
    c.check(ledger_for(mul(pi, pi).signature).value == 3, "pi*pi != 3")
    c.check(power_bound(pi, 1000) == 1500, "power_bound(pi, 1000) != 1500")
    return c


def _ratint(seed: int, samples: int) -> _Checks:
    c = _Checks("ratint", seed)
    for num, den, lo, hi in RATINT_CORPUS:
        f = RationalFunction.from_coefficients(num, den)
        label = f"{num}/{den} on [{lo}, {hi}]"
        try:
            form = integrate_definite(f, lo, hi, verify=False)
            oracle = quad_oracle(f, lo, hi, settings.quad_tolerance)
            c.check(abs(form.float_value - oracle) <= settings.closed_form_tolerance, f"oracle mismatch: {label}")
            c.check(antiderivative_check(f), f"derivative check: {label}")
        except PeriodError as exc:
            c.check(False, f"{label}: {exc.message}")
    rng = np.random.default_rng(seed)
    for _ in range(100):
        roots = rng.choice(np.arange(-3, 4), size=int(rng.integers(0, 3)), replace=False)
        linear = tuple((Fraction(int(r)), int(rng.integers(1, 3))) for r in roots)
        quadratic = ()
        if not linear or rng.random() < 0.5:
            b = int(rng.integers(-2, 3))
            quadratic = ((Fraction(b), Fraction(b * b // 4 + int(rng.integers(1, 4))), int(rng.integers(1, 3))),)
        factors = FactorList(linear, quadratic)
        den = factors.expand()
        num = [Fraction(int(v)) for v in rng.integers(-5, 6, size=len(den) + 1)]
        f = RationalFunction.from_coefficients(num, den)
        pf = partial_fractions(f, factors)
        rn, rd = pf.recombine()
        lhs = Polynomial.from_coefficients(rn) * f.den
        rhs = f.num * Polynomial.from_coefficients(rd)
        c.check(lhs == rhs, f"recombination: {num} / {den}")
        c.check(factor_denominator(f.den).expand() == f.den.coefficients(), f"factorisation: {den}")
    return c


def _sign_scan(coeffs: Sequence[Fraction], lo: Fraction, hi: Fraction, points: int = 20001) -> int:
    xs = np.linspace(float(lo), float(hi), points)
    values = np.polyval([float(v) for v in reversed(coeffs)], xs)
    signs = np.sign(values)
    signs = signs[signs != 0]
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def _refined_scan(p: Polynomial, lo: Fraction, hi: Fraction, expected: int) -> int:
    """Sign changes of the square-free part, on a grid made ten times finer while they disagree."""
    coeffs = square_free_part(p).coefficients()
    scan = _sign_scan(coeffs, lo, hi)
    for points in (200001, 2000001):
        if scan == expected:
            break
        scan = _sign_scan(coeffs, lo, hi, points)
    return scan


def _sturm(seed: int, samples: int) -> _Checks:
    c = _Checks("sturm", seed)
    rng = np.random.default_rng(seed)
    candidates = [Fraction(k, 2) for k in range(-10, 11)]
    for _ in range(100):
        k = int(rng.integers(1, 5))
        roots = [candidates[i] for i in rng.choice(len(candidates), size=k, replace=False)]
        p = Polynomial.from_coefficients([int(rng.integers(1, 4)), 0, 1])
        for r in roots:
            p = p * Polynomial.from_coefficients([-r, 1])
        lo = Fraction(int(rng.integers(-6, 2))) + Fraction(1, 3)
        hi = lo + int(rng.integers(1, 8))
        expected = sum(1 for r in roots if lo < r < hi)
        got = sturm_count(p, lo, hi)
        scan = _refined_scan(p, lo, hi, got)
        c.check(got == expected == scan, f"sturm {got} / scan {scan} / exact {expected} on [{lo}, {hi}]")
    for _ in range(100):
        degree = int(rng.integers(1, 7))
        coeffs = [int(v) for v in rng.integers(-9, 10, size=degree + 1)]
        coeffs[-1] = coeffs[-1] or 1
        p = Polynomial.from_coefficients(coeffs)
        lo = Fraction(int(rng.integers(-6, 2))) + Fraction(1, 3)
        hi = lo + int(rng.integers(1, 8))
        if poly_eval(p, (lo,)) == 0 or poly_eval(p, (hi,)) == 0:
            continue
        got = sturm_count(p, lo, hi)
        scan = _refined_scan(p, lo, hi, got)
        c.check(got == scan, f"sturm {got} / scan {scan} for {p} on [{lo}, {hi}]")
    return c


def _zeta(seed: int, samples: int) -> _Checks:
    c = _Checks("zeta", seed)
    witnesses = gallery_witnesses()
    M = settings.zeta_terms
    pairs = [(i, j, mul(witnesses[i], witnesses[j]), add(witnesses[i], witnesses[j]))
             for i, j in combinations_with_replacement(range(len(witnesses)), 2)]
    for t in T_GRID:
        single = [zeta_truncated(w, t, M).series_value for w in witnesses]
        for w, z in zip(witnesses, single):
            c.check(z <= zeta_upper_bound(w, t) * (1 + ZETA_SLACK), f"upper bound: {w} t={t}")
        for i, j, product, total_witness in pairs:
            w1, w2 = witnesses[i], witnesses[j]
            prod = zeta_truncated(product, t, M).series_value
            c.check(prod <= single[i] * single[j] * (1 + ZETA_SLACK), f"product bound: {w1}, {w2} t={t}")
            total = zeta_truncated(total_witness, t, M).series_value
            c.check(total <= zeta_sum_bound(w1, w2, t) * (1 + ZETA_SLACK), f"sum bound: {w1}, {w2} t={t}")
    two = zeta_truncated(build_witness(Literal(Fraction(2))), 0.5, 40).series_value
    c.check(1.999999 <= two <= 2.000001, f"algebraic zeta at 1/2: {two}")
    c.check(zeta_closed_algebraic(0.5) == 2.0, "closed algebraic zeta")
    return c


def _disjoint(domain: Domain) -> bool:
    cells = list(domain)
    return all(a.box.disjoint(b.box) for a, b in combinations(cells, 2))


def _domain(text: str) -> Domain:
    return build_witness(parse_expr(text)).re_pos


def _materialize(seed: int, samples: int) -> _Checks:
    c = _Checks("materialize", seed)
    cases = (("pi", "log(2)", math.pi + math.log(2)), ("pi", "pi", 2 * math.pi))
    for first, second, target in cases:
        union = _domain(first) + _domain(second)
        merged = materialize_single_domain(union)
        c.check(_disjoint(merged), f"boxes overlap: {first}, {second}")
        c.check(len({cell.dim for cell in merged}) == 1, f"mixed dimensions: {first}, {second}")
        est = estimate(merged, samples, seed)
        c.check(_within(est.mean, target, est.stderr), f"volume {est.mean} vs {target}: {first}, {second}")
    return c


def _determinism(seed: int, samples: int) -> _Checks:
    c = _Checks("determinism", seed)
    w = builtin("pi")
    first = evaluate_witness(w, samples, seed).model_dump_json()
    second = evaluate_witness(w, samples, seed).model_dump_json()
    c.check(first == second, "repeat run differs")
    threaded = evaluate_witness(w, samples, seed, batch_size=max(samples // 7, 1), workers=4)
    serial = evaluate_witness(w, samples, seed, batch_size=max(samples // 7, 1), workers=1)
    c.check(threaded.model_dump_json() == serial.model_dump_json(), "worker count changes the result")
    for i, w in enumerate(gallery_witnesses()):
        for cell in w.re_pos:
            full = estimate(Domain.of(cell), samples, seed + i)
            for k in range(len(cell.constraints)):
                relaxed = estimate(Domain.of(cell.without(k)), samples, seed + i)
                c.check(relaxed.mean >= full.mean, f"dropping constraint {k} shrank {w}")
    return c


def _identities(seed: int, samples: int) -> _Checks:
    c = _Checks("identities", seed)
    pairs = (
        ("mul(pi, log(2))", "pi_log2", math.pi * math.log(2)),
        ("mul(pi, pi)", "pi_squared", math.pi ** 2),
    )
    for left, right, target in pairs:
        a = evaluate_witness(build_witness(parse_expr(left)), samples, seed).re
        b = evaluate_witness(build_witness(parse_expr(right)), samples, seed + 1).re
        c.check(abs(a.mean - b.mean) <= SIGMAS * math.hypot(a.stderr, b.stderr), f"{left} vs {right}")
        c.check(_within(a.mean, target, a.stderr), f"{left}: {a.mean} vs {target}")
        c.check(_within(b.mean, target, b.stderr), f"{right}: {b.mean} vs {target}")
    for text, target in (("zeta(2)", math.pi ** 2 / 6), ("zeta(4)", math.pi ** 4 / 90), ("pi", math.pi)):
        r = evaluate_witness(build_witness(parse_expr(text)), samples, seed).re
        c.check(_within(r.mean, target, r.stderr), f"{text}: {r.mean} vs {target}")
    c.extend(calibration_failures(seed, max(settings.min_samples, samples // 50)))
    c.extend(homomorphism_failures(seed, max(settings.min_samples, samples // 10)))
    c.extend(scale_failures(seed, samples))
    return c


def calibration_failures(seed: int, samples: int, runs: int = 50, required: int = 43) -> List[str]:
    """pi must fall within two standard errors in at least `required` of `runs` seeds."""
    pi = builtin("pi")
    inside = 0
    for k in range(runs):
        r = evaluate_witness(pi, samples, seed + k).re
        inside += abs(r.mean - math.pi) <= 2.0 * r.stderr
    if inside < required:
        return [f"calibration: pi inside 2 sigma in {inside}/{runs} runs"]
    return []


def homomorphism_failures(seed: int, samples: int,
                          pairs: Optional[Sequence[Tuple[int, int]]] = None) -> List[str]:
    """Estimates of gallery products and sums against products and sums of estimates."""
    witnesses = gallery_witnesses()
    alone = [evaluate_witness(w, samples, seed + i).re for i, w in enumerate(witnesses)]
    if pairs is None:
        pairs = list(combinations_with_replacement(range(len(witnesses)), 2))
    failures = []
    for i, j in pairs:
        a, b = alone[i], alone[j]
        m = evaluate_witness(mul(witnesses[i], witnesses[j]), samples, seed + 101).re
        spread = math.sqrt(m.stderr ** 2 + (b.mean * a.stderr) ** 2 + (a.mean * b.stderr) ** 2)
        if abs(m.mean - a.mean * b.mean) > SIGMAS * spread + 1e-12:
            failures.append(f"mul homomorphism: {witnesses[i]}, {witnesses[j]}")
        s = evaluate_witness(add(witnesses[i], witnesses[j]), samples, seed + 202).re
        spread = math.sqrt(s.stderr ** 2 + a.stderr ** 2 + b.stderr ** 2)
        if abs(s.mean - (a.mean + b.mean)) > SIGMAS * spread + 1e-12:
            failures.append(f"add homomorphism: {witnesses[i]}, {witnesses[j]}")
    return failures


def scale_failures(seed: int, samples: int, draws: int = 10) -> List[str]:
    """Scaling a witness by a random rational scales its estimate."""
    rng = np.random.default_rng(seed)
    witnesses = gallery_witnesses()
    failures = []
    for k in range(draws):
        w = witnesses[int(rng.integers(len(witnesses)))]
        num = int(rng.choice([n for n in range(-9, 10) if n]))
        q = Fraction(num, int(rng.integers(1, 6)))
        base = evaluate_witness(w, samples, seed + k).re
        scaled = evaluate_witness(scale(q, w), samples, seed + k).re
        tolerance = SIGMAS * math.hypot(scaled.stderr, abs(float(q)) * base.stderr) + 1e-12
        if abs(scaled.mean - float(q) * base.mean) > tolerance:
            failures.append(f"scale invariance: {q} * {w}")
    return failures


SUITES: Dict[str, Callable[[int, int], _Checks]] = {
    "exactnum": _exactnum,
    "semialg": _semialg,
    "ledger": _ledger,
    "registry": _registry,
    "ratint": _ratint,
    "sturm": _sturm,
    "zeta": _zeta,
    "materialize": _materialize,
    "determinism": _determinism,
    "identities": _identities,
}


class VerificationService:

    @staticmethod
    def suite_names() -> List[str]:
        return list(SUITES) + ["all"]

    @staticmethod
    def run(suite: str, seed: int = 0, samples: Optional[int] = None) -> List[SuiteResult]:
        samples = samples or settings.verify_samples
        names = list(SUITES) if suite == "all" else [suite]
        results = []
        for name in names:
            runner = SUITES.get(name)
            if runner is None:
                raise BuiltinParameterError(f"Unknown suite {name!r}", suite=name,
                                            expected=VerificationService.suite_names())
            with timed_event("verify", suite=name, seed=seed, samples=samples) as detail:
                result = runner(seed, samples).result()
                detail.update(passed=result.passed, checks=result.checks, failures=len(result.failures))
            results.append(result)
        return results
