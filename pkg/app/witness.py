"""
Period witnesses and their degree-bound ledger.

A witness stores four domains (re+, re-, im+, im-); its value is
vol(re+) - vol(re-) + i (vol(im+) - vol(im-)). Next to the domains it keeps a
canonical signature: a Gaussian-rational coefficient times a sorted multiset
of atoms. The ledger is always derived from the signature, as the cheapest
partition of the atom multiset into registry entries and single atoms. Bounds
are upper bounds on the degree, never exact degrees.
"""
from __future__ import annotations

import itertools
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Literal, Optional, Sequence, Tuple, Union

from .core.config import settings
from .core.exceptions import BuiltinParameterError, OutOfRangeError, UnknownBuiltinError
from .models import Box, Cell, Domain, Polynomial
from .schemas import TranscendenceReport
from .semialg import product, scale_axis
from .utils.exactnum import (
    Gaussian,
    RationalLike,
    even_zeta_factor,
    format_gaussian,
    format_rational,
    gaussian_mul,
    gaussian_pow,
)
from .utils import expr

Provenance = Literal["dimension", "registry", "arithmetic"]
Builder = Tuple[str, Tuple[Fraction, ...]]

ONE: Gaussian = (Fraction(1), Fraction(0))
ZERO: Gaussian = (Fraction(0), Fraction(0))


@dataclass(frozen=True)
class DegreeBound:
    value: Union[int, float]
    provenance: Provenance

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.value)


@dataclass(frozen=True, order=True)
class Atom:
    """A factor of a signature: a builtin generator or an opaque sum."""

    key: str
    bound: int = field(compare=False)
    algebraic: bool = field(default=False, compare=False)
    builder: Optional[Builder] = field(default=None, compare=False)


@dataclass(frozen=True)
class Signature:
    coefficient: Gaussian
    atoms: Tuple[Atom, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(sorted(self.atoms)))
        if self.coefficient == ZERO:
            object.__setattr__(self, "atoms", ())

    @property
    def is_zero(self) -> bool:
        return self.coefficient == ZERO

    @property
    def is_pure_scalar(self) -> bool:
        return not self.atoms

    @property
    def is_algebraic(self) -> bool:
        return all(a.algebraic for a in self.atoms)

    @property
    def factor_key(self) -> str:
        return "*".join(a.key for a in self.atoms) or "1"

    def times(self, other: "Signature") -> "Signature":
        return Signature(gaussian_mul(self.coefficient, other.coefficient), self.atoms + other.atoms)

    def scaled(self, q: Gaussian) -> "Signature":
        return Signature(gaussian_mul(self.coefficient, q), self.atoms)

    def power(self, m: int) -> "Signature":
        return Signature(gaussian_pow(self.coefficient, m), self.atoms * m)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        if not self.atoms:
            return format_gaussian(self.coefficient)
        if self.coefficient == ONE:
            return self.factor_key
        coeff = format_gaussian(self.coefficient)
        if self.coefficient[1] != 0:
            coeff = f"({coeff})"
        return f"{coeff}*{self.factor_key}"


@dataclass(frozen=True)
class RegistryEntry:
    bound: int
    builder: Builder
    note: str = ""


@dataclass(frozen=True)
class _Plan:
    bound: int
    used_registry: bool
    parts: Tuple[Tuple[Tuple[str, ...], Optional[RegistryEntry]], ...]


_LOG_KEY = re.compile(r"^log\((-?\d+(?:/\d+)?)\)$")


class Registry:
    """
    Improved bounds from explicit low-dimensional constructions, keyed by the
    factor part of a signature. Besides the fixed entries it knows the family
    pi*log(q) <= 3 for every rational q > 1.
    """

    def __init__(self, entries: Dict[str, RegistryEntry]):
        self._entries = dict(entries)

    @classmethod
    def default(cls) -> "Registry":
        return cls({
            "log(2)*pi": RegistryEntry(3, ("pi_log2", ()), "volume of {x^2+y^2<=1, 0<=z(x^2+y^2+1)<=1}"),
            "pi*pi": RegistryEntry(3, ("pi_squared", ()), "volume of {x^2+y^2<=1, 0<=z((x^2+y^2)^2+1)<=4}"),
        })

    def keys(self) -> List[str]:
        return sorted(self._entries)

    def lookup(self, factor_key: str) -> Optional[RegistryEntry]:
        if factor_key in self._entries:
            return self._entries[factor_key]
        parts = factor_key.split("*")
        if len(parts) == 2 and parts[1] == "pi":
            match = _LOG_KEY.match(parts[0])
            if match and Fraction(match.group(1)) > 1:
                return RegistryEntry(3, ("pi_log", (Fraction(match.group(1)),)),
                                     "volume of {x^2+y^2<=q-1, 0<=z(x^2+y^2+1)<=1}")
        return None

    def candidates(self, keys: Counter) -> List[Tuple[Tuple[str, ...], RegistryEntry]]:
        found: Dict[Tuple[str, ...], RegistryEntry] = {}
        for factor_key, entry in self._entries.items():
            need = Counter(factor_key.split("*"))
            if all(keys[k] >= n for k, n in need.items()):
                found[tuple(sorted(need.elements()))] = entry
        if keys["pi"]:
            for k in keys:
                combo = tuple(sorted((k, "pi")))
                if combo not in found and _LOG_KEY.match(k):
                    entry = self.lookup("*".join(combo))
                    if entry is not None:
                        found[combo] = entry
        return list(found.items())

    def best_plan(self, atoms: Sequence[Atom]) -> _Plan:
        """
        Cheapest partition of ``atoms`` into registry entries and single atoms.

        Atoms no registry entry can use are priced singly. The rest is a
        bottom-up table over count vectors of the remaining keys; each state
        keeps its cost and the last move, and the plan is read back from the
        full state.
        """
        counts = Counter(a.key for a in atoms)
        cost = {a.key: a.bound for a in atoms}
        combos = self.candidates(counts)
        keys = sorted({k for combo, _ in combos for k in combo})
        moves: List[Tuple[Tuple[int, ...], Tuple[Tuple[str, ...], Optional[RegistryEntry]], int]] = [
            (tuple(int(k == key) for k in keys), ((key,), None), cost[key]) for key in keys
        ]
        for combo, entry in combos:
            need = Counter(combo)
            moves.append((tuple(need[k] for k in keys), (combo, entry), entry.bound))

        # product() yields every state after all states it can be reduced to
        table: Dict[Tuple[int, ...], Tuple[int, bool, int]] = {}
        for state in itertools.product(*(range(counts[k] + 1) for k in keys)):
            if not any(state):
                table[state] = (0, False, -1)
                continue
            first = next(i for i, n in enumerate(state) if n)
            best: Optional[Tuple[int, bool, int]] = None
            for index, (delta, (_, entry), price) in enumerate(moves):
                if not delta[first] or any(d > n for d, n in zip(delta, state)):
                    continue
                prev_cost, prev_registry, _ = table[tuple(n - d for n, d in zip(state, delta))]
                if best is None or prev_cost + price < best[0]:
                    best = (prev_cost + price, prev_registry or entry is not None, index)
            table[state] = best  # type: ignore[assignment]

        state = tuple(counts[k] for k in keys)
        total, used_registry, _ = table[state]
        parts: List[Tuple[Tuple[str, ...], Optional[RegistryEntry]]] = []
        while any(state):
            delta, part, _ = moves[table[state][2]]
            parts.append(part)
            state = tuple(n - d for n, d in zip(state, delta))
        for key in sorted(set(counts) - set(keys)):
            parts.extend([((key,), None)] * counts[key])
            total += cost[key] * counts[key]
        return _Plan(total, used_registry, tuple(parts))


REGISTRY = Registry.default()


def ledger_for(signature: Signature, registry: Registry = REGISTRY) -> DegreeBound:
    return _ledger(signature, registry)


@lru_cache(maxsize=8192)
def _ledger(signature: Signature, registry: Registry) -> DegreeBound:
    if signature.is_zero:
        return DegreeBound(0, "dimension")
    transcendental = [a for a in signature.atoms if not a.algebraic]
    if not transcendental:
        simple = len(signature.atoms) <= 1 and all(a.builder is not None for a in signature.atoms)
        provenance: Provenance = "dimension" if simple else "arithmetic"
        return DegreeBound(1, provenance)
    plan = registry.best_plan(transcendental)
    if plan.used_registry:
        return DegreeBound(plan.bound, "registry")
    if len(transcendental) == 1 and transcendental[0].builder is not None:
        return DegreeBound(plan.bound, "dimension")
    return DegreeBound(plan.bound, "arithmetic")


@dataclass(frozen=True)
class PeriodWitness:
    re_pos: Domain
    re_neg: Domain
    im_pos: Domain
    im_neg: Domain
    signature: Signature
    bound_ledger: DegreeBound

    @classmethod
    def from_parts(cls, buckets: Tuple[Domain, Domain, Domain, Domain], signature: Signature,
                   registry: Registry = REGISTRY) -> "PeriodWitness":
        bound = ledger_for(signature, registry)
        dim = max(d.max_dim() for d in buckets)
        if bound.provenance == "dimension" and bound.value < dim:
            # absorbed algebraic factors put the ledger below the cell dimension
            bound = DegreeBound(bound.value, "arithmetic")
        return cls(*buckets, signature=signature, bound_ledger=bound)

    @classmethod
    def zero(cls) -> "PeriodWitness":
        e = Domain.empty()
        return cls.from_parts((e, e, e, e), Signature(ZERO))

    @property
    def buckets(self) -> Tuple[Domain, Domain, Domain, Domain]:
        return self.re_pos, self.re_neg, self.im_pos, self.im_neg

    @property
    def bound(self) -> Union[int, float]:
        return self.bound_ledger.value

    @property
    def is_algebraic(self) -> bool:
        """Tagged algebraic and non-zero."""
        return not self.signature.is_zero and self.signature.is_algebraic

    def max_dim(self) -> int:
        return max(d.max_dim() for d in self.buckets)

    def __str__(self) -> str:
        return str(self.signature)


# -- base witnesses -----------------------------------------------------------

def _interval_cell(length: Fraction) -> Cell:
    x = Polynomial.variable(1, 0)
    return Cell.build(Box.of((0, length)), x, length - x)


def make_algebraic(q: RationalLike) -> PeriodWitness:
    """q as the length of [0, |q|], in re+ or re- by sign."""
    q = Fraction(q)
    if q == 0:
        return PeriodWitness.zero()
    cell = Domain.of(_interval_cell(abs(q)))
    empty = Domain.empty()
    buckets = (cell, empty, empty, empty) if q > 0 else (empty, cell, empty, empty)
    return PeriodWitness.from_parts(buckets, Signature((q, Fraction(0))))


def make_sqrt(n: int) -> PeriodWitness:
    """sqrt(n) as the length of {x >= 0, n - x^2 >= 0}."""
    if not isinstance(n, int) or n < 1:
        raise BuiltinParameterError("sqrt needs a positive integer", argument=n)
    root = math.isqrt(n)
    x = Polynomial.variable(1, 0)
    hi = root if root * root == n else root + 1
    cell = Cell.build(Box.of((0, hi)), x, n - x * x)
    empty = Domain.empty()
    if root * root == n:
        signature = Signature((Fraction(root), Fraction(0)))
    else:
        signature = Signature(ONE, (Atom(f"sqrt({n})", 1, True, ("sqrt", (Fraction(n),))),))
    return PeriodWitness.from_parts((Domain.of(cell), empty, empty, empty), signature)


def _real_witness(cell: Cell, atoms: Tuple[Atom, ...]) -> PeriodWitness:
    empty = Domain.empty()
    return PeriodWitness.from_parts((Domain.of(cell), empty, empty, empty), Signature(ONE, atoms))


PI_ATOM = Atom("pi", 2, False, ("pi", ()))


def _log_atom(q: Fraction) -> Atom:
    return Atom(f"log({format_rational(q)})", 2, False, ("log", (q,)))


def _disk_cell() -> Cell:
    x, y = Polynomial.variable(2, 0), Polynomial.variable(2, 1)
    return Cell.build(Box.of((-1, 1), (-1, 1)), 1 - x * x - y * y)


def _log_cell(q: Fraction) -> Cell:
    x, y = Polynomial.variable(2, 0), Polynomial.variable(2, 1)
    return Cell.build(Box.of((1, q), (0, 1)), x - 1, q - x, y, 1 - x * y)


def _pi_log_cell(q: Fraction) -> Cell:
    x, y, z = (Polynomial.variable(3, i) for i in range(3))
    r2 = x * x + y * y
    radius = math.isqrt(math.floor(q - 1)) + 1
    return Cell.build(Box.of((-radius, radius), (-radius, radius), (0, 1)),
                      (q - 1) - r2, z, 1 - z * (r2 + 1))


def _pi_squared_cell() -> Cell:
    x, y, z = (Polynomial.variable(3, i) for i in range(3))
    r2 = x * x + y * y
    return Cell.build(Box.of((-1, 1), (-1, 1), (0, 4)), 1 - r2, z, 4 - z * (r2 * r2 + 1))


def _log_parameter(params: Sequence[Fraction], name: str) -> Fraction:
    if len(params) != 1:
        raise BuiltinParameterError(f"{name} takes exactly one rational parameter", builtin=name)
    q = Fraction(params[0])
    if q <= 1:
        raise BuiltinParameterError(f"{name}(q) needs q > 1", builtin=name, q=format_rational(q))
    return q


def builtin(name: str, params: Sequence[RationalLike] = ()) -> PeriodWitness:
    params = tuple(Fraction(p) for p in params)
    if name == "pi":
        return _real_witness(_disk_cell(), (PI_ATOM,))
    if name == "log":
        q = _log_parameter(params, name)
        return _real_witness(_log_cell(q), (_log_atom(q),))
    if name in ("pi_log2", "pi_log"):
        q = Fraction(2) if name == "pi_log2" else _log_parameter(params, name)
        return _real_witness(_pi_log_cell(q), (_log_atom(q), PI_ATOM))
    if name == "pi_squared":
        return _real_witness(_pi_squared_cell(), (PI_ATOM, PI_ATOM))
    if name in ("zeta", "zeta_even"):
        if len(params) != 1 or params[0].denominator != 1:
            raise BuiltinParameterError("zeta takes one even integer", builtin=name)
        two_k = int(params[0])
        factor = even_zeta_factor(two_k)
        return scale(factor, power(builtin("pi"), two_k))
    if name == "sqrt":
        if len(params) != 1 or params[0].denominator != 1:
            raise BuiltinParameterError("sqrt takes one positive integer", builtin=name)
        return make_sqrt(int(params[0]))
    raise UnknownBuiltinError(f"Unknown builtin {name!r}", name=name)


# -- algebra --------------------------------------------------------------------

def _scale_pair(q: Fraction, pos: Domain, neg: Domain) -> Tuple[Domain, Domain]:
    if q == 0:
        return Domain.empty(), Domain.empty()
    s = abs(q)
    pos_s = pos if s == 1 else scale_axis(pos, s)
    neg_s = neg if s == 1 else scale_axis(neg, s)
    return (pos_s, neg_s) if q > 0 else (neg_s, pos_s)


def scale(q: Union[RationalLike, Gaussian], w: PeriodWitness) -> PeriodWitness:
    """Multiply by a rational or a Gaussian rational (re, im)."""
    a, b = (Fraction(q[0]), Fraction(q[1])) if isinstance(q, tuple) else (Fraction(q), Fraction(0))
    if (a, b) == ZERO or w.signature.is_zero:
        return PeriodWitness.zero()
    xr_pos, xr_neg = _scale_pair(a, w.re_pos, w.re_neg)
    yr_pos, yr_neg = _scale_pair(-b, w.im_pos, w.im_neg)
    xi_pos, xi_neg = _scale_pair(b, w.re_pos, w.re_neg)
    yi_pos, yi_neg = _scale_pair(a, w.im_pos, w.im_neg)
    buckets = (xr_pos + yr_pos, xr_neg + yr_neg, xi_pos + yi_pos, xi_neg + yi_neg)
    return PeriodWitness.from_parts(buckets, w.signature.scaled((a, b)))


def negate(w: PeriodWitness) -> PeriodWitness:
    return PeriodWitness(w.re_neg, w.re_pos, w.im_neg, w.im_pos,
                         signature=w.signature.scaled((Fraction(-1), Fraction(0))),
                         bound_ledger=w.bound_ledger)


def mul(w1: PeriodWitness, w2: PeriodWitness) -> PeriodWitness:
    if w1.signature.is_zero or w2.signature.is_zero:
        return PeriodWitness.zero()
    # a pure scalar factor stretches an axis instead of adding dimensions
    if w1.signature.is_pure_scalar:
        return scale(w1.signature.coefficient, w2)
    if w2.signature.is_pure_scalar:
        return scale(w2.signature.coefficient, w1)
    dim = w1.max_dim() + w2.max_dim()
    if dim > settings.max_witness_dim:
        raise OutOfRangeError("Product witness exceeds the cell dimension limit",
                              dim=dim, limit=settings.max_witness_dim)
    ap, an, bp, bn = w1.buckets
    cp, cn, dp, dn = w2.buckets

    def s(*pairs: Tuple[Domain, Domain]) -> Domain:
        return Domain.union(product(x, y) for x, y in pairs)

    buckets = (
        s((ap, cp), (an, cn), (bp, dn), (bn, dp)),
        s((ap, cn), (an, cp), (bp, dp), (bn, dn)),
        s((ap, dp), (an, dn), (bp, cp), (bn, cn)),
        s((ap, dn), (an, dp), (bp, cn), (bn, cp)),
    )
    return PeriodWitness.from_parts(buckets, w1.signature.times(w2.signature))


def add(w1: PeriodWitness, w2: PeriodWitness) -> PeriodWitness:
    buckets = tuple(x + y for x, y in zip(w1.buckets, w2.buckets))
    s1, s2 = w1.signature, w2.signature
    if s1.is_zero:
        signature = s2
    elif s2.is_zero:
        signature = s1
    elif s1.is_pure_scalar and s2.is_pure_scalar:
        c1, c2 = s1.coefficient, s2.coefficient
        signature = Signature((c1[0] + c2[0], c1[1] + c2[1]))
    else:
        b1, b2 = w1.bound_ledger.value, w2.bound_ledger.value
        if w1.is_algebraic and not w2.is_algebraic:
            bound = b2
        elif w2.is_algebraic and not w1.is_algebraic:
            bound = b1
        else:
            bound = max(b1, b2)
        k1, k2 = sorted((str(s1), str(s2)))
        atom = Atom(f"add({k1},{k2})", bound, s1.is_algebraic and s2.is_algebraic)
        signature = Signature(ONE, (atom,))
    return PeriodWitness.from_parts(buckets, signature)  # type: ignore[arg-type]


def power(w: PeriodWitness, m: int) -> PeriodWitness:
    """
    w^m. When every atom can be rebuilt from a builtin, the optimal partition
    is realised with registry witnesses (fewer dimensions); otherwise by
    repeated products.
    """
    if m < 1:
        raise OutOfRangeError("Power exponent must be a positive integer", power=m)
    if m == 1 or w.signature.is_zero:
        return w
    sig = w.signature
    if sig.atoms and all(a.builder is not None for a in sig.atoms):
        target = sig.power(m)
        transcendental = [a for a in target.atoms if not a.algebraic]
        algebraic = [a for a in target.atoms if a.algebraic]
        plan = REGISTRY.best_plan(transcendental) if transcendental else _Plan(0, False, ())
        by_key = {a.key: a for a in target.atoms}
        factors: List[PeriodWitness] = []
        for keys, entry in plan.parts:
            name, params = entry.builder if entry is not None else by_key[keys[0]].builder
            factors.append(builtin(name, params))
        factors.extend(builtin(*a.builder) for a in algebraic)  # type: ignore[misc]
        result = factors[0]
        for f in factors[1:]:
            result = mul(result, f)
        return scale(target.coefficient, result)
    result, base, k = None, w, m
    while k:
        if k & 1:
            result = base if result is None else mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return result  # type: ignore[return-value]


# -- bounds ---------------------------------------------------------------------

def power_bound(w: PeriodWitness, m: int) -> Union[int, float]:
    """Upper bound for deg(w^m); sub-additive and never above m * ledger(w)."""
    if m < 1:
        raise OutOfRangeError("Power exponent must be a positive integer", power=m)
    if w.bound_ledger.is_infinite:
        return math.inf
    return min(ledger_for(w.signature.power(m)).value, m * w.bound_ledger.value)


def distance_bound(w1: PeriodWitness, w2: PeriodWitness) -> Union[int, float]:
    return add(w1, negate(w2)).bound_ledger.value


def in_graded_piece(w: PeriodWitness, k: int) -> bool:
    """Bound-level membership in the set of periods of degree <= k."""
    return w.bound_ledger.value <= k


def different_degree_criterion(degrees: Sequence[int]) -> Dict[str, bool]:
    """
    Consequences of pairwise different exact degrees: the sum is
    transcendental when every degree exceeds 1; the numbers are linearly
    independent over the algebraic numbers when every degree is at least 1.
    """
    distinct = len(set(degrees)) == len(degrees) and len(degrees) >= 2
    return {
        "distinct": distinct,
        "sum_transcendental": distinct and all(d > 1 for d in degrees),
        "quotient_transcendental": distinct and len(degrees) == 2 and all(d > 1 for d in degrees),
        "linearly_independent": distinct and all(d >= 1 for d in degrees),
    }


_E_PI_NOTE = ("deg(pi) = 2; an exact proof that deg(e) >= 3 would give different "
             "degrees and hence a transcendental e + pi")


def e_plus_pi_observation() -> str:
    """What an exact deg(e) >= 3 together with deg(pi) = 2 would imply."""
    outcome = different_degree_criterion([3, 2])
    return _E_PI_NOTE if outcome["sum_transcendental"] else ""


def _conclusions(outcome: Dict[str, bool], pair: bool) -> List[str]:
    out: List[str] = []
    if not outcome["distinct"]:
        return ["no conclusion: the degrees are not pairwise different"]
    if outcome["sum_transcendental"]:
        out.append("sum and quotient transcendental" if pair else "sum transcendental")
    else:
        out.append("no transcendence conclusion: some degree is at most 1")
    if outcome["linearly_independent"]:
        out.append("linearly independent over the algebraic numbers")
    return out


def transcendence_report_many(witnesses: Sequence[PeriodWitness],
                              asserted_exact: Optional[Sequence[int]] = None) -> TranscendenceReport:
    bounds = [w.bound_ledger.value for w in witnesses]
    if asserted_exact is not None:
        if len(asserted_exact) != len(witnesses):
            raise BuiltinParameterError("One asserted degree per witness is required",
                                        witnesses=len(witnesses), degrees=len(asserted_exact))
        degrees = [int(d) for d in asserted_exact]
        outcome = different_degree_criterion(degrees)
        return TranscendenceReport(
            signatures=[str(w) for w in witnesses],
            bounds=bounds,
            asserted_degrees=degrees,
            conditional=False,
            conclusions=_conclusions(outcome, len(degrees) == 2),
            note=e_plus_pi_observation(),
        )
    finite = [int(b) for b in bounds if not math.isinf(b)]
    outcome = different_degree_criterion(finite) if len(finite) == len(bounds) else {"distinct": False}
    statements = ["bounds are not exact degrees; nothing is concluded unconditionally"]
    if outcome.get("distinct"):
        statements.extend(f"if the exact degrees equal the bounds {bounds}: {c}"
                          for c in _conclusions(outcome, len(bounds) == 2))
    return TranscendenceReport(
        signatures=[str(w) for w in witnesses],
        bounds=bounds,
        asserted_degrees=None,
        conditional=True,
        conclusions=statements,
        note=e_plus_pi_observation(),
    )


def transcendence_report(w1: PeriodWitness, w2: PeriodWitness,
                         asserted_exact: Optional[Tuple[int, int]] = None) -> TranscendenceReport:
    return transcendence_report_many([w1, w2], asserted_exact)


# -- expressions ----------------------------------------------------------------

def build_witness(node: expr.Expr) -> PeriodWitness:
    """Evaluate an expression tree into a witness."""
    if isinstance(node, expr.Literal):
        return make_algebraic(node.value)
    if isinstance(node, expr.Name):
        return builtin(node.name, node.params)
    if isinstance(node, expr.Add):
        return add(build_witness(node.left), build_witness(node.right))
    if isinstance(node, expr.Mul):
        return mul(build_witness(node.left), build_witness(node.right))
    if isinstance(node, expr.Neg):
        return negate(build_witness(node.operand))
    if isinstance(node, expr.Scale):
        return scale((node.re, node.im), build_witness(node.operand))
    if isinstance(node, expr.Pow):
        return power(build_witness(node.base), node.exponent)
    raise TypeError(f"Not an expression node: {node!r}")
