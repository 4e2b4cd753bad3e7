"""
Semi-algebraic data model: sparse polynomials with exact rational
coefficients, inequalities p >= 0, bounding boxes, cells and domains.

All values are immutable once built.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple

import numpy as np

from .core.exceptions import DimensionMismatchError, OutOfRangeError
from .utils.exactnum import RationalLike, format_rational

Exponent = Tuple[int, ...]


class Polynomial:
    """Sparse multivariate polynomial over Q in ``nvars`` variables x0..x{n-1}."""

    __slots__ = ("nvars", "_terms", "_compiled")

    def __init__(self, nvars: int, terms: Mapping[Exponent, RationalLike] | None = None):
        if nvars < 0:
            raise OutOfRangeError("Polynomial needs a non-negative variable count", nvars=nvars)
        clean: Dict[Exponent, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise DimensionMismatchError(
                    "Exponent vector length differs from variable count",
                    expected=nvars, got=len(exps),
                )
            if any(e < 0 for e in exps):
                raise OutOfRangeError("Negative exponent", exponents=exps)
            c = clean.get(exps, Fraction(0)) + Fraction(coeff)
            if c == 0:
                clean.pop(exps, None)
            else:
                clean[exps] = c
        self.nvars = nvars
        self._terms = clean
        self._compiled = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c: RationalLike) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, axis: int) -> "Polynomial":
        if not 0 <= axis < nvars:
            raise DimensionMismatchError("Variable index out of range", axis=axis, nvars=nvars)
        exps = [0] * nvars
        exps[axis] = 1
        return cls(nvars, {tuple(exps): 1})

    @classmethod
    def from_coefficients(cls, coeffs: Sequence[RationalLike]) -> "Polynomial":
        """Univariate polynomial from coefficients, constant term first."""
        return cls(1, {(i,): c for i, c in enumerate(coeffs)})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, axis: int) -> int:
        return max((e[axis] for e in self._terms), default=-1)

    def coefficients(self) -> List[Fraction]:
        """Dense coefficients of a univariate polynomial, constant term first."""
        if self.nvars != 1:
            raise DimensionMismatchError("coefficients() needs a univariate polynomial", nvars=self.nvars)
        out = [Fraction(0)] * (self.degree() + 1)
        for (e,), c in self._terms.items():
            out[e] = c
        return out

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "Polynomial") -> None:
        if other.nvars != self.nvars:
            raise DimensionMismatchError("Polynomials live in different dimensions",
                                         left=self.nvars, right=other.nvars)

    def __add__(self, other: object) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        merged = dict(self._terms)
        for e, c in other._terms.items():
            merged[e] = merged.get(e, Fraction(0)) + c
        return Polynomial(self.nvars, merged)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: object) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: object) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other: object) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return Polynomial(self.nvars, {e: c * other for e, c in self._terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return Polynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, m: int) -> "Polynomial":
        if m < 0:
            raise OutOfRangeError("Negative polynomial power", power=m)
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while m:
            if m & 1:
                result = result * base
            base = base * base
            m >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self._terms.items())))

    # -- structural -------------------------------------------------------

    def embed(self, nvars: int, offset: int = 0) -> "Polynomial":
        """Re-index into ``nvars`` variables, x_i -> x_{i+offset}."""
        if offset < 0 or offset + self.nvars > nvars:
            raise DimensionMismatchError("Embedding does not fit", nvars=nvars, offset=offset)
        pad_left, pad_right = (0,) * offset, (0,) * (nvars - offset - self.nvars)
        return Polynomial(nvars, {pad_left + e + pad_right: c for e, c in self._terms.items()})

    def evaluate_array(self, points: np.ndarray) -> np.ndarray:
        """Double-precision values at the rows of an (N, nvars) array."""
        points = np.asarray(points, dtype=np.float64)
        if points.ndim != 2 or points.shape[1] != self.nvars:
            raise DimensionMismatchError("Sample array has the wrong shape",
                                         expected=self.nvars, got=list(points.shape))
        if self._compiled is None:
            exps = np.array(list(self._terms.keys()), dtype=np.int64).reshape(-1, self.nvars)
            coeffs = np.array([float(c) for c in self._terms.values()], dtype=np.float64)
            self._compiled = (exps, coeffs)
        exps, coeffs = self._compiled
        out = np.zeros(points.shape[0], dtype=np.float64)
        powers: Dict[Tuple[int, int], np.ndarray] = {}
        for row, c in zip(exps, coeffs):
            term = np.full(points.shape[0], c)
            for axis, e in enumerate(row):
                if e:
                    key = (axis, int(e))
                    if key not in powers:
                        powers[key] = points[:, axis] ** int(e)
                    term = term * powers[key]
            out += term
        return out

    def __repr__(self) -> str:
        return f"Polynomial({self.nvars}, {self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms, key=lambda x: (-sum(x), tuple(-v for v in x))):
            c = self._terms[e]
            mono = "*".join(f"x{i}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            if not mono:
                parts.append(format_rational(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{format_rational(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True)
class Inequality:
    """Canonical form ``poly >= 0``."""

    poly: Polynomial

    @classmethod
    def le(cls, lhs: Polynomial, rhs: Polynomial | RationalLike) -> "Inequality":
        """lhs <= rhs, stored as rhs - lhs >= 0."""
        return cls(-(lhs - rhs))

    @classmethod
    def ge(cls, lhs: Polynomial, rhs: Polynomial | RationalLike) -> "Inequality":
        return cls(lhs - rhs)

    @property
    def nvars(self) -> int:
        return self.poly.nvars


@dataclass(frozen=True)
class Box:
    intervals: Tuple[Tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        normalized = tuple((Fraction(lo), Fraction(hi)) for lo, hi in self.intervals)
        for axis, (lo, hi) in enumerate(normalized):
            if lo > hi:
                raise OutOfRangeError("Box interval has lo > hi", axis=axis,
                                      lo=format_rational(lo), hi=format_rational(hi))
        object.__setattr__(self, "intervals", normalized)

    @classmethod
    def of(cls, *intervals: Tuple[RationalLike, RationalLike]) -> "Box":
        return cls(tuple(intervals))

    @property
    def dim(self) -> int:
        return len(self.intervals)

    def volume(self) -> Fraction:
        v = Fraction(1)
        for lo, hi in self.intervals:
            v *= hi - lo
        return v

    def lows(self) -> np.ndarray:
        return np.array([float(lo) for lo, _ in self.intervals], dtype=np.float64)

    def widths(self) -> np.ndarray:
        return np.array([float(hi - lo) for lo, hi in self.intervals], dtype=np.float64)

    def contains_array(self, points: np.ndarray) -> np.ndarray:
        lo = self.lows()
        hi = np.array([float(h) for _, h in self.intervals], dtype=np.float64)
        return np.all((points >= lo) & (points <= hi), axis=1)

    def disjoint(self, other: "Box") -> bool:
        """Exact test: some shared axis has non-overlapping closed intervals."""
        return any(h1 < l2 or h2 < l1
                   for (l1, h1), (l2, h2) in zip(self.intervals, other.intervals))

    def __mul__(self, other: "Box") -> "Box":
        return Box(self.intervals + other.intervals)


@dataclass(frozen=True)
class Cell:
    dim: int
    constraints: Tuple[Inequality, ...]
    box: Box

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if self.box.dim != self.dim:
            raise DimensionMismatchError("Box dimension differs from cell dimension",
                                         expected=self.dim, got=self.box.dim)
        for ineq in self.constraints:
            if ineq.nvars != self.dim:
                raise DimensionMismatchError("Constraint dimension differs from cell dimension",
                                             expected=self.dim, got=ineq.nvars)

    @classmethod
    def build(cls, box: Box, *constraints: Polynomial) -> "Cell":
        """Cell {p >= 0 for p in constraints} inside ``box``."""
        return cls(box.dim, tuple(Inequality(p) for p in constraints), box)

    def without(self, index: int) -> "Cell":
        rest = self.constraints[:index] + self.constraints[index + 1:]
        return Cell(self.dim, rest, self.box)


@dataclass(frozen=True)
class Domain:
    """Finite multiset of cells whose volumes add."""

    cells: Tuple[Cell, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(self.cells))

    @classmethod
    def empty(cls) -> "Domain":
        return cls(())

    @classmethod
    def of(cls, *cells: Cell) -> "Domain":
        return cls(tuple(cells))

    def __add__(self, other: "Domain") -> "Domain":
        return Domain(self.cells + other.cells)

    def __iter__(self) -> Iterator[Cell]:
        return iter(self.cells)

    def __len__(self) -> int:
        return len(self.cells)

    def is_empty(self) -> bool:
        return not self.cells

    def max_dim(self) -> int:
        return max((c.dim for c in self.cells), default=0)

    @staticmethod
    def union(domains: Iterable["Domain"]) -> "Domain":
        cells: Tuple[Cell, ...] = ()
        for d in domains:
            cells += d.cells
        return Domain(cells)
