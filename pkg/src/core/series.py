"""Truncated and rational Poincare series.

``SeriesTruncation`` holds exact per-grade dimensions. ``RationalSeries``
holds a rational function N(t)/D(t) with integer coefficients, kept in
lowest terms by sympy, and expands it exactly with integer arithmetic.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple, Union

import sympy as sp

T = sp.Symbol("t")

HOMOLOGICAL = "homological"
X_GRADING = "x_grading"
FORM = "form"


@dataclass(frozen=True)
class SeriesTruncation:
    """Dimensions of a graded space for grades offset..max_grade.

    Attributes:
        coefficients: dim at grade offset + k for k = 0, 1, ...
        offset: Grade of the first coefficient
        convention: Grading the grades refer to
    """

    coefficients: Tuple[int, ...]
    offset: int = 0
    convention: str = HOMOLOGICAL

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))
        if any(c < 0 for c in self.coefficients):
            raise ValueError(f"Negative dimension in {self.coefficients}")

    @classmethod
    def from_mapping(cls, dims: Mapping[int, int], convention: str = HOMOLOGICAL) -> "SeriesTruncation":
        if not dims:
            return cls((), 0, convention)
        low, high = min(dims), max(dims)
        return cls(tuple(dims.get(g, 0) for g in range(low, high + 1)), low, convention)

    @property
    def max_grade(self) -> int:
        return self.offset + len(self.coefficients) - 1

    def grades(self) -> range:
        return range(self.offset, self.max_grade + 1)

    def at(self, grade: int) -> int:
        index = grade - self.offset
        if 0 <= index < len(self.coefficients):
            return self.coefficients[index]
        return 0

    def __len__(self) -> int:
        return len(self.coefficients)

    def __iter__(self):
        return iter(self.coefficients)

    def as_dict(self) -> Dict[int, int]:
        return {g: self.at(g) for g in self.grades()}

    def to_list(self) -> List[int]:
        return list(self.coefficients)


class RationalSeries:
    """Rational function in t with integer coefficients.

    Args:
        expr: sympy expression in ``T`` (or anything sympify accepts)

    Example:
        >>> s = RationalSeries((1 + 2*T - T**2) / ((1 - T**2) * (1 - T)))
        >>> s.expand(7)
        [1, 3, 3, 5, 5, 7, 7]
    """

    def __init__(self, expr: Union[sp.Expr, int]):
        expr = sp.cancel(sp.together(sp.sympify(expr)))
        numerator, denominator = sp.fraction(expr)
        self.numerator = sp.Poly(numerator, T)
        self.denominator = sp.Poly(denominator, T)
        if self.denominator.is_zero:
            raise ZeroDivisionError("Series denominator is zero")

    @classmethod
    def from_parts(cls, numerator: sp.Expr, denominator: sp.Expr) -> "RationalSeries":
        return cls(numerator / denominator)

    @property
    def expr(self) -> sp.Expr:
        return self.numerator.as_expr() / self.denominator.as_expr()

    def is_zero(self) -> bool:
        return self.numerator.is_zero

    def _laurent_parts(self) -> Tuple[List[Fraction], List[Fraction], int]:
        """Ascending coefficient lists of N and D/t^m with D(0) != 0, and m."""
        num = [Fraction(int(c)) for c in reversed(self.numerator.all_coeffs())]
        den = [Fraction(int(c)) for c in reversed(self.denominator.all_coeffs())]
        shift = 0
        while den and den[0] == 0:
            den.pop(0)
            shift += 1
        return num, den, shift

    def coefficients(self, start: int, stop: int) -> List[int]:
        """Exact coefficients of t^start .. t^(stop-1)."""
        num, den, shift = self._laurent_parts()
        count = stop + shift
        values: List[Fraction] = []
        for k in range(max(count, 0)):
            acc = num[k] if k < len(num) else Fraction(0)
            for j in range(1, min(k, len(den) - 1) + 1):
                acc -= den[j] * values[k - j]
            values.append(acc / den[0])
        result = []
        for power in range(start, stop):
            index = power + shift
            value = values[index] if 0 <= index < len(values) else Fraction(0)
            if value.denominator != 1:
                raise ValueError(f"Non-integral coefficient {value} at t^{power}")
            result.append(int(value))
        return result

    def expand(self, n_terms: int, start: int = 0) -> List[int]:
        return self.coefficients(start, start + n_terms)

    def matches(self, truncation: SeriesTruncation) -> bool:
        """True when the expansion agrees with every stored coefficient."""
        if not len(truncation):
            return True
        return self.coefficients(truncation.offset, truncation.max_grade + 1) == truncation.to_list()

    def __add__(self, other: "RationalSeries") -> "RationalSeries":
        return RationalSeries(self.expr + _as_expr(other))

    def __sub__(self, other: "RationalSeries") -> "RationalSeries":
        return RationalSeries(self.expr - _as_expr(other))

    def __mul__(self, other: Union["RationalSeries", sp.Expr, int]) -> "RationalSeries":
        return RationalSeries(self.expr * _as_expr(other))

    __rmul__ = __mul__

    def __neg__(self) -> "RationalSeries":
        return RationalSeries(-self.expr)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalSeries):
            return NotImplemented
        return (self.numerator * other.denominator - other.numerator * self.denominator).is_zero

    def __hash__(self) -> int:
        return hash(str(self))

    def __str__(self) -> str:
        numerator = sp.factor(self.numerator.as_expr())
        denominator = sp.factor(self.denominator.as_expr())
        if denominator == 1:
            return sp.sstr(numerator)
        return f"({sp.sstr(numerator)})/({sp.sstr(denominator)})"

    def __repr__(self) -> str:
        return f"RationalSeries({self})"


def _as_expr(value: Union[RationalSeries, sp.Expr, int]) -> sp.Expr:
    return value.expr if isinstance(value, RationalSeries) else sp.sympify(value)


def ring_series(weights: Sequence[int]) -> RationalSeries:
    """Hilbert series prod 1/(1 - t^w) of a weighted polynomial ring."""
    return RationalSeries(sp.Mul(*[1 / (1 - T ** w) for w in weights]))


def elementary_symmetric(k: int, values: Sequence[sp.Expr]) -> sp.Expr:
    return sp.Add(*[sp.Mul(*combo) for combo in combinations(values, k)])


def monomial_power(exponent: int) -> sp.Expr:
    return T ** exponent


def alternating_sum(series: Iterable[SeriesTruncation]) -> Dict[int, int]:
    """sum_i (-1)^i series_i, grade by grade (may be negative)."""
    totals: Dict[int, int] = {}
    for i, truncation in enumerate(series):
        sign = -1 if i % 2 else 1
        for grade in truncation.grades():
            totals[grade] = totals.get(grade, 0) + sign * truncation.at(grade)
    return totals
