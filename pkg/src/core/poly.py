"""Sparse exact-rational polynomials with weighted grading.

Polynomials live in A = K[x, y, z] or B = K[x, y] with K = Q. A polynomial
is a map from exponent tuples to nonzero ``Fraction`` coefficients; values
are immutable once built.

Monomials are ordered graded-lexicographically with x > y > z. That order
drives slice bases, printing and the choice of reduced representatives.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd
from types import MappingProxyType
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction]

DEFAULT_VARIABLES: Dict[int, Tuple[str, ...]] = {
    2: ("x", "y"),
    3: ("x", "y", "z"),
}


class ArityError(ValueError):
    """Raised when operands live in rings with different variable sets."""


class InhomogeneousImageError(ValueError):
    """Raised when a polynomial has a term outside the expected graded slice."""


class _MinusInfinity:
    """Weighted degree of the zero polynomial; compares below every integer."""

    _instance: Optional["_MinusInfinity"] = None

    def __new__(cls) -> "_MinusInfinity":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other: object) -> bool:
        return other is not self

    def __le__(self, other: object) -> bool:
        return True

    def __gt__(self, other: object) -> bool:
        return False

    def __ge__(self, other: object) -> bool:
        return other is self

    def __repr__(self) -> str:
        return "-inf"

    def __reduce__(self):
        return (_MinusInfinity, ())


MINUS_INFINITY = _MinusInfinity()


def monomial_sort_key(exponent: Exponent) -> Tuple[int, Exponent]:
    """Graded-lex key; larger key means larger monomial (x > y > z)."""
    return (sum(exponent), exponent)


@dataclass(frozen=True)
class WeightSystem:
    """Positive integer weights of the variables, normalized to gcd 1.

    Attributes:
        weights: One weight per variable (2 or 3 of them)
    """

    weights: Tuple[int, ...]

    def __post_init__(self) -> None:
        weights = tuple(int(w) for w in self.weights)
        if len(weights) not in DEFAULT_VARIABLES:
            raise ValueError(f"Weights must have length 2 or 3, got {len(weights)}")
        if any(w < 1 for w in weights):
            raise ValueError(f"Every weight must be >= 1, got {weights}")
        divisor = reduce(gcd, weights)
        object.__setattr__(self, "weights", tuple(w // divisor for w in weights))

    @classmethod
    def standard(cls, nvars: int = 3) -> "WeightSystem":
        """All weights equal to one."""
        return cls((1,) * nvars)

    @property
    def nvars(self) -> int:
        return len(self.weights)

    @property
    def total(self) -> int:
        """|w|, the sum of the weights."""
        return sum(self.weights)

    def degree_of(self, exponent: Exponent) -> int:
        return sum(w * e for w, e in zip(self.weights, exponent))

    def euler_components(self) -> Tuple["Polynomial", ...]:
        """Components (w_1 x_1, ..., w_n x_n) of the Euler vector field."""
        return tuple(
            Polynomial.variable(i, self.nvars).scale(w)
            for i, w in enumerate(self.weights)
        )

    def __str__(self) -> str:
        return "(" + ", ".join(str(w) for w in self.weights) + ")"


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients.

    Args:
        terms: Mapping from exponent tuple to coefficient (int or Fraction)
        nvars: Number of variables (2 or 3)

    Raises:
        ArityError: If an exponent tuple has the wrong length
        ValueError: If an exponent is negative
        TypeError: If a coefficient is a float

    Example:
        >>> p = Polynomial({(1, 1, 0): 1, (0, 0, 2): Fraction(1, 2)})
        >>> str(p)
        'x*y + 1/2*z^2'
    """

    __slots__ = ("_terms", "_nvars", "_hash")

    def __init__(self, terms: Optional[Mapping[Sequence[int], Scalar]] = None, nvars: int = 3):
        cleaned: Dict[Exponent, Fraction] = {}
        for raw_exponent, raw_coeff in (terms or {}).items():
            exponent = tuple(int(e) for e in raw_exponent)
            if len(exponent) != nvars:
                raise ArityError(
                    f"Exponent {exponent} does not match {nvars} variables"
                )
            if any(e < 0 for e in exponent):
                raise ValueError(f"Negative exponent in {exponent}")
            if isinstance(raw_coeff, float):
                raise TypeError("Floating point coefficients are not allowed")
            coeff = cleaned.get(exponent, Fraction(0)) + Fraction(raw_coeff)
            if coeff:
                cleaned[exponent] = coeff
            else:
                cleaned.pop(exponent, None)
        self._terms = cleaned
        self._nvars = nvars
        self._hash: Optional[int] = None

    @classmethod
    def _trusted(cls, terms: Dict[Exponent, Fraction], nvars: int) -> "Polynomial":
        """Wrap an already-clean term dict without validation."""
        poly = cls.__new__(cls)
        poly._terms = terms
        poly._nvars = nvars
        poly._hash = None
        return poly

    def __reduce__(self):
        return (_rebuild_polynomial, (tuple(self._terms.items()), self._nvars))

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int = 3) -> "Polynomial":
        return cls._trusted({}, nvars)

    @classmethod
    def constant(cls, value: Scalar, nvars: int = 3) -> "Polynomial":
        value = Fraction(value)
        return cls._trusted({(0,) * nvars: value} if value else {}, nvars)

    @classmethod
    def one(cls, nvars: int = 3) -> "Polynomial":
        return cls.constant(1, nvars)

    @classmethod
    def variable(cls, index: int, nvars: int = 3) -> "Polynomial":
        if not 0 <= index < nvars:
            raise ArityError(f"Variable index {index} out of range for {nvars} variables")
        exponent = tuple(1 if i == index else 0 for i in range(nvars))
        return cls._trusted({exponent: Fraction(1)}, nvars)

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff: Scalar = 1) -> "Polynomial":
        return cls({tuple(exponent): coeff}, len(exponent))

    # ------------------------------------------------------------------
    # Accessors
    # ------------------------------------------------------------------

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return MappingProxyType(self._terms)

    def items(self) -> Iterable[Tuple[Exponent, Fraction]]:
        return self._terms.items()

    def coefficient(self, exponent: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exponent), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self._nvars, Fraction(0))

    def degree(self) -> int:
        """Standard total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def sorted_terms(self) -> List[Tuple[Exponent, Fraction]]:
        """Terms in decreasing graded-lex order."""
        return sorted(self._terms.items(), key=lambda t: monomial_sort_key(t[0]), reverse=True)

    def involves(self, index: int) -> bool:
        return any(e[index] for e in self._terms)

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def _coerce(self, other: object) -> Optional["Polynomial"]:
        if isinstance(other, Polynomial):
            if other._nvars != self._nvars:
                raise ArityError(
                    f"Cannot combine polynomials in {self._nvars} and {other._nvars} variables"
                )
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Polynomial.constant(other, self._nvars)
        return None

    def __add__(self, other: object) -> "Polynomial":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        result = dict(self._terms)
        for exponent, coeff in rhs._terms.items():
            total = result.get(exponent, 0) + coeff
            if total:
                result[exponent] = total
            else:
                result.pop(exponent, None)
        return Polynomial._trusted(result, self._nvars)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._trusted({e: -c for e, c in self._terms.items()}, self._nvars)

    def __sub__(self, other: object) -> "Polynomial":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> "Polynomial":
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs - self

    def __mul__(self, other: object) -> "Polynomial":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        result: Dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in rhs._terms.items():
                exponent = tuple(a + b for a, b in zip(e1, e2))
                result[exponent] = result.get(exponent, 0) + c1 * c2
        return Polynomial._trusted({e: c for e, c in result.items() if c}, self._nvars)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "Polynomial":
        """Division by a nonzero scalar only."""
        if isinstance(other, Polynomial):
            if not other.is_constant() or other.is_zero():
                raise ZeroDivisionError("Can only divide by a nonzero constant")
            other = other.constant_term()
        if not isinstance(other, (int, Fraction)) or isinstance(other, bool):
            return NotImplemented
        if other == 0:
            raise ZeroDivisionError("Division of a polynomial by zero")
        return self.scale(Fraction(1) / Fraction(other))

    def __pow__(self, exponent: int) -> "Polynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError(f"Exponent must be a non-negative integer, got {exponent!r}")
        result = Polynomial.one(self._nvars)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def scale(self, factor: Scalar) -> "Polynomial":
        factor = Fraction(factor)
        if not factor:
            return Polynomial.zero(self._nvars)
        return Polynomial._trusted({e: c * factor for e, c in self._terms.items()}, self._nvars)

    def derivative(self, index: int) -> "Polynomial":
        if not 0 <= index < self._nvars:
            raise ArityError(f"Variable index {index} out of range for {self._nvars} variables")
        result: Dict[Exponent, Fraction] = {}
        for exponent, coeff in self._terms.items():
            power = exponent[index]
            if power:
                lowered = exponent[:index] + (power - 1,) + exponent[index + 1:]
                result[lowered] = coeff * power
        return Polynomial._trusted(result, self._nvars)

    # ------------------------------------------------------------------
    # Change of ambient ring
    # ------------------------------------------------------------------

    def embed(self, nvars: int = 3) -> "Polynomial":
        """View a polynomial of B = K[x, y] inside A = K[x, y, z]."""
        if nvars < self._nvars:
            raise ArityError(f"Cannot embed {self._nvars} variables into {nvars}")
        pad = (0,) * (nvars - self._nvars)
        return Polynomial._trusted({e + pad: c for e, c in self._terms.items()}, nvars)

    def drop_last_variable(self) -> "Polynomial":
        """View a polynomial free of the last variable inside the smaller ring."""
        if self.involves(self._nvars - 1):
            raise ArityError("Polynomial depends on the variable being dropped")
        return Polynomial._trusted({e[:-1]: c for e, c in self._terms.items()}, self._nvars - 1)

    def split_by(self, index: int) -> Dict[int, "Polynomial"]:
        """Group terms by the power of one variable."""
        groups: Dict[int, Dict[Exponent, Fraction]] = {}
        for exponent, coeff in self._terms.items():
            groups.setdefault(exponent[index], {})[exponent] = coeff
        return {power: Polynomial._trusted(terms, self._nvars) for power, terms in groups.items()}

    def homogeneous_parts(self) -> Dict[int, "Polynomial"]:
        """Split into parts of equal standard degree."""
        groups: Dict[int, Dict[Exponent, Fraction]] = {}
        for exponent, coeff in self._terms.items():
            groups.setdefault(sum(exponent), {})[exponent] = coeff
        return {d: Polynomial._trusted(terms, self._nvars) for d, terms in groups.items()}

    # ------------------------------------------------------------------
    # Comparison and printing
    # ------------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self._nvars == other._nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._terms == Polynomial.constant(other, self._nvars)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._nvars, frozenset(self._terms.items())))
        return self._hash

    def to_string(self, variables: Optional[Sequence[str]] = None) -> str:
        """Canonical text form, parseable by ``parse_polynomial``."""
        names = tuple(variables or DEFAULT_VARIABLES[self._nvars])
        if not self._terms:
            return "0"
        pieces: List[str] = []
        for position, (exponent, coeff) in enumerate(self.sorted_terms()):
            factors = []
            for name, power in zip(names, exponent):
                if power == 1:
                    factors.append(name)
                elif power > 1:
                    factors.append(f"{name}^{power}")
            magnitude = abs(coeff)
            if not factors:
                body = str(magnitude)
            elif magnitude == 1:
                body = "*".join(factors)
            else:
                body = f"{magnitude}*" + "*".join(factors)
            if position == 0:
                pieces.append(f"-{body}" if coeff < 0 else body)
            else:
                pieces.append(f" - {body}" if coeff < 0 else f" + {body}")
        return "".join(pieces)

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"Polynomial('{self.to_string()}', nvars={self._nvars})"


def _rebuild_polynomial(items: Tuple[Tuple[Exponent, Fraction], ...], nvars: int) -> Polynomial:
    return Polynomial._trusted(dict(items), nvars)


@dataclass(frozen=True)
class WeightedDegree:
    """Result of ``weight_degree``.

    Attributes:
        degree: Largest weighted degree over the terms, MINUS_INFINITY for zero
        homogeneous: True when every term has that degree
    """

    degree: Union[int, _MinusInfinity]
    homogeneous: bool


@dataclass(frozen=True)
class GradedSliceBasis:
    """All monomials of one weighted degree, largest first.

    Attributes:
        grade: The weighted degree
        monomials: Exponent tuples in decreasing graded-lex order
    """

    grade: int
    monomials: Tuple[Exponent, ...]
    _index: Dict[Exponent, int] = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        self._index.update({m: i for i, m in enumerate(self.monomials)})

    def __len__(self) -> int:
        return len(self.monomials)

    def __iter__(self) -> Iterator[Exponent]:
        return iter(self.monomials)

    def position(self, exponent: Exponent) -> Optional[int]:
        return self._index.get(exponent)

    def coordinates(self, p: Polynomial, offset: int = 0) -> Dict[int, Fraction]:
        """Sparse coordinate vector of ``p`` in this basis, shifted by ``offset``.

        Raises:
            InhomogeneousImageError: If ``p`` has a monomial outside the slice
        """
        coords: Dict[int, Fraction] = {}
        for exponent, coeff in p.items():
            index = self._index.get(exponent)
            if index is None:
                raise InhomogeneousImageError(
                    f"Monomial {exponent} is not in the grade-{self.grade} slice"
                )
            coords[index + offset] = coeff
        return coords

    def polynomials(self) -> List[Polynomial]:
        return [Polynomial.monomial(m) for m in self.monomials]


def ring_arithmetic(op: str, *operands: Union[Polynomial, Scalar]) -> Polynomial:
    """Apply a named ring operation.

    Args:
        op: One of ``add``, ``mul`` or ``scale``
        *operands: Polynomials; for ``scale`` a scalar followed by a polynomial

    Returns:
        The exact result

    Raises:
        ArityError: If polynomial operands have different variable sets
        ValueError: If the operation name is unknown
    """
    if op == "scale":
        factor, poly = operands
        if not isinstance(poly, Polynomial):
            raise TypeError("scale expects (scalar, Polynomial)")
        return poly.scale(factor)  # type: ignore[arg-type]
    polys = [p for p in operands if isinstance(p, Polynomial)]
    if len(polys) != len(operands) or not polys:
        raise TypeError(f"{op} expects Polynomial operands")
    if op == "add":
        return reduce(lambda a, b: a + b, polys)
    if op == "mul":
        return reduce(lambda a, b: a * b, polys)
    raise ValueError(f"Unknown ring operation: {op}")


def partial_derivative(p: Polynomial, var: int) -> Polynomial:
    return p.derivative(var)


def weight_degree(p: Polynomial, w: WeightSystem) -> WeightedDegree:
    """Weighted degree of ``p`` and whether it is weight homogeneous.

    Args:
        p: Polynomial
        w: Weights for the variables of ``p``

    Returns:
        WeightedDegree; the zero polynomial is homogeneous of degree MINUS_INFINITY

    Raises:
        ArityError: If the weight system and polynomial disagree on arity
    """
    if w.nvars != p.nvars:
        raise ArityError(f"{w.nvars} weights for a polynomial in {p.nvars} variables")
    if p.is_zero():
        return WeightedDegree(MINUS_INFINITY, True)
    degrees = {w.degree_of(e) for e, _ in p.items()}
    return WeightedDegree(max(degrees), len(degrees) == 1)


def euler_operator(p: Polynomial, w: WeightSystem) -> Polynomial:
    """Apply the Euler derivation sum_i w_i x_i d/dx_i."""
    result = Polynomial.zero(p.nvars)
    for i, component in enumerate(w.euler_components()):
        result = result + component * p.derivative(i)
    return result


def _enumerate_exponents(grade: int, weights: Tuple[int, ...]) -> Iterator[Exponent]:
    if len(weights) == 1:
        if grade % weights[0] == 0:
            yield (grade // weights[0],)
        return
    head, rest = weights[0], weights[1:]
    for power in range(grade // head, -1, -1):
        for tail in _enumerate_exponents(grade - power * head, rest):
            yield (power,) + tail


@lru_cache(maxsize=4096)
def monomial_basis(grade: int, w: WeightSystem) -> GradedSliceBasis:
    """Complete sorted list of monomials of weighted degree ``grade``.

    Args:
        grade: Weighted degree (negative grades give an empty basis)
        w: Weight system

    Returns:
        GradedSliceBasis with monomials in decreasing graded-lex order

    Example:
        >>> monomial_basis(3, WeightSystem((3, 3, 2))).monomials
        ((1, 0, 0), (0, 1, 0))
    """
    if grade < 0:
        return GradedSliceBasis(grade, ())
    monomials = sorted(_enumerate_exponents(grade, w.weights), key=monomial_sort_key, reverse=True)
    return GradedSliceBasis(grade, tuple(monomials))


def slice_dimension(grade: int, w: WeightSystem) -> int:
    return len(monomial_basis(grade, w))


def monomials_up_to_degree(max_degree: int, nvars: int = 3) -> List[Polynomial]:
    """Every monomial of standard degree at most ``max_degree``."""
    standard = WeightSystem.standard(nvars)
    return [
        Polynomial.monomial(m)
        for d in range(max_degree + 1)
        for m in monomial_basis(d, standard)
    ]
