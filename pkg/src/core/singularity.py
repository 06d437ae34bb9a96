"""Jacobian quotients, Milnor numbers and the regular-sequence check.

Everything here is graded: an ideal generated by weight-homogeneous
polynomials is handled one slice at a time, with one elimination per
grade. Reduced representatives are the standard monomials of the slice,
i.e. the smallest monomials in graded-lex order that survive elimination.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

from .elimination import RowSpace, matrix_rank
from .poly import (
    Exponent,
    Polynomial,
    WeightSystem,
    monomial_basis,
    weight_degree,
)
from ..utils.config import DEFAULT_ISOLATION_WINDOW
from ..utils.logger import get_logger

logger = get_logger(__name__)

NON_ISOLATED = "NON_ISOLATED"
MilnorNumber = Union[int, str]


class NonIsolatedSingularityError(ValueError):
    """Raised when a finite singularity basis is requested for a non-isolated P."""


@dataclass(frozen=True)
class SingularityRing:
    """Monomial description of a graded quotient A/I.

    Attributes:
        source: Polynomial whose Jacobian ideal (or other ideal) is quotiented
        weights: Grading of the ambient ring
        quotient_dims: dim (A/I)_d for d = 0, 1, ..., up to the cutoff
        basis: Reduced monomial representatives, by grade then graded-lex
        milnor: Total dimension, or NON_ISOLATED
    """

    source: Polynomial
    weights: WeightSystem
    quotient_dims: Tuple[int, ...]
    basis: Tuple[Exponent, ...]
    milnor: MilnorNumber

    @property
    def is_isolated(self) -> bool:
        return self.milnor != NON_ISOLATED

    def basis_polynomials(self) -> List[Polynomial]:
        return [Polynomial.monomial(m) for m in self.basis]


@dataclass(frozen=True)
class RegularSequenceVerdict:
    """Bounded verification that (lambda, P) is a regular sequence.

    Attributes:
        passed: True when every checked grade passed
        bound: Largest grade checked
        failing_grade: First grade where multiplication by lambda is not injective
        reason: Human-readable explanation for a failure
    """

    passed: bool
    bound: int
    failing_grade: Optional[int] = None
    reason: str = ""


def _homogeneous_generators(generators: Sequence[Polynomial], w: WeightSystem) -> List[Tuple[Polynomial, int]]:
    result = []
    for g in generators:
        if g.is_zero():
            continue
        degree = weight_degree(g, w)
        if not degree.homogeneous:
            raise ValueError(f"Ideal generator {g} is not weight homogeneous")
        result.append((g, int(degree.degree)))  # type: ignore[arg-type]
    return result


def ideal_slice(generators: Sequence[Polynomial], w: WeightSystem, grade: int) -> RowSpace:
    """Span of I_d inside A_d as an echelon row space over ``monomial_basis(d)``."""
    basis = monomial_basis(grade, w)
    vectors = []
    for g, degree in _homogeneous_generators(generators, w):
        for m in monomial_basis(grade - degree, w):
            vectors.append(basis.coordinates(Polynomial.monomial(m) * g))
    return RowSpace(vectors, len(basis))


def quotient_basis(generators: Sequence[Polynomial], w: WeightSystem, grade: int) -> List[Exponent]:
    """Standard monomials of (A/I)_d, smallest first in graded-lex order."""
    basis = monomial_basis(grade, w)
    pivots = set(ideal_slice(generators, w, grade).pivot_columns)
    survivors = [m for i, m in enumerate(basis.monomials) if i not in pivots]
    return list(reversed(survivors))


def jacobian_ideal(P: Polynomial) -> List[Polynomial]:
    return [P.derivative(i) for i in range(P.nvars)]


def jacobian_quotient_dims(P: Polynomial, w: WeightSystem, bound: int) -> List[int]:
    """dim of A_d modulo the Jacobian ideal of P, for d = 0..bound."""
    generators = jacobian_ideal(P)
    return [len(quotient_basis(generators, w, d)) for d in range(bound + 1)]


def socle_cutoff(P: Polynomial, w: WeightSystem) -> int:
    """One past the socle degree n*w(P) - 2|w| of a quasi-homogeneous singularity."""
    degree = weight_degree(P, w).degree
    if not isinstance(degree, int):
        return 0
    return P.nvars * degree - 2 * w.total + 1


def singularity_ring(
    P: Polynomial,
    w: WeightSystem,
    generators: Optional[Sequence[Polynomial]] = None,
    cutoff: Optional[int] = None,
    window: int = DEFAULT_ISOLATION_WINDOW,
) -> SingularityRing:
    """Quotient of A by the Jacobian ideal of P (or by ``generators``).

    Args:
        P: Weight-homogeneous polynomial
        w: Weights of its variables
        generators: Ideal generators; defaults to the partial derivatives of P
        cutoff: First grade expected to vanish; defaults to the socle cutoff
        window: Number of grades from the cutoff on that must vanish

    Returns:
        SingularityRing with per-grade dimensions, representatives and total
    """
    gens = list(generators) if generators is not None else jacobian_ideal(P)
    limit = socle_cutoff(P, w) if cutoff is None else cutoff
    window = max(window, max(w.weights))

    dims: List[int] = []
    basis: List[Exponent] = []
    for d in range(max(limit, 0)):
        surviving = quotient_basis(gens, w, d)
        dims.append(len(surviving))
        basis.extend(surviving)

    start = max(limit, 0)
    tail = [len(quotient_basis(gens, w, d)) for d in range(start, start + window)]
    milnor: MilnorNumber = NON_ISOLATED if any(tail) else sum(dims)
    if milnor == NON_ISOLATED:
        logger.info(f"Quotient by ideal of {P} does not vanish past grade {limit}: {tail}")
    return SingularityRing(P, w, tuple(dims), tuple(basis), milnor)


def milnor_number(P: Polynomial, w: WeightSystem, window: int = DEFAULT_ISOLATION_WINDOW) -> MilnorNumber:
    """Milnor number of a weight-homogeneous P, or NON_ISOLATED.

    Example:
        >>> milnor_number(parse_polynomial("x*y + 1/2*z^2"), WeightSystem((1, 1, 1)))
        1
    """
    if P.is_zero():
        return NON_ISOLATED
    return singularity_ring(P, w, window=window).milnor


def sing_basis(P: Polynomial, w: WeightSystem, window: int = DEFAULT_ISOLATION_WINDOW) -> List[Exponent]:
    """Reduced monomial basis of A_sing(P).

    Raises:
        NonIsolatedSingularityError: If the quotient is not finite dimensional
    """
    ring = singularity_ring(P, w, window=window)
    if not ring.is_isolated:
        raise NonIsolatedSingularityError(f"{P} does not have an isolated singularity")
    return list(ring.basis)


def regular_sequence_check(lam: Polynomial, P: Polynomial, w: WeightSystem, bound: int) -> RegularSequenceVerdict:
    """Check that lambda is not a zero divisor in A/(P), grade by grade.

    For each d, the pairs (F, G) with lambda*F = P*G, F in A_d, form a space
    whose projection to F is injective; lambda is injective on (A/(P))_d
    exactly when that space has the dimension of P*A_{d-w(P)}.

    Args:
        lam: First element of the sequence
        P: Second element of the sequence
        w: Weights
        bound: Largest grade d checked

    Returns:
        RegularSequenceVerdict
    """
    if lam.is_zero() or P.is_zero():
        return RegularSequenceVerdict(False, bound, 0, "zero element in the sequence")
    lam_degree = weight_degree(lam, w)
    p_degree = weight_degree(P, w)
    if not (lam_degree.homogeneous and p_degree.homogeneous):
        return RegularSequenceVerdict(False, bound, None, "elements are not weight homogeneous")
    dl = int(lam_degree.degree)  # type: ignore[arg-type]
    dp = int(p_degree.degree)  # type: ignore[arg-type]
    if dl == 0 or dp == 0:
        return RegularSequenceVerdict(False, bound, 0, "(lambda, P) is the unit ideal")

    for d in range(bound + 1):
        target = monomial_basis(d + dl, w)
        vectors = [target.coordinates(Polynomial.monomial(m) * lam) for m in monomial_basis(d, w)]
        vectors += [target.coordinates(Polynomial.monomial(m) * P) for m in monomial_basis(d + dl - dp, w)]
        nullity = len(vectors) - matrix_rank(vectors, len(target))
        expected = len(monomial_basis(d - dp, w))
        if nullity != expected:
            logger.info(f"Regular sequence check failed at grade {d}: nullity {nullity} != {expected}")
            return RegularSequenceVerdict(
                False, bound, d, f"lambda is a zero divisor modulo P at grade {d}"
            )
    return RegularSequenceVerdict(True, bound)
