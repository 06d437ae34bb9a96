"""Generalized Jacobian Poisson structures on K[x, y, z].

The bracket is {f, g} = lambda * det(grad f, grad g, grad P). This module
holds the validated structure and every map built from it: the bracket,
Hamiltonian and modular fields, and the Poisson boundary, Poisson
coboundary, de Rham and Koszul complexes in vector notation.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Tuple, Union

from .poly import ArityError, Polynomial, WeightSystem, monomials_up_to_degree, weight_degree
from .singularity import (
    NON_ISOLATED,
    MilnorNumber,
    RegularSequenceVerdict,
    milnor_number,
    regular_sequence_check,
)
from .vector_calculus import VectorField, cross, curl, div, dot, grad
from ..utils.config import DEFAULT_ISOLATION_WINDOW, DEFAULT_MODULAR_CHECK_DEGREE, DEFAULT_REGULARITY_BOUND
from ..utils.logger import get_logger

logger = get_logger(__name__)

SECTION5 = "section5"
SECTION6 = "section6"
GENERAL = "general"
MODES = (SECTION5, SECTION6, GENERAL)

Cochain = Union[Polynomial, VectorField]


class HypothesisError(ValueError):
    """Raised when a structure violates a hypothesis of its mode.

    Attributes:
        check: Name of the failing check (e.g. ``isolated_singularity``)
    """

    def __init__(self, check: str, message: str):
        super().__init__(f"{check}: {message}")
        self.check = check


@dataclass(frozen=True)
class Hypothesis:
    """Outcome of one structural check."""

    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class PlanarData:
    """Splitting P = P~ + (c/(r+2)) z^(r+2) of a planar-type Casimir.

    Attributes:
        casimir: P~ as a polynomial of B = K[x, y]
        weights: Planar weights (w_1/a, w_2/a) with a = gcd(w_1, w_2)
        alpha: a
        r: Exponent offset, z^(r+2) is the pure z term
        c: Coefficient so that the pure z term is (c/(r+2)) z^(r+2)
    """

    casimir: Polynomial
    weights: WeightSystem
    alpha: int
    r: int
    c: Fraction

    @property
    def z_exponent(self) -> int:
        return self.r + 2


@dataclass(frozen=True)
class ModularField:
    """Vector field representing the modular class for dx^dy^dz."""

    field: VectorField
    volume_form: str = "dx^dy^dz"

    def is_zero(self) -> bool:
        return self.field.is_zero()


@dataclass(frozen=True)
class GjpsStructure:
    """Validated pair (lambda, P) with its weights and hypothesis verdicts.

    Build instances with :meth:`GjpsStructure.build`, which runs the checks
    required by ``mode``.
    """

    lam: Polynomial
    casimir: Polynomial
    weights: WeightSystem
    mode: str
    lambda_degree: int
    casimir_degree: int
    milnor: MilnorNumber
    regular_sequence: RegularSequenceVerdict
    hypotheses: Tuple[Hypothesis, ...]
    planar: Optional[PlanarData] = None

    @classmethod
    def build(
        cls,
        lam: Polynomial,
        casimir: Polynomial,
        weights: WeightSystem,
        mode: str = SECTION5,
        regularity_bound: int = DEFAULT_REGULARITY_BOUND,
        isolation_window: int = DEFAULT_ISOLATION_WINDOW,
    ) -> "GjpsStructure":
        """Validate (lambda, P) and build the structure.

        Args:
            lam: The factor lambda
            casimir: The Casimir P
            weights: Weights of x, y, z
            mode: ``section5``, ``section6`` or ``general``
            regularity_bound: Largest grade of the regular-sequence check
            isolation_window: Grades past the socle cutoff that must vanish

        Returns:
            GjpsStructure

        Raises:
            ArityError: If inputs are not in 3 variables
            HypothesisError: If a check required by the mode fails
        """
        if mode not in MODES:
            raise ValueError(f"Unknown mode {mode!r}, expected one of {MODES}")
        if lam.nvars != 3 or casimir.nvars != 3 or weights.nvars != 3:
            raise ArityError("GJPS structures live in 3 variables")
        strict = mode != GENERAL
        verdicts = []

        if lam.is_zero() or casimir.is_zero():
            raise HypothesisError("nonzero", "lambda and P must be nonzero")
        verdicts.append(Hypothesis("nonzero", True))

        lam_degree = weight_degree(lam, weights)
        p_degree = weight_degree(casimir, weights)
        if not lam_degree.homogeneous:
            raise HypothesisError("homogeneity", f"lambda = {lam} is not weight homogeneous for {weights}")
        if not p_degree.homogeneous:
            raise HypothesisError("homogeneity", f"P = {casimir} is not weight homogeneous for {weights}")
        verdicts.append(Hypothesis("homogeneity", True, f"w(lambda)={lam_degree.degree}, w(P)={p_degree.degree}"))

        planar = None
        if mode == SECTION6:
            if lam != Polynomial.variable(2):
                raise HypothesisError("lambda_is_z", f"section6 mode requires lambda = z, got {lam}")
            verdicts.append(Hypothesis("lambda_is_z", True))
            planar = split_casimir(casimir, weights)
            verdicts.append(Hypothesis("casimir_split", True, f"r={planar.r}, c={planar.c}"))

        milnor = milnor_number(casimir, weights, window=isolation_window)
        isolated = milnor != NON_ISOLATED
        if strict and not isolated:
            raise HypothesisError("isolated_singularity", f"P = {casimir} does not have an isolated singularity")
        verdicts.append(Hypothesis("isolated_singularity", isolated, f"milnor={milnor}"))

        if planar is not None:
            planar_milnor = milnor_number(planar.casimir, planar.weights, window=isolation_window)
            if planar_milnor == NON_ISOLATED:
                raise HypothesisError("isolated_singularity", f"P~ = {planar.casimir} is not an isolated singularity")
            verdicts.append(Hypothesis("planar_isolated_singularity", True, f"milnor={planar_milnor}"))

        regular = regular_sequence_check(lam, casimir, weights, regularity_bound)
        if strict and not regular.passed:
            raise HypothesisError("regular_sequence", regular.reason)
        verdicts.append(Hypothesis("regular_sequence", regular.passed, regular.reason or f"bound={regularity_bound}"))

        structure = cls(
            lam=lam,
            casimir=casimir,
            weights=weights,
            mode=mode,
            lambda_degree=int(lam_degree.degree),  # type: ignore[arg-type]
            casimir_degree=int(p_degree.degree),  # type: ignore[arg-type]
            milnor=milnor,
            regular_sequence=regular,
            hypotheses=tuple(verdicts),
            planar=planar,
        )
        logger.info(f"Built {mode} structure lambda={lam}, P={casimir}, weights={weights}")
        return structure

    @property
    def bivector_weight(self) -> int:
        """w(lambda) + w(P) - |w|, the degree of every boundary and coboundary map."""
        return self.lambda_degree + self.casimir_degree - self.weights.total

    @property
    def nominal_shift(self) -> int:
        return self.lambda_degree + self.casimir_degree

    @property
    def planar_casimir(self) -> Optional[Polynomial]:
        """P~ inside A, or None outside section6 mode."""
        return self.planar.casimir.embed(3) if self.planar else None

    @property
    def z_exponent(self) -> Optional[int]:
        return self.planar.z_exponent if self.planar else None

    @property
    def z_coefficient(self) -> Optional[Fraction]:
        return self.planar.c if self.planar else None

    @property
    def normalized_casimir(self) -> Polynomial:
        """P / c, whose pure z term has coefficient 1/(r+2)."""
        if self.planar is None:
            return self.casimir
        return self.casimir.scale(1 / self.planar.c)

    @property
    def casimir_gradient(self) -> VectorField:
        return grad(self.casimir)

    def hypothesis(self, name: str) -> Optional[Hypothesis]:
        return next((h for h in self.hypotheses if h.name == name), None)

    def describe(self) -> str:
        return f"lambda={self.lam}, P={self.casimir}, weights={self.weights}, mode={self.mode}"


def split_casimir(casimir: Polynomial, weights: WeightSystem) -> PlanarData:
    """Split P into a z-free part plus a single pure power of z.

    Raises:
        HypothesisError: ``casimir_split`` when P has other z-dependent terms
    """
    z_terms = {e: c for e, c in casimir.items() if e[2]}
    if len(z_terms) != 1:
        raise HypothesisError("casimir_split", f"P = {casimir} must contain exactly one z-dependent term")
    (exponent, coeff), = z_terms.items()
    if exponent[0] or exponent[1] or exponent[2] < 2:
        raise HypothesisError("casimir_split", f"z-dependent term of P must be a pure power z^k with k >= 2, got {exponent}")
    planar_part = casimir - Polynomial.monomial(exponent, coeff)
    if planar_part.is_zero():
        raise HypothesisError("casimir_split", "P~ must be nonzero")
    r = exponent[2] - 2
    alpha = gcd(weights.weights[0], weights.weights[1])
    return PlanarData(
        casimir=planar_part.drop_last_variable(),
        weights=WeightSystem(weights.weights[:2]),
        alpha=alpha,
        r=r,
        c=coeff * (r + 2),
    )


# ----------------------------------------------------------------------
# Bracket and distinguished fields
# ----------------------------------------------------------------------

def bracket(f: Polynomial, g: Polynomial, s: GjpsStructure) -> Polynomial:
    """{f, g} = lambda * grad f . (grad g x grad P)."""
    return s.lam * dot(grad(f), cross(grad(g), s.casimir_gradient))


def hamiltonian_field(f: Polynomial, s: GjpsStructure) -> VectorField:
    """X_f = -lambda grad f x grad P, so that X_f . grad g = {f, g}."""
    return -(cross(grad(f), s.casimir_gradient) * s.lam)


def modular_field(s: GjpsStructure) -> ModularField:
    return ModularField(cross(grad(s.lam), s.casimir_gradient))


def confirm_modular_field(s: GjpsStructure, max_degree: int = DEFAULT_MODULAR_CHECK_DEGREE) -> bool:
    """Check div(X_f) = M . grad f for every monomial f up to ``max_degree``."""
    field = modular_field(s).field
    for f in monomials_up_to_degree(max_degree):
        if div(hamiltonian_field(f, s)) != dot(field, grad(f)):
            logger.warning(f"Divergence identity fails for f={f} on {s.describe()}")
            return False
    return True


# ----------------------------------------------------------------------
# Complexes
# ----------------------------------------------------------------------

def _expect_polynomial(value: Cochain, where: str) -> Polynomial:
    if not isinstance(value, Polynomial) or value.nvars != 3:
        raise ArityError(f"{where} expects a polynomial in 3 variables")
    return value


def _expect_field(value: Cochain, where: str) -> VectorField:
    if not isinstance(value, VectorField) or len(value) != 3 or value.nvars != 3:
        raise ArityError(f"{where} expects a 3-component vector field")
    return value


def poisson_boundary(k: int, value: Cochain, s: GjpsStructure) -> Cochain:
    """Poisson boundary d_k : Omega^k -> Omega^(k-1) in vector notation."""
    grad_p = s.casimir_gradient
    if k == 1:
        h = _expect_field(value, "boundary_1")
        return -(s.lam * dot(curl(h), grad_p))
    if k == 2:
        g = _expect_field(value, "boundary_2")
        return grad_p * (s.lam * div(g)) - grad(s.lam * dot(g, grad_p))
    if k == 3:
        u = _expect_polynomial(value, "boundary_3")
        return -cross(grad(s.lam * u), grad_p)
    raise ValueError(f"Boundary index must be 1, 2 or 3, got {k}")


def poisson_coboundary(k: int, value: Cochain, s: GjpsStructure) -> Cochain:
    """Poisson coboundary delta^k : X^k -> X^(k+1) in vector notation."""
    grad_p = s.casimir_gradient
    grad_lam = grad(s.lam)
    if k == 0:
        f = _expect_polynomial(value, "coboundary_0")
        return -(cross(grad(f), grad_p) * s.lam)
    if k == 1:
        field = _expect_field(value, "coboundary_1")
        coefficient = s.lam * div(field) - dot(field, grad_lam)
        return grad_p * coefficient - grad(dot(field, grad_p)) * s.lam
    if k == 2:
        g = _expect_field(value, "coboundary_2")
        return -(s.lam * dot(grad_p, curl(g))) - dot(g, cross(grad_lam, grad_p))
    raise ValueError(f"Coboundary index must be 0, 1 or 2, got {k}")


def de_rham(k: int, value: Cochain) -> Cochain:
    if k == 0:
        return grad(_expect_polynomial(value, "de_rham_0"))
    if k == 1:
        return curl(_expect_field(value, "de_rham_1"))
    if k == 2:
        return div(_expect_field(value, "de_rham_2"))
    raise ValueError(f"de Rham index must be 0, 1 or 2, got {k}")


def koszul(k: int, value: Cochain, P: Polynomial) -> Cochain:
    """Koszul differential of the partial derivatives of P."""
    grad_p = grad(P)
    if k == 0:
        return grad_p * _expect_polynomial(value, "koszul_0")
    if k == 1:
        return cross(_expect_field(value, "koszul_1"), grad_p)
    if k == 2:
        return dot(_expect_field(value, "koszul_2"), grad_p)
    raise ValueError(f"Koszul index must be 0, 1 or 2, got {k}")
