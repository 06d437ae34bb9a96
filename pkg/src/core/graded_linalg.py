"""Graded slices of the complexes as exact sparse matrices.

Every space of the four complexes is a product of graded pieces of A (or
B). At grade i the components of each space live in these pieces of A:

    Omega3, X0   A_i
    Omega2, X1   A_(i+w1)      x A_(i+w2)      x A_(i+w3)
    Omega1, X2   A_(i+w2+w3)   x A_(i+w1+w3)   x A_(i+w1+w2)
    Omega0, X3   A_(i+|w|)

and for B: PlanarB is B_i, PlanarB2 is B_(i+w1') x B_(i+w2'). The grade of
a form in this table is its form weight minus |w|.

Boundary and coboundary maps raise the grade by the weight of the bivector
w(lambda) + w(P) - |w|, de Rham maps by 0, Koszul maps by w(P). Every
image is asserted to land in the declared target slice.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .elimination import FractionFreeEliminator, transpose
from .poisson import Cochain, GjpsStructure, de_rham, koszul, poisson_boundary, poisson_coboundary
from .poly import (
    ArityError,
    Exponent,
    GradedSliceBasis,
    InhomogeneousImageError,
    Polynomial,
    WeightSystem,
    monomial_basis,
)
from .vector_calculus import VectorField
from ..utils.config import MAX_SUPPORTED_GRADE
from ..utils.logger import get_logger

logger = get_logger(__name__)

__all__ = [
    "SpaceKind",
    "ProductBasis",
    "GradedOperatorMatrix",
    "RankKernel",
    "ComplexMap",
    "COMPLEX_MAPS",
    "GradeLimitError",
    "InhomogeneousImageError",
    "slice_basis",
    "operator_matrix",
    "linear_map_matrix",
    "rank_kernel",
    "dump_matrix",
]


class GradeLimitError(ValueError):
    """Raised when a slice beyond the configured grade limit is requested."""


class SpaceKind(Enum):
    OMEGA0 = "Omega0"
    OMEGA1 = "Omega1"
    OMEGA2 = "Omega2"
    OMEGA3 = "Omega3"
    X0 = "X0"
    X1 = "X1"
    X2 = "X2"
    X3 = "X3"
    PLANAR_B = "PlanarB"
    PLANAR_B2 = "PlanarB2"

    @property
    def is_planar(self) -> bool:
        return self in (SpaceKind.PLANAR_B, SpaceKind.PLANAR_B2)

    @property
    def is_scalar(self) -> bool:
        return self in (SpaceKind.OMEGA0, SpaceKind.OMEGA3, SpaceKind.X0, SpaceKind.X3, SpaceKind.PLANAR_B)


def component_offsets(kind: SpaceKind, w: WeightSystem) -> Tuple[int, ...]:
    """Grade offsets of the component slices of ``kind``."""
    if kind.is_planar:
        if w.nvars != 2:
            raise ArityError(f"{kind.value} needs planar weights, got {w}")
        if kind is SpaceKind.PLANAR_B:
            return (0,)
        return w.weights
    if w.nvars != 3:
        raise ArityError(f"{kind.value} needs weights for 3 variables, got {w}")
    w1, w2, w3 = w.weights
    single = {
        SpaceKind.OMEGA3: 0,
        SpaceKind.X0: 0,
        SpaceKind.OMEGA0: w.total,
        SpaceKind.X3: w.total,
    }
    if kind in single:
        return (single[kind],)
    if kind in (SpaceKind.OMEGA2, SpaceKind.X1):
        return (w1, w2, w3)
    return (w2 + w3, w1 + w3, w1 + w2)


@dataclass(frozen=True)
class ProductBasis:
    """Ordered concatenation of monomial bases of the component slices.

    Attributes:
        kind: Space the basis spans
        grade: Grade in the table of this module
        components: One monomial basis per component
    """

    kind: SpaceKind
    grade: int
    components: Tuple[GradedSliceBasis, ...]
    _starts: Tuple[int, ...] = field(default=(), repr=False, compare=False)

    def __post_init__(self) -> None:
        starts = []
        position = 0
        for basis in self.components:
            starts.append(position)
            position += len(basis)
        object.__setattr__(self, "_starts", tuple(starts))

    @property
    def nvars(self) -> int:
        return 2 if self.kind.is_planar else 3

    def __len__(self) -> int:
        return sum(len(b) for b in self.components)

    def element(self, index: int) -> Tuple[int, Exponent]:
        """(component, monomial) of basis vector ``index``."""
        for component in range(len(self.components) - 1, -1, -1):
            start = self._starts[component]
            if index >= start:
                return component, self.components[component].monomials[index - start]
        raise IndexError(index)

    def value(self, index: int) -> Cochain:
        """The polynomial or vector field of basis vector ``index``."""
        component, exponent = self.element(index)
        monomial = Polynomial.monomial(exponent)
        if self.kind.is_scalar:
            return monomial
        parts = [Polynomial.zero(self.nvars) for _ in self.components]
        parts[component] = monomial
        return VectorField(tuple(parts))

    def values(self) -> List[Cochain]:
        return [self.value(i) for i in range(len(self))]

    def coordinates(self, value: Cochain) -> Dict[int, Fraction]:
        """Sparse coordinates of ``value`` in this basis.

        Raises:
            InhomogeneousImageError: If ``value`` has a term outside the slice
        """
        if self.kind.is_scalar:
            if not isinstance(value, Polynomial):
                raise ArityError(f"{self.kind.value} expects a polynomial")
            return self.components[0].coordinates(value)
        if not isinstance(value, VectorField) or len(value) != len(self.components):
            raise ArityError(f"{self.kind.value} expects a {len(self.components)}-component field")
        coords: Dict[int, Fraction] = {}
        for component, (basis, start) in enumerate(zip(self.components, self._starts)):
            try:
                coords.update(basis.coordinates(value[component], offset=start))
            except InhomogeneousImageError as e:
                raise InhomogeneousImageError(
                    f"{self.kind.value} grade {self.grade}, component {component}: {e}"
                ) from e
        return coords

    def from_coordinates(self, vector: Union[Sequence[Fraction], Mapping[int, Fraction]]) -> Cochain:
        """Inverse of :meth:`coordinates`."""
        items = vector.items() if isinstance(vector, Mapping) else enumerate(vector)
        parts: List[Dict[Exponent, Fraction]] = [{} for _ in self.components]
        for index, coeff in items:
            if coeff:
                component, exponent = self.element(index)
                parts[component][exponent] = coeff
        polys = [Polynomial(terms, self.nvars) for terms in parts]
        if self.kind.is_scalar:
            return polys[0]
        return VectorField(tuple(polys))


@lru_cache(maxsize=2048)
def slice_basis(kind: SpaceKind, grade: int, w: WeightSystem) -> ProductBasis:
    """Product monomial basis of ``kind`` at ``grade``.

    Example:
        >>> len(slice_basis(SpaceKind.X1, 0, WeightSystem((1, 1, 1))))
        9
    """
    offsets = component_offsets(kind, w)
    return ProductBasis(kind, grade, tuple(monomial_basis(grade + o, w) for o in offsets))


@dataclass(frozen=True)
class GradedOperatorMatrix:
    """Exact sparse matrix of a map restricted to one graded slice.

    Column j holds the coordinates of the image of source basis vector j.

    Attributes:
        op: Name of the map
        source_basis: Basis of the source slice
        target_basis: Basis of the target slice
        columns: Sparse columns, ``row -> Fraction``
    """

    op: str
    source_basis: ProductBasis
    target_basis: ProductBasis
    columns: Tuple[Dict[int, Fraction], ...]

    @property
    def nrows(self) -> int:
        return len(self.target_basis)

    @property
    def ncols(self) -> int:
        return len(self.source_basis)

    @property
    def source_grade(self) -> int:
        return self.source_basis.grade

    @property
    def target_grade(self) -> int:
        return self.target_basis.grade

    def rows(self) -> List[Dict[int, Fraction]]:
        return transpose(self.columns, self.nrows)  # type: ignore[return-value]

    def entry(self, row: int, col: int) -> Fraction:
        return self.columns[col].get(row, Fraction(0))

    def to_dense(self) -> List[List[Fraction]]:
        return [[self.entry(i, j) for j in range(self.ncols)] for i in range(self.nrows)]

    def apply(self, vector: Sequence[Fraction]) -> Dict[int, Fraction]:
        """Matrix-vector product as a sparse vector."""
        result: Dict[int, Fraction] = {}
        for j, coeff in enumerate(vector):
            if coeff:
                for i, value in self.columns[j].items():
                    total = result.get(i, Fraction(0)) + coeff * value
                    if total:
                        result[i] = total
                    else:
                        result.pop(i, None)
        return result


@dataclass(frozen=True)
class RankKernel:
    """Rank, nullity and (optionally) a kernel basis of a matrix."""

    rank: int
    kernel_dim: int
    kernel_basis: Tuple[Tuple[Fraction, ...], ...] = ()


@dataclass(frozen=True)
class ComplexMap:
    """A named map of one of the four complexes."""

    name: str
    source: SpaceKind
    target: SpaceKind
    shift: Callable[[GjpsStructure], int]
    apply: Callable[[Cochain, GjpsStructure], Cochain]


def _bivector_weight(s: GjpsStructure) -> int:
    return s.bivector_weight


def _casimir_weight(s: GjpsStructure) -> int:
    return s.casimir_degree


def _no_shift(s: GjpsStructure) -> int:
    return 0


COMPLEX_MAPS: Dict[str, ComplexMap] = {
    "boundary_1": ComplexMap("boundary_1", SpaceKind.OMEGA1, SpaceKind.OMEGA0, _bivector_weight,
                             lambda v, s: poisson_boundary(1, v, s)),
    "boundary_2": ComplexMap("boundary_2", SpaceKind.OMEGA2, SpaceKind.OMEGA1, _bivector_weight,
                             lambda v, s: poisson_boundary(2, v, s)),
    "boundary_3": ComplexMap("boundary_3", SpaceKind.OMEGA3, SpaceKind.OMEGA2, _bivector_weight,
                             lambda v, s: poisson_boundary(3, v, s)),
    "coboundary_0": ComplexMap("coboundary_0", SpaceKind.X0, SpaceKind.X1, _bivector_weight,
                               lambda v, s: poisson_coboundary(0, v, s)),
    "coboundary_1": ComplexMap("coboundary_1", SpaceKind.X1, SpaceKind.X2, _bivector_weight,
                               lambda v, s: poisson_coboundary(1, v, s)),
    "coboundary_2": ComplexMap("coboundary_2", SpaceKind.X2, SpaceKind.X3, _bivector_weight,
                               lambda v, s: poisson_coboundary(2, v, s)),
    "de_rham_0": ComplexMap("de_rham_0", SpaceKind.OMEGA0, SpaceKind.OMEGA1, _no_shift,
                            lambda v, s: de_rham(0, v)),
    "de_rham_1": ComplexMap("de_rham_1", SpaceKind.OMEGA1, SpaceKind.OMEGA2, _no_shift,
                            lambda v, s: de_rham(1, v)),
    "de_rham_2": ComplexMap("de_rham_2", SpaceKind.OMEGA2, SpaceKind.OMEGA3, _no_shift,
                            lambda v, s: de_rham(2, v)),
    "koszul_0": ComplexMap("koszul_0", SpaceKind.OMEGA0, SpaceKind.OMEGA1, _casimir_weight,
                           lambda v, s: koszul(0, v, s.casimir)),
    "koszul_1": ComplexMap("koszul_1", SpaceKind.OMEGA1, SpaceKind.OMEGA2, _casimir_weight,
                           lambda v, s: koszul(1, v, s.casimir)),
    "koszul_2": ComplexMap("koszul_2", SpaceKind.OMEGA2, SpaceKind.OMEGA3, _casimir_weight,
                           lambda v, s: koszul(2, v, s.casimir)),
}


def _check_grade(grade: int, max_grade: int) -> None:
    if abs(grade) > max_grade:
        raise GradeLimitError(f"Grade {grade} exceeds the configured limit {max_grade}")


def linear_map_matrix(
    name: str,
    source: ProductBasis,
    target: ProductBasis,
    fn: Callable[[Cochain], Cochain],
) -> GradedOperatorMatrix:
    """Matrix of ``fn`` from ``source`` to ``target``; images must stay in ``target``."""
    columns = tuple(target.coordinates(fn(source.value(j))) for j in range(len(source)))
    return GradedOperatorMatrix(name, source, target, columns)


def operator_matrix(
    op: str,
    source_grade: int,
    s: GjpsStructure,
    max_grade: int = MAX_SUPPORTED_GRADE,
) -> GradedOperatorMatrix:
    """Matrix of a named complex map on the slice of ``source_grade``.

    Args:
        op: Key of COMPLEX_MAPS (``boundary_k``, ``coboundary_k``, ``de_rham_k``, ``koszul_k``)
        source_grade: Grade of the source slice
        s: Structure providing lambda and P
        max_grade: Largest grade (in absolute value) accepted

    Returns:
        GradedOperatorMatrix whose target grade is source grade plus the map's shift

    Raises:
        GradeLimitError: If either slice is beyond ``max_grade``
        InhomogeneousImageError: If an image leaves the target slice
    """
    if op not in COMPLEX_MAPS:
        raise ValueError(f"Unknown complex map: {op}")
    cmap = COMPLEX_MAPS[op]
    target_grade = source_grade + cmap.shift(s)
    _check_grade(source_grade, max_grade)
    _check_grade(target_grade, max_grade)
    source = slice_basis(cmap.source, source_grade, s.weights)
    target = slice_basis(cmap.target, target_grade, s.weights)
    matrix = linear_map_matrix(op, source, target, lambda v: cmap.apply(v, s))
    logger.debug(f"{op} grade {source_grade} -> {target_grade}: {matrix.nrows}x{matrix.ncols}")
    return matrix


def rank_kernel(m: GradedOperatorMatrix, with_basis: bool = True) -> RankKernel:
    """Rank and kernel of ``m`` by fraction-free elimination.

    Args:
        m: Matrix to analyse
        with_basis: Also compute a kernel basis (needs the second pass)

    Returns:
        RankKernel with rank + kernel_dim equal to the number of columns
    """
    eliminator = FractionFreeEliminator(m.rows(), m.ncols)
    rank = eliminator.rank
    kernel_dim = m.ncols - rank
    basis: Tuple[Tuple[Fraction, ...], ...] = ()
    if with_basis and kernel_dim:
        basis = tuple(eliminator.kernel_basis())
        if len(basis) != kernel_dim:
            raise AssertionError(f"Rank-nullity violated for {m.op}: {rank} + {len(basis)} != {m.ncols}")
    return RankKernel(rank, kernel_dim, basis)


def dump_matrix(m: GradedOperatorMatrix) -> str:
    """Debug dump: header ``rows cols grade op`` then ``row col num/den`` per entry."""
    lines = [f"{m.nrows} {m.ncols} {m.source_grade} {m.op}"]
    entries = sorted((i, j, v) for j, column in enumerate(m.columns) for i, v in column.items())
    lines.extend(f"{i} {j} {v.numerator}/{v.denominator}" for i, j, v in entries)
    return "\n".join(lines) + "\n"
