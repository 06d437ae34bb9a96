"""Vector operators on triples of polynomials and their planar analogues.

One ``VectorField`` type carries the elements of A^3 standing for 1-forms,
2-forms, vector fields and bivector fields alike; which space a field
belongs to is tracked by the grading layer, never by the value.

Spatial operators require 3 variables and 3 components; planar operators
require 2 of each. Mismatches raise ``ArityError``.
"""

from dataclasses import dataclass
from typing import Iterator, Sequence, Tuple, Union

from .poly import ArityError, Polynomial, Scalar, WeightSystem


@dataclass(frozen=True)
class VectorField:
    """Tuple of polynomial components over one variable set.

    Attributes:
        components: 3 components (spatial) or 2 (planar)
    """

    components: Tuple[Polynomial, ...]

    def __post_init__(self) -> None:
        components = tuple(self.components)
        if not components:
            raise ArityError("A vector field needs at least one component")
        nvars = components[0].nvars
        if any(c.nvars != nvars for c in components):
            raise ArityError("Vector field components must share their variable set")
        object.__setattr__(self, "components", components)

    @classmethod
    def of(cls, *components: Polynomial) -> "VectorField":
        return cls(tuple(components))

    @classmethod
    def zero(cls, size: int = 3, nvars: int = 3) -> "VectorField":
        return cls(tuple(Polynomial.zero(nvars) for _ in range(size)))

    @property
    def nvars(self) -> int:
        return self.components[0].nvars

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self) -> Iterator[Polynomial]:
        return iter(self.components)

    def __getitem__(self, index: int) -> Polynomial:
        return self.components[index]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def _check_same_shape(self, other: "VectorField") -> None:
        if len(other) != len(self) or other.nvars != self.nvars:
            raise ArityError("Vector fields of different shapes")

    def __add__(self, other: "VectorField") -> "VectorField":
        self._check_same_shape(other)
        return VectorField(tuple(a + b for a, b in zip(self, other)))

    def __sub__(self, other: "VectorField") -> "VectorField":
        self._check_same_shape(other)
        return VectorField(tuple(a - b for a, b in zip(self, other)))

    def __neg__(self) -> "VectorField":
        return VectorField(tuple(-c for c in self))

    def __mul__(self, factor: Union[Polynomial, Scalar]) -> "VectorField":
        """Multiply every component by a polynomial or scalar."""
        if isinstance(factor, Polynomial) and factor.nvars != self.nvars:
            raise ArityError("Scalar factor lives in a different ring")
        return VectorField(tuple(c * factor for c in self))

    __rmul__ = __mul__

    def to_string(self) -> str:
        return "(" + ", ".join(c.to_string() for c in self) + ")"

    def __str__(self) -> str:
        return self.to_string()


def _spatial(*fields: VectorField) -> None:
    for f in fields:
        if len(f) != 3 or f.nvars != 3:
            raise ArityError(f"Expected a 3-component field in 3 variables, got {len(f)}/{f.nvars}")


def _planar(*fields: VectorField) -> None:
    for f in fields:
        if len(f) != 2 or f.nvars != 2:
            raise ArityError(f"Expected a 2-component field in 2 variables, got {len(f)}/{f.nvars}")


def grad(f: Polynomial) -> VectorField:
    if f.nvars != 3:
        raise ArityError(f"grad expects 3 variables, got {f.nvars}")
    return VectorField(tuple(f.derivative(i) for i in range(3)))


def curl(g: VectorField) -> VectorField:
    _spatial(g)
    g1, g2, g3 = g
    return VectorField.of(
        g3.derivative(1) - g2.derivative(2),
        g1.derivative(2) - g3.derivative(0),
        g2.derivative(0) - g1.derivative(1),
    )


def div(g: VectorField) -> Polynomial:
    _spatial(g)
    return g[0].derivative(0) + g[1].derivative(1) + g[2].derivative(2)


def cross(f: VectorField, g: VectorField) -> VectorField:
    _spatial(f, g)
    f1, f2, f3 = f
    g1, g2, g3 = g
    return VectorField.of(f2 * g3 - f3 * g2, f3 * g1 - f1 * g3, f1 * g2 - f2 * g1)


def dot(f: VectorField, g: VectorField) -> Polynomial:
    if len(f) != len(g) or f.nvars != g.nvars:
        raise ArityError("dot of fields with different shapes")
    result = Polynomial.zero(f.nvars)
    for a, b in zip(f, g):
        result = result + a * b
    return result


def triple(f: VectorField, g: VectorField, h: VectorField) -> Polynomial:
    """F . (G x H)."""
    return dot(f, cross(g, h))


def cross_dot(kind: str, *args: VectorField) -> Union[VectorField, Polynomial]:
    """Dispatch ``cross``, ``dot`` or ``triple`` by name."""
    if kind == "cross":
        return cross(*args)
    if kind == "dot":
        return dot(*args)
    if kind == "triple":
        return triple(*args)
    raise ValueError(f"Unknown product kind: {kind}")


def box(f: Polynomial) -> VectorField:
    """Planar rotated gradient (dF/dy, -dF/dx)."""
    if f.nvars != 2:
        raise ArityError(f"box expects 2 variables, got {f.nvars}")
    return VectorField.of(f.derivative(1), -f.derivative(0))


def grad2(f: Polynomial) -> VectorField:
    if f.nvars != 2:
        raise ArityError(f"grad2 expects 2 variables, got {f.nvars}")
    return VectorField.of(f.derivative(0), f.derivative(1))


def div2(k: VectorField) -> Polynomial:
    _planar(k)
    return k[0].derivative(0) + k[1].derivative(1)


def curl2(f: VectorField) -> Polynomial:
    _planar(f)
    return f[1].derivative(0) - f[0].derivative(1)


def planar_ops(kind: str, arg: Union[Polynomial, VectorField]) -> Union[VectorField, Polynomial]:
    """Dispatch the planar operators by name."""
    if kind == "box":
        return box(arg)  # type: ignore[arg-type]
    if kind == "grad2":
        return grad2(arg)  # type: ignore[arg-type]
    if kind == "div2":
        return div2(arg)  # type: ignore[arg-type]
    if kind == "curl2":
        return curl2(arg)  # type: ignore[arg-type]
    raise ValueError(f"Unknown planar operator: {kind}")


def euler_field(w: WeightSystem) -> VectorField:
    """e_w = (w_1 x, w_2 y, w_3 z)."""
    return VectorField(w.euler_components())


def position_field(nvars: int = 3) -> VectorField:
    """r = (x, y, z)."""
    return VectorField(tuple(Polynomial.variable(i, nvars) for i in range(nvars)))


def as_field(components: Sequence[Polynomial]) -> VectorField:
    return VectorField(tuple(components))
