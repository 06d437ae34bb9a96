#!/usr/bin/env python3
"""Tests for exact polynomials, weights and graded monomial bases."""

import random
from fractions import Fraction

import pytest
import sympy as sp

from src.core.poly import (
    MINUS_INFINITY,
    ArityError,
    InhomogeneousImageError,
    Polynomial,
    WeightSystem,
    euler_operator,
    monomial_basis,
    monomials_up_to_degree,
    partial_derivative,
    ring_arithmetic,
    slice_dimension,
    weight_degree,
)

X, Y, Z = sp.symbols("x y z")


def to_sympy(p: Polynomial) -> sp.Expr:
    symbols = (X, Y, Z)[: p.nvars]
    return sp.Add(*[
        sp.Rational(c.numerator, c.denominator) * sp.Mul(*[s ** e for s, e in zip(symbols, exp)])
        for exp, c in p.items()
    ])


def random_polynomial(rng: random.Random, max_degree: int = 3, nterms: int = 4) -> Polynomial:
    terms = {}
    for _ in range(nterms):
        exponent = tuple(rng.randint(0, max_degree) for _ in range(3))
        terms[exponent] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return Polynomial(terms)


def test_canonical_string():
    """Terms print in decreasing graded-lex order with exact coefficients."""
    p = Polynomial({(0, 0, 2): Fraction(1, 2), (1, 1, 0): 1})
    assert str(p) == "x*y + 1/2*z^2"
    assert repr(p) == "Polynomial('x*y + 1/2*z^2', nvars=3)"
    assert str(Polynomial.zero()) == "0"
    assert str(-Polynomial.variable(0) + 3) == "-x + 3"


def test_zero_coefficients_are_dropped():
    x = Polynomial.variable(0)
    assert (x - x).is_zero()
    assert Polynomial({(1, 0, 0): 0}).is_zero()
    assert (x - x).degree() == -1


def test_float_coefficients_rejected():
    with pytest.raises(TypeError):
        Polynomial({(1, 0, 0): 0.5})


def test_arity_mismatch_raises():
    planar = Polynomial.variable(0, nvars=2)
    with pytest.raises(ArityError):
        planar + Polynomial.variable(0)
    with pytest.raises(ArityError):
        Polynomial({(1, 0): 1}, nvars=3)


def test_arithmetic_matches_sympy():
    """Products, sums and powers agree with sympy on random inputs."""
    rng = random.Random(7)
    for _ in range(25):
        f, g = random_polynomial(rng), random_polynomial(rng)
        assert sp.expand(to_sympy(f * g) - to_sympy(f) * to_sympy(g)) == 0
        assert sp.expand(to_sympy(f + g) - to_sympy(f) - to_sympy(g)) == 0
        assert sp.expand(to_sympy(f ** 2) - to_sympy(f) ** 2) == 0


def test_derivative_matches_sympy():
    rng = random.Random(11)
    for _ in range(20):
        f = random_polynomial(rng)
        for i, symbol in enumerate((X, Y, Z)):
            assert sp.expand(to_sympy(partial_derivative(f, i)) - sp.diff(to_sympy(f), symbol)) == 0
    with pytest.raises(ArityError):
        partial_derivative(Polynomial.variable(0), 3)


def test_division_and_powers():
    x = Polynomial.variable(0)
    assert (x * 4) / 2 == x * 2
    assert (x / Polynomial.constant(Fraction(1, 3))) == x * 3
    with pytest.raises(ZeroDivisionError):
        x / 0
    with pytest.raises(ZeroDivisionError):
        x / x
    with pytest.raises(ValueError):
        x ** -1
    assert x ** 0 == 1


def test_ring_change():
    """B = K[x,y] embeds in A and z-free polynomials drop back."""
    planar = Polynomial({(1, 1): 1}, nvars=2)
    embedded = planar.embed(3)
    assert embedded == Polynomial({(1, 1, 0): 1})
    assert embedded.drop_last_variable() == planar
    with pytest.raises(ArityError):
        Polynomial.variable(2).drop_last_variable()


def test_ring_arithmetic_dispatch():
    x, y = Polynomial.variable(0), Polynomial.variable(1)
    assert ring_arithmetic("mul", x, y) == Polynomial({(1, 1, 0): 1})
    assert ring_arithmetic("add", x, y, x) == x * 2 + y
    assert ring_arithmetic("scale", Fraction(1, 2), x) == x / 2
    with pytest.raises(ValueError):
        ring_arithmetic("pow", x, y)


def test_weight_system_normalization():
    assert WeightSystem((2, 2, 2)).weights == (1, 1, 1)
    assert WeightSystem((6, 6, 4)).weights == (3, 3, 2)
    assert WeightSystem((3, 3, 2)).total == 8
    assert str(WeightSystem.standard()) == "(1, 1, 1)"
    with pytest.raises(ValueError):
        WeightSystem((0, 1, 1))
    with pytest.raises(ValueError):
        WeightSystem((1, 1, 1, 1))


def test_weight_degree():
    """x^2 + y^2 + z^3 is homogeneous of degree 6 for weights (3,3,2) only."""
    p = Polynomial({(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 3): 1})
    result = weight_degree(p, WeightSystem((3, 3, 2)))
    assert result.degree == 6 and result.homogeneous
    standard = weight_degree(p, WeightSystem.standard())
    assert standard.degree == 3 and not standard.homogeneous

    zero = weight_degree(Polynomial.zero(), WeightSystem.standard())
    assert zero.degree is MINUS_INFINITY and zero.homogeneous
    assert MINUS_INFINITY < -1000

    with pytest.raises(ArityError):
        weight_degree(p, WeightSystem.standard(2))


def test_euler_operator_scales_homogeneous_polynomials():
    """E(P) = w(P) P."""
    w = WeightSystem((3, 3, 2))
    p = Polynomial({(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 3): 1})
    assert euler_operator(p, w) == p * 6


def test_monomial_basis():
    w = WeightSystem((3, 3, 2))
    assert monomial_basis(3, w).monomials == ((1, 0, 0), (0, 1, 0))
    assert monomial_basis(1, w).monomials == ()
    assert monomial_basis(-2, w).monomials == ()
    assert monomial_basis(0, w).monomials == ((0, 0, 0),)

    standard = WeightSystem.standard()
    assert monomial_basis(1, standard).monomials == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert slice_dimension(2, standard) == 6


def test_slice_dimensions_match_hilbert_series():
    """dim A_d equals the t^d coefficient of prod 1/(1 - t^wi)."""
    t = sp.Symbol("t")
    for weights in [(1, 1, 1), (3, 3, 2), (1, 2, 3), (2, 1)]:
        w = WeightSystem(weights)
        series = sp.series(sp.Mul(*[1 / (1 - t ** wi) for wi in w.weights]), t, 0, 21).removeO()
        for d in range(21):
            assert slice_dimension(d, w) == series.coeff(t, d), f"weights {weights}, grade {d}"


def test_slice_coordinates_refuse_foreign_monomials():
    basis = monomial_basis(2, WeightSystem.standard())
    coords = basis.coordinates(Polynomial({(1, 1, 0): 3}))
    assert coords == {basis.position((1, 1, 0)): 3}
    with pytest.raises(InhomogeneousImageError):
        basis.coordinates(Polynomial.variable(0))


def test_monomials_up_to_degree():
    assert len(monomials_up_to_degree(2)) == 10
    assert len(monomials_up_to_degree(3, nvars=2)) == 10
