#!/usr/bin/env python3
"""Tests for GJPS structures, the bracket and the four complexes."""

import random
from fractions import Fraction

import pytest

from src.core.poisson import (
    GENERAL,
    SECTION5,
    SECTION6,
    GjpsStructure,
    HypothesisError,
    bracket,
    confirm_modular_field,
    de_rham,
    hamiltonian_field,
    koszul,
    modular_field,
    poisson_boundary,
    poisson_coboundary,
    split_casimir,
)
from src.core.poly import ArityError, Polynomial, WeightSystem
from src.core.poly_parser import parse_polynomial
from src.core.vector_calculus import VectorField, dot, euler_field, grad

STANDARD = WeightSystem.standard()
RANDOM_SAMPLES = 100


def random_polynomial(rng: random.Random, max_degree: int = 3) -> Polynomial:
    terms = {}
    for _ in range(3):
        exponent = tuple(rng.randint(0, max_degree) for _ in range(3))
        terms[exponent] = rng.randint(-3, 3)
    return Polynomial(terms)


def random_field(rng: random.Random) -> VectorField:
    return VectorField.of(*(random_polynomial(rng, 2) for _ in range(3)))


def field(*texts: str) -> VectorField:
    return VectorField.of(*(parse_polynomial(t) for t in texts))


# ----------------------------------------------------------------------
# Construction
# ----------------------------------------------------------------------

def test_build_records_hypotheses(exgur):
    names = [h.name for h in exgur.hypotheses]
    assert names == [
        "nonzero",
        "homogeneity",
        "lambda_is_z",
        "casimir_split",
        "isolated_singularity",
        "planar_isolated_singularity",
        "regular_sequence",
    ]
    assert all(h.passed for h in exgur.hypotheses)
    assert exgur.lambda_degree == 1 and exgur.casimir_degree == 2
    assert exgur.bivector_weight == 0
    assert exgur.nominal_shift == 3
    assert exgur.milnor == 1


def test_planar_splitting(nh):
    """x^2 + y^2 + z^3 splits with r = 1 and c = 3."""
    assert nh.z_exponent == 3
    assert nh.z_coefficient == 3
    assert nh.planar_casimir == parse_polynomial("x^2 + y^2")
    assert nh.planar.weights.weights == (1, 1)
    assert nh.planar.alpha == 3
    assert nh.normalized_casimir == parse_polynomial("1/3*x^2 + 1/3*y^2 + 1/3*z^3")
    assert nh.bivector_weight == 2 + 6 - 8


def test_split_casimir_rejects_mixed_z_terms():
    with pytest.raises(HypothesisError) as info:
        split_casimir(parse_polynomial("x*y + x*z + z^2"), STANDARD)
    assert info.value.check == "casimir_split"


def test_inhomogeneous_input_is_rejected():
    with pytest.raises(HypothesisError) as info:
        GjpsStructure.build(parse_polynomial("z"), parse_polynomial("x*y + z^3"), STANDARD)
    assert info.value.check == "homogeneity"


def test_section6_requires_lambda_z():
    with pytest.raises(HypothesisError) as info:
        GjpsStructure.build(parse_polynomial("x"), parse_polynomial("x*y + 1/2*z^2"), STANDARD, mode=SECTION6)
    assert info.value.check == "lambda_is_z"


def test_non_isolated_singularity():
    """P = x^2 fails in section5 mode and is only recorded in general mode."""
    lam, casimir = parse_polynomial("z"), parse_polynomial("x^2")
    with pytest.raises(HypothesisError) as info:
        GjpsStructure.build(lam, casimir, STANDARD, mode=SECTION5)
    assert info.value.check == "isolated_singularity"

    general = GjpsStructure.build(lam, casimir, STANDARD, mode=GENERAL)
    assert not general.hypothesis("isolated_singularity").passed


def test_zero_lambda_rejected():
    with pytest.raises(HypothesisError) as info:
        GjpsStructure.build(Polynomial.zero(), parse_polynomial("x*y"), STANDARD)
    assert info.value.check == "nonzero"


def test_arity_mismatch():
    with pytest.raises(ArityError):
        GjpsStructure.build(parse_polynomial("x", ("x", "y")), parse_polynomial("x*y"), STANDARD)


# ----------------------------------------------------------------------
# Bracket
# ----------------------------------------------------------------------

def test_bracket_values(exgur):
    x, y = parse_polynomial("x"), parse_polynomial("y")
    assert bracket(x, y, exgur) == parse_polynomial("z^2")
    assert bracket(x, x, exgur).is_zero()


def test_casimir_is_central(exgur, nh):
    rng = random.Random(1)
    for s in (exgur, nh):
        for _ in range(RANDOM_SAMPLES):
            assert bracket(s.casimir, random_polynomial(rng), s).is_zero()


def test_jacobi_identity(exgur, nh):
    rng = random.Random(2)
    for s in (exgur, nh):
        for _ in range(RANDOM_SAMPLES):
            f, g, h = (random_polynomial(rng, 2) for _ in range(3))
            total = (
                bracket(f, bracket(g, h, s), s)
                + bracket(g, bracket(h, f, s), s)
                + bracket(h, bracket(f, g, s), s)
            )
            assert total.is_zero()


def test_leibniz_rule(exgur):
    rng = random.Random(3)
    for _ in range(RANDOM_SAMPLES):
        f, g, h = (random_polynomial(rng, 2) for _ in range(3))
        assert bracket(f, g * h, exgur) == bracket(f, g, exgur) * h + g * bracket(f, h, exgur)


def test_hamiltonian_field(exgur):
    rng = random.Random(4)
    x, y = parse_polynomial("x"), parse_polynomial("y")
    assert dot(hamiltonian_field(x, exgur), grad(y)) == parse_polynomial("z^2")
    assert hamiltonian_field(exgur.casimir, exgur).is_zero()
    for _ in range(RANDOM_SAMPLES):
        f, g = random_polynomial(rng), random_polynomial(rng)
        assert dot(hamiltonian_field(f, exgur), grad(g)) == bracket(f, g, exgur)
        assert poisson_coboundary(0, f, exgur) == hamiltonian_field(f, exgur)


# ----------------------------------------------------------------------
# Modular field
# ----------------------------------------------------------------------

def test_modular_field_values(exgur, nh, jps):
    assert modular_field(exgur).field == field("-x", "y", "0")
    assert modular_field(nh).field == field("-2*y", "2*x", "0")
    assert modular_field(jps).is_zero()


def test_modular_field_divergence_identity(exgur, expich, nh):
    for s in (exgur, expich, nh):
        assert confirm_modular_field(s, max_degree=5)


# ----------------------------------------------------------------------
# Complexes
# ----------------------------------------------------------------------

def test_boundary_values(exgur):
    assert poisson_boundary(3, Polynomial.one(), exgur) == field("x", "-y", "0")
    rng = random.Random(5)
    for _ in range(RANDOM_SAMPLES):
        assert poisson_boundary(1, grad(random_polynomial(rng)), exgur).is_zero()


def test_boundary_squares_to_zero(exgur, nh):
    rng = random.Random(6)
    for s in (exgur, nh):
        for _ in range(RANDOM_SAMPLES):
            g = random_field(rng)
            u = random_polynomial(rng, 2)
            assert poisson_boundary(1, poisson_boundary(2, g, s), s).is_zero()
            assert poisson_boundary(2, poisson_boundary(3, u, s), s).is_zero()


def test_coboundary_squares_to_zero(exgur, nh):
    rng = random.Random(7)
    for s in (exgur, nh):
        for _ in range(RANDOM_SAMPLES):
            f = random_polynomial(rng, 2)
            g = random_field(rng)
            assert poisson_coboundary(1, poisson_coboundary(0, f, s), s).is_zero()
            assert poisson_coboundary(2, poisson_coboundary(1, g, s), s).is_zero()


def test_coboundary_of_euler_field(exgur):
    """delta^1(e_w) = (w1 + w2 - w(P)) lambda grad P, zero for the quadric."""
    assert poisson_coboundary(1, euler_field(exgur.weights), exgur).is_zero()
    assert poisson_coboundary(0, exgur.casimir, exgur).is_zero()


def test_de_rham_and_koszul(exgur):
    assert de_rham(0, parse_polynomial("x*y*z")) == field("y*z", "x*z", "x*y")
    rng = random.Random(8)
    for _ in range(RANDOM_SAMPLES):
        f, g = random_polynomial(rng), random_field(rng)
        assert de_rham(1, de_rham(0, f)).is_zero()
        assert de_rham(2, de_rham(1, g)).is_zero()
        assert koszul(1, koszul(0, f, exgur.casimir), exgur.casimir).is_zero()
        assert koszul(2, koszul(1, g, exgur.casimir), exgur.casimir).is_zero()
    assert koszul(2, field("y", "x", "z"), exgur.casimir) == parse_polynomial("x^2 + y^2 + z^2")


def test_operator_arity_errors(exgur):
    with pytest.raises(ArityError):
        poisson_boundary(3, field("x", "y", "z"), exgur)
    with pytest.raises(ArityError):
        poisson_coboundary(1, Polynomial.one(), exgur)
    with pytest.raises(ValueError):
        poisson_boundary(4, Polynomial.one(), exgur)
    with pytest.raises(ArityError):
        de_rham(0, parse_polynomial("x", ("x", "y")))


def test_structures_pickle(exgur):
    """Structures travel to worker processes."""
    import pickle

    clone = pickle.loads(pickle.dumps(exgur))
    assert clone == exgur
    assert bracket(parse_polynomial("x"), parse_polynomial("y"), clone) == parse_polynomial("z^2")
