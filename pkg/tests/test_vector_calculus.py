#!/usr/bin/env python3
"""Tests for the spatial and planar vector operators."""

import random
from fractions import Fraction

import pytest

from src.core.poly import ArityError, Polynomial, WeightSystem
from src.core.poly_parser import parse_polynomial
from src.core.vector_calculus import (
    VectorField,
    box,
    cross,
    cross_dot,
    curl,
    div,
    div2,
    dot,
    euler_field,
    grad,
    grad2,
    planar_ops,
    triple,
)

RANDOM_SAMPLES = 100


def random_polynomial(rng: random.Random, nvars: int = 3, max_degree: int = 2) -> Polynomial:
    terms = {}
    for _ in range(3):
        exponent = tuple(rng.randint(0, max_degree) for _ in range(nvars))
        terms[exponent] = Fraction(rng.randint(-4, 4), rng.randint(1, 2))
    return Polynomial(terms, nvars)


def random_field(rng: random.Random) -> VectorField:
    return VectorField.of(*(random_polynomial(rng) for _ in range(3)))


def field(*texts: str) -> VectorField:
    return VectorField.of(*(parse_polynomial(t) for t in texts))


def test_grad():
    assert grad(parse_polynomial("x*y + 1/2*z^2")) == field("y", "x", "z")
    assert grad(Polynomial.one()).is_zero()
    assert grad(parse_polynomial("z")) == field("0", "0", "1")
    with pytest.raises(ArityError):
        grad(Polynomial.variable(0, nvars=2))


def test_curl():
    assert curl(grad(parse_polynomial("x^2*y + z^3"))).is_zero()
    assert curl(field("0", "0", "x*y")) == field("x", "-y", "0")
    assert curl(field("y", "x", "z")).is_zero()


def test_div():
    assert div(euler_field(WeightSystem((3, 3, 2)))) == 8
    assert div(field("x^2", "0", "0")) == parse_polynomial("2*x")
    with pytest.raises(ArityError):
        div(VectorField.of(Polynomial.variable(0, 2), Polynomial.variable(1, 2)))


def test_products():
    gx, gy, gz = grad(parse_polynomial("x")), grad(parse_polynomial("y")), grad(parse_polynomial("z"))
    assert dot(gz, cross(gx, gy)) == 1
    f = field("x*y", "z", "x - y")
    assert cross(f, f).is_zero()
    assert cross_dot("triple", gz, gx, gy) == 1
    with pytest.raises(ValueError):
        cross_dot("wedge", f, f)


def test_product_rule_identities():
    """curl(FG) = F curl G + grad F x G and div(FG) = grad F . G + F div G."""
    rng = random.Random(3)
    for _ in range(RANDOM_SAMPLES):
        f, g = random_polynomial(rng), random_field(rng)
        assert curl(g * f) == curl(g) * f + cross(grad(f), g)
        assert div(g * f) == dot(grad(f), g) + f * div(g)


def test_divergence_of_cross_product():
    """div(F x G) = G . curl F - F . curl G."""
    rng = random.Random(5)
    for _ in range(RANDOM_SAMPLES):
        f, g = random_field(rng), random_field(rng)
        assert div(cross(f, g)) == dot(g, curl(f)) - dot(f, curl(g))


def test_triple_product_is_cyclic():
    rng = random.Random(9)
    for _ in range(RANDOM_SAMPLES):
        f, g, h = random_field(rng), random_field(rng), random_field(rng)
        assert triple(f, g, h) == triple(g, h, f)


def test_de_rham_compositions_vanish():
    rng = random.Random(13)
    for _ in range(RANDOM_SAMPLES):
        assert curl(grad(random_polynomial(rng))).is_zero()
        assert div(curl(random_field(rng))).is_zero()


def test_planar_operators():
    planar = ("x", "y")
    assert box(parse_polynomial("x^2 + y^2", planar)) == VectorField.of(
        parse_polynomial("2*y", planar), parse_polynomial("-2*x", planar)
    )
    rng = random.Random(17)
    for _ in range(20):
        assert div2(box(random_polynomial(rng, nvars=2))).is_zero()

    k = VectorField.of(parse_polynomial("x^2", planar), parse_polynomial("x*y", planar))
    assert planar_ops("div2", k) == parse_polynomial("3*x", planar)
    assert planar_ops("curl2", k) == parse_polynomial("y", planar)
    with pytest.raises(ValueError):
        planar_ops("laplace", k)
    with pytest.raises(ArityError):
        box(parse_polynomial("x"))


def test_box_matches_modular_derivative_on_z_free_part():
    """box Q . grad P~ is the z-free part of (grad z x grad P) . grad Q."""
    planar = ("x", "y")
    planar_casimir = parse_polynomial("x^2 + y^2", planar)
    casimir = parse_polynomial("x^2 + y^2 + z^3")
    lhs = dot(box(parse_polynomial("x", planar)), grad2(planar_casimir))
    rhs = dot(cross(grad(parse_polynomial("z")), grad(casimir)), grad(parse_polynomial("x")))
    assert lhs.embed(3) == rhs
    assert lhs == parse_polynomial("-2*y", planar)


@pytest.mark.parametrize("planar_text, z_term", [("x^2 + y^2", "z^3"), ("x*y", "1/2*z^2"), ("1/3*x^3 + 1/3*y^3", "1/3*z^3")])
def test_box_identity_on_random_planar_polynomials(planar_text, z_term):
    planar = ("x", "y")
    planar_casimir = parse_polynomial(planar_text, planar)
    grad_p = grad(parse_polynomial(f"{planar_text} + {z_term}"))
    lam = grad(parse_polynomial("z"))
    rng = random.Random(19)
    for _ in range(RANDOM_SAMPLES):
        q = random_polynomial(rng, nvars=2, max_degree=3)
        lhs = dot(box(q), grad2(planar_casimir))
        assert lhs.embed(3) == dot(cross(lam, grad_p), grad(q.embed(3)))


def test_field_arithmetic():
    f = field("x", "y", "z")
    assert str(f) == "(x, y, z)"
    assert (f - f).is_zero()
    assert f * 2 == f + f
    assert parse_polynomial("x") * f == field("x^2", "x*y", "x*z")
    with pytest.raises(ArityError):
        f + VectorField.zero(2, 2)
    with pytest.raises(ArityError):
        VectorField.of(Polynomial.variable(0), Polynomial.variable(0, 2))
