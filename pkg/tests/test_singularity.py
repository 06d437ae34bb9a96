#!/usr/bin/env python3
"""Tests for Milnor numbers, singularity bases and the regular-sequence check."""

import pytest

from src.core.poly import WeightSystem
from src.core.poly_parser import parse_polynomial
from src.core.singularity import (
    NON_ISOLATED,
    NonIsolatedSingularityError,
    jacobian_quotient_dims,
    milnor_number,
    quotient_basis,
    regular_sequence_check,
    sing_basis,
    singularity_ring,
    socle_cutoff,
)

STANDARD = WeightSystem.standard()
NH_WEIGHTS = WeightSystem((3, 3, 2))


def fermat(n: int):
    k = n + 1
    return parse_polynomial(f"1/{k}*x^{k} + 1/{k}*y^{k} + 1/{k}*z^{k}")


def test_quadric_has_milnor_number_one():
    assert milnor_number(parse_polynomial("x*y + 1/2*z^2"), STANDARD) == 1
    assert sing_basis(parse_polynomial("x*y + 1/2*z^2"), STANDARD) == [(0, 0, 0)]


def test_weighted_example_basis():
    """x^2 + y^2 + z^3 has mu = 2 with basis {1, z}."""
    p = parse_polynomial("x^2 + y^2 + z^3")
    assert milnor_number(p, NH_WEIGHTS) == 2
    assert sing_basis(p, NH_WEIGHTS) == [(0, 0, 0), (0, 0, 1)]
    assert jacobian_quotient_dims(p, NH_WEIGHTS, 4) == [1, 0, 1, 0, 0]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_fermat_family(n):
    """mu((x^(n+1) + y^(n+1) + z^(n+1))/(n+1)) = n^3."""
    assert milnor_number(fermat(n), STANDARD) == n ** 3


def test_fermat_graded_dimensions():
    ring = singularity_ring(fermat(2), STANDARD)
    assert ring.quotient_dims == (1, 3, 3, 1)
    assert len(ring.basis) == 8
    assert ring.basis[-1] == (1, 1, 1)
    assert ring.is_isolated


def test_socle_cutoff():
    assert socle_cutoff(fermat(2), STANDARD) == 4
    assert socle_cutoff(parse_polynomial("x^2 + y^2 + z^3"), NH_WEIGHTS) == 3


def test_non_isolated_singularity():
    p = parse_polynomial("x^2")
    assert milnor_number(p, STANDARD) == NON_ISOLATED
    with pytest.raises(NonIsolatedSingularityError):
        sing_basis(p, STANDARD)
    assert milnor_number(parse_polynomial("0"), STANDARD) == NON_ISOLATED


def test_planar_milnor_numbers():
    planar = WeightSystem((1, 1))
    assert milnor_number(parse_polynomial("x*y", ("x", "y")), planar) == 1
    assert milnor_number(parse_polynomial("1/3*x^3 + 1/3*y^3", ("x", "y")), planar) == 4


def test_quotient_basis_by_custom_generators():
    """A / (x, y, z^2) is spanned by 1 and z."""
    generators = [parse_polynomial("x"), parse_polynomial("y"), parse_polynomial("z^2")]
    assert quotient_basis(generators, STANDARD, 1) == [(0, 0, 1)]
    assert quotient_basis(generators, STANDARD, 2) == []


def test_regular_sequence_check():
    ok = regular_sequence_check(parse_polynomial("z"), parse_polynomial("x*y + 1/2*z^2"), STANDARD, 8)
    assert ok.passed and ok.bound == 8

    bad = regular_sequence_check(parse_polynomial("x"), parse_polynomial("x*y"), STANDARD, 6)
    assert not bad.passed
    assert bad.failing_grade is not None and bad.failing_grade <= 6
    assert bad.reason
