#!/usr/bin/env python3
"""Tests for problem files and the built-in examples."""

import pytest

from src.core.graded_linalg import GradeLimitError
from src.core.poisson import GENERAL, SECTION5, SECTION6
from src.core.poly_parser import PolynomialSyntaxError, parse_polynomial
from src.core.problem import (
    CHECKS,
    EXAMPLES,
    ProblemSpec,
    ProblemSpecError,
    build_structure,
    example_names,
    fermat_problem,
    load_problem,
    parse_problem,
)

MINIMAL = """
lambda  = z
casimir = x*y + 1/2*z^2
weights = 1, 1, 1
"""


def test_minimal_problem_gets_defaults():
    spec = parse_problem(MINIMAL)
    assert spec.weights == (1, 1, 1)
    assert spec.mode == SECTION5
    assert spec.checks == CHECKS
    assert spec.max_grade == 15
    assert spec.casimir == parse_polynomial("x*y + 1/2*z^2")


def test_weights_and_checks_syntax():
    spec = parse_problem(
        "lambda = z\n"
        "casimir = x^2 + y^2 + z^3   # weighted\n"
        "weights = (3,3,2)\n"
        "mode = Section6\n"
        "checks = homology, Milnor\n"
        "max_grade = 8\n"
    )
    assert spec.weights == (3, 3, 2)
    assert spec.mode == SECTION6
    assert spec.checks == ("homology", "milnor")
    assert spec.max_grade == 8
    assert parse_problem(MINIMAL + "checks = all\n").checks == CHECKS


@pytest.mark.parametrize(
    "text, message",
    [
        (MINIMAL + "colour = red\n", "Unknown keys: colour"),
        ("lambda = z\nweights = 1,1,1\n", "Missing keys: casimir"),
        (MINIMAL + "max_grade = ten\n", "max_grade must be an integer"),
        (MINIMAL.replace("1, 1, 1", "1, 1"), "weights must list three integers"),
        (MINIMAL.replace("1, 1, 1", "2, 2, 2"), "gcd 1"),
        (MINIMAL.replace("1, 1, 1", "0, 1, 1"), "positive"),
        (MINIMAL + "mode = section7\n", "mode must be one of"),
        (MINIMAL + "checks = homology, astrology\n", "Unknown checks: astrology"),
        ("this is not a problem file", "Malformed problem file"),
    ],
)
def test_invalid_problem_files(text, message):
    with pytest.raises(ProblemSpecError, match=message):
        parse_problem(text)


def test_section6_needs_lambda_z():
    with pytest.raises(ProblemSpecError, match="lambda = z"):
        parse_problem(MINIMAL.replace("lambda  = z", "lambda = x") + "mode = section6\n")


def test_polynomial_errors_surface_at_parse_time():
    with pytest.raises(PolynomialSyntaxError):
        parse_problem(MINIMAL.replace("x*y + 1/2*z^2", "x*y +"))


def test_grade_limit():
    spec = parse_problem(MINIMAL)
    assert spec.with_max_grade(4).max_grade == 4
    assert spec.with_max_grade(4).casimir_text == spec.casimir_text
    with pytest.raises(GradeLimitError):
        spec.with_max_grade(61)
    with pytest.raises(GradeLimitError):
        parse_problem(MINIMAL + "max_grade = 100\n")


def test_load_problem(fixtures_dir, tmp_path):
    spec = load_problem(fixtures_dir / "nh.txt")
    assert spec.weights == (3, 3, 2)
    assert spec.lemma_bound == 3
    assert spec.source.endswith("nh.txt")
    with pytest.raises(ProblemSpecError, match="Cannot read"):
        load_problem(tmp_path / "missing.txt")


def test_fermat_family():
    spec = fermat_problem(2)
    assert spec.casimir == parse_polynomial("1/3*x^3 + 1/3*y^3 + 1/3*z^3")
    assert spec.mode == SECTION6
    with pytest.raises(ProblemSpecError):
        fermat_problem(0)


def test_examples():
    assert example_names() == ["exgur", "expich", "jps", "nh"]
    assert EXAMPLES["jps"].mode == GENERAL
    s = build_structure(EXAMPLES["nh"])
    assert s.milnor == 2
    assert s.planar is not None and s.planar.r == 1


def test_to_dict_round_trip():
    spec = EXAMPLES["exgur"]
    data = spec.to_dict()
    assert data["weights"] == [1, 1, 1]
    assert data["mode"] == SECTION6
    text = "\n".join(
        f"{key} = {', '.join(map(str, value)) if isinstance(value, list) else value}"
        for key, value in data.items()
    )
    assert parse_problem(text) == spec


def test_problem_spec_validates_directly():
    with pytest.raises(ProblemSpecError):
        ProblemSpec("z", "x*y", (1, 1, 1), max_grade=-1)
