"""Shared fixtures for the GJPS homology tests."""

import os
import sys
import tempfile
from pathlib import Path

import pytest

# Keep log files out of the user's home directory
os.environ.setdefault("GJPS_HOME", tempfile.mkdtemp(prefix="gjps-test-"))

# Add repo root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.core.homology_engine import HomologyEngine
from src.core.poisson import GjpsStructure
from src.core.poly_parser import parse_polynomial
from src.core.problem import EXAMPLES, build_structure

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def exgur() -> GjpsStructure:
    """lambda = z, P = xy + z^2/2, weights (1,1,1)."""
    return build_structure(EXAMPLES["exgur"])


@pytest.fixture(scope="session")
def expich() -> GjpsStructure:
    """lambda = z, P = (x^3 + y^3 + z^3)/3."""
    return build_structure(EXAMPLES["expich"])


@pytest.fixture(scope="session")
def nh() -> GjpsStructure:
    """lambda = z, P = x^2 + y^2 + z^3, weights (3,3,2)."""
    return build_structure(EXAMPLES["nh"])


@pytest.fixture(scope="session")
def jps() -> GjpsStructure:
    """Unimodular case lambda = 1."""
    return build_structure(EXAMPLES["jps"])


@pytest.fixture(scope="session")
def exgur_engine(exgur) -> HomologyEngine:
    return HomologyEngine(exgur, max_grade=6, max_workers=1)


@pytest.fixture
def p():
    """Shorthand parser for 3-variable polynomials."""
    return parse_polynomial
