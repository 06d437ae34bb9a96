"""Problem files: flat ``key = value`` descriptions of one structure.

Example file::

    # quadric with lambda = z
    lambda   = z
    casimir  = x*y + 1/2*z^2
    weights  = 1, 1, 1
    mode     = section6
    max_grade = 10

Optional keys are ``checks`` (comma list, default all),
``regularity_bound`` and ``lemma_bound``.
"""

import configparser
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from functools import reduce
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from .graded_linalg import GradeLimitError
from .poisson import GENERAL, MODES, SECTION5, SECTION6, GjpsStructure
from .poly import Polynomial, WeightSystem
from .poly_parser import PolynomialSyntaxError, parse_polynomial
from ..utils.config import (
    DEFAULT_ISOLATION_WINDOW,
    DEFAULT_LEMMA_BOUND,
    DEFAULT_MAX_GRADE,
    DEFAULT_REGULARITY_BOUND,
    MAX_SUPPORTED_GRADE,
)
from ..utils.logger import get_logger

logger = get_logger(__name__)

SECTION = "problem"

CHECKS = (
    "homology",
    "cohomology",
    "series",
    "kernels",
    "lemmas",
    "modular",
    "milnor",
    "koszul",
    "de_rham",
    "duality",
    "identities",
)

REQUIRED_KEYS = ("lambda", "casimir", "weights")
OPTIONAL_KEYS = ("max_grade", "mode", "checks", "regularity_bound", "lemma_bound")


class ProblemSpecError(ValueError):
    """Raised for unreadable, incomplete or inconsistent problem files."""


@dataclass(frozen=True)
class ProblemSpec:
    """Validated content of a problem file.

    Attributes:
        lambda_text: Polynomial text of lambda
        casimir_text: Polynomial text of P
        weights: Positive weights of x, y, z with gcd 1
        max_grade: Last grade of every table
        mode: section5, section6 or general
        checks: Verifications to run
        regularity_bound: Largest grade of the regular-sequence check
        lemma_bound: Largest grade of the lemma and kernel checks
    """

    lambda_text: str
    casimir_text: str
    weights: Tuple[int, int, int]
    max_grade: int = DEFAULT_MAX_GRADE
    mode: str = SECTION5
    checks: Tuple[str, ...] = CHECKS
    regularity_bound: int = DEFAULT_REGULARITY_BOUND
    lemma_bound: int = DEFAULT_LEMMA_BOUND
    source: Optional[str] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if len(self.weights) != 3 or any(w < 1 for w in self.weights):
            raise ProblemSpecError(f"weights must be three positive integers, got {self.weights}")
        if reduce(gcd, self.weights) != 1:
            raise ProblemSpecError(f"weights must have gcd 1, got {self.weights}")
        if self.max_grade < 0:
            raise ProblemSpecError(f"max_grade must be >= 0, got {self.max_grade}")
        if self.max_grade > MAX_SUPPORTED_GRADE:
            raise GradeLimitError(f"max_grade {self.max_grade} exceeds the limit {MAX_SUPPORTED_GRADE}")
        if self.mode not in MODES:
            raise ProblemSpecError(f"mode must be one of {', '.join(MODES)}, got {self.mode!r}")
        unknown = [c for c in self.checks if c not in CHECKS]
        if unknown:
            raise ProblemSpecError(f"Unknown checks: {', '.join(unknown)}")

    @property
    def lam(self) -> Polynomial:
        return parse_polynomial(self.lambda_text)

    @property
    def casimir(self) -> Polynomial:
        return parse_polynomial(self.casimir_text)

    def with_max_grade(self, max_grade: int) -> "ProblemSpec":
        values = dict(self.__dict__)
        values["max_grade"] = max_grade
        return ProblemSpec(**values)

    def to_dict(self) -> Dict[str, object]:
        return {
            "lambda": self.lambda_text,
            "casimir": self.casimir_text,
            "weights": list(self.weights),
            "max_grade": self.max_grade,
            "mode": self.mode,
            "checks": list(self.checks),
            "regularity_bound": self.regularity_bound,
            "lemma_bound": self.lemma_bound,
        }


def _parse_int(key: str, value: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ProblemSpecError(f"{key} must be an integer, got {value!r}") from None


def _parse_weights(value: str) -> Tuple[int, int, int]:
    parts = [p for p in value.strip().strip("()[]").replace(",", " ").split() if p]
    if len(parts) != 3:
        raise ProblemSpecError(f"weights must list three integers, got {value!r}")
    a, b, c = (_parse_int("weights", p) for p in parts)
    return a, b, c


def _parse_checks(value: str) -> Tuple[str, ...]:
    names = [c.strip().lower() for c in value.split(",") if c.strip()]
    if not names or names == ["all"]:
        return CHECKS
    return tuple(names)


def parse_problem(text: str, source: Optional[str] = None) -> ProblemSpec:
    """Parse the text of a problem file.

    Raises:
        ProblemSpecError: On unknown or missing keys and malformed values
        PolynomialSyntaxError: If a polynomial value does not parse
    """
    parser = configparser.ConfigParser(
        interpolation=None,
        inline_comment_prefixes=("#",),
        comment_prefixes=("#",),
        delimiters=("=",),
    )
    try:
        parser.read_string(f"[{SECTION}]\n{text}", source=source or "<problem>")
    except configparser.Error as e:
        raise ProblemSpecError(f"Malformed problem file: {e}") from e

    values = dict(parser[SECTION])
    unknown = sorted(set(values) - set(REQUIRED_KEYS) - set(OPTIONAL_KEYS))
    if unknown:
        raise ProblemSpecError(f"Unknown keys: {', '.join(unknown)}")
    missing = [k for k in REQUIRED_KEYS if not values.get(k)]
    if missing:
        raise ProblemSpecError(f"Missing keys: {', '.join(missing)}")

    mode = values.get("mode", SECTION5).strip().lower()
    spec = ProblemSpec(
        lambda_text=values["lambda"].strip(),
        casimir_text=values["casimir"].strip(),
        weights=_parse_weights(values["weights"]),
        max_grade=_parse_int("max_grade", values.get("max_grade", str(DEFAULT_MAX_GRADE))),
        mode=mode,
        checks=_parse_checks(values.get("checks", "all")),
        regularity_bound=_parse_int("regularity_bound", values.get("regularity_bound", str(DEFAULT_REGULARITY_BOUND))),
        lemma_bound=_parse_int("lemma_bound", values.get("lemma_bound", str(DEFAULT_LEMMA_BOUND))),
        source=source,
    )

    # both polynomials must parse before anything is built
    lam, _ = spec.lam, spec.casimir
    if spec.mode == SECTION6 and lam != Polynomial.variable(2):
        raise ProblemSpecError(f"section6 mode requires lambda = z, got {spec.lambda_text!r}")
    return spec


def load_problem(path: Union[str, Path]) -> ProblemSpec:
    """Read and validate a problem file.

    Args:
        path: Path to the file

    Returns:
        ProblemSpec

    Raises:
        ProblemSpecError: If the file cannot be read or is invalid
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ProblemSpecError(f"Cannot read problem file {path}: {e}") from e
    logger.info(f"Loaded problem file {path}")
    return parse_problem(text, source=str(path))


def build_structure(spec: ProblemSpec) -> GjpsStructure:
    """Validate the hypotheses of ``spec.mode`` and build the structure."""
    return GjpsStructure.build(
        spec.lam,
        spec.casimir,
        WeightSystem(spec.weights),
        mode=spec.mode,
        regularity_bound=spec.regularity_bound,
        isolation_window=DEFAULT_ISOLATION_WINDOW,
    )


# ----------------------------------------------------------------------
# Built-in examples
# ----------------------------------------------------------------------

def fermat_problem(n: int, mode: str = SECTION6, max_grade: int = DEFAULT_MAX_GRADE) -> ProblemSpec:
    """lambda = z, P = (x^(n+1) + y^(n+1) + z^(n+1)) / (n+1), weights (1,1,1).

    Raises:
        ProblemSpecError: If n < 1
    """
    if n < 1:
        raise ProblemSpecError(f"Fermat family needs n >= 1, got {n}")
    k = n + 1
    coefficient = Fraction(1, k)
    casimir = " + ".join(f"{coefficient}*{v}^{k}" for v in "xyz")
    return ProblemSpec("z", casimir, (1, 1, 1), max_grade=max_grade, mode=mode)


EXAMPLES: Dict[str, ProblemSpec] = {
    "exgur": ProblemSpec("z", "x*y + 1/2*z^2", (1, 1, 1), mode=SECTION6),
    "expich": fermat_problem(2),
    "nh": ProblemSpec("z", "x^2 + y^2 + z^3", (3, 3, 2), mode=SECTION6),
    "jps": ProblemSpec("1", "x*y + 1/2*z^2", (1, 1, 1), mode=GENERAL),
}


def example_names() -> List[str]:
    return sorted(EXAMPLES)


__all__ = [
    "CHECKS",
    "EXAMPLES",
    "ProblemSpec",
    "ProblemSpecError",
    "PolynomialSyntaxError",
    "build_structure",
    "example_names",
    "fermat_problem",
    "load_problem",
    "parse_problem",
]
