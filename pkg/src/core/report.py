"""Analysis pipeline and its report.

``build_report`` runs the checks a problem file asks for and collects the
results in a ``Report``. The JSON body is deterministic: keys are sorted,
lists keep grade order and timing stays out of it.
"""

import json
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .homology_engine import (
    FAIL,
    SKIP,
    HomologyEngine,
    Verdict,
    closed_form_series,
    is_quadratic_case,
    series_from_sequences,
)
from .grade_worker import ProgressCallback
from .poisson import GENERAL, GjpsStructure, modular_field
from .poly import Polynomial
from .problem import ProblemSpec
from .series import SeriesTruncation
from .singularity import NON_ISOLATED, milnor_number, sing_basis
from ..utils.config import APP_NAME, APP_VERSION
from ..utils.logger import get_logger

logger = get_logger(__name__)


@dataclass
class Report:
    """Everything one analysis produced.

    Attributes:
        problem: Echo of the problem file
        structure: Echo of the validated structure
        hypotheses: Verdict per structural check
        homology: PH_i tables, ``{"PH_0": {"offset": .., "dims": [..]}}``
        cohomology: PH^i tables in X-grading
        series: Computed vs sequence-derived vs printed expansions
        verdicts: Every automated check in execution order
        milnor: Singularity data
        timing: Wall-clock seconds per stage (not part of the JSON body)
    """

    problem: Dict[str, object]
    structure: Dict[str, object]
    hypotheses: List[Dict[str, object]]
    homology: Dict[str, Dict[str, object]] = field(default_factory=dict)
    cohomology: Dict[str, Dict[str, object]] = field(default_factory=dict)
    series: Dict[str, Dict[str, object]] = field(default_factory=dict)
    verdicts: List[Verdict] = field(default_factory=list)
    milnor: Dict[str, object] = field(default_factory=dict)
    timing: Dict[str, float] = field(default_factory=dict)

    @property
    def failed(self) -> List[Verdict]:
        return [v for v in self.verdicts if v.status == FAIL]

    def verdict(self, name: str) -> Optional[Verdict]:
        return next((v for v in self.verdicts if v.name == name), None)

    def to_dict(self) -> Dict[str, object]:
        return {
            "generator": f"{APP_NAME} {APP_VERSION}",
            "problem": self.problem,
            "structure": self.structure,
            "hypotheses": self.hypotheses,
            "homology": self.homology,
            "cohomology": self.cohomology,
            "series": self.series,
            "verdicts": [v.to_dict() for v in self.verdicts],
            "milnor": self.milnor,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def render_tables(self) -> str:
        """Plain-text rendering for the terminal."""
        lines = [f"{APP_NAME} {APP_VERSION}", ""]
        lines.append(f"lambda = {self.structure['lambda']}, P = {self.structure['casimir']}, "
                     f"weights = {tuple(self.structure['weights'])}, mode = {self.structure['mode']}")
        lines.append(f"w(lambda) = {self.structure['lambda_degree']}, w(P) = {self.structure['casimir_degree']}, "
                     f"w_pi = {self.structure['bivector_weight']} (nominal shift {self.structure['nominal_shift']})")
        lines.append("")
        lines.append("Hypotheses:")
        for h in self.hypotheses:
            status = "PASS" if h["passed"] else "FAIL"
            detail = f"  {h['detail']}" if h["detail"] else ""
            lines.append(f"  {status:<10} {h['name']}{detail}")

        for title, tables in (("Homology (homological grading)", self.homology),
                              ("Cohomology (X-grading)", self.cohomology)):
            if not tables:
                continue
            lines.append("")
            lines.append(f"{title}:")
            for name, table in tables.items():
                dims = ",".join(str(d) for d in table["dims"])  # type: ignore[union-attr]
                lines.append(f"  {name:<6} from grade {table['offset']:>3}: {dims}")

        if self.series:
            lines.append("")
            lines.append("Series:")
            for name, entry in self.series.items():
                lines.append(f"  {name}: computed {entry['computed']}")
                lines.append(f"  {'':<{len(name)}}  sequence {entry['sequence']}  = {entry['sequence_form']}")
                if entry.get("printed") is not None:
                    lines.append(f"  {'':<{len(name)}}  printed  {entry['printed']}  = {entry['printed_form']}")

        if self.milnor:
            lines.append("")
            lines.append("Singularity:")
            for key in sorted(self.milnor):
                lines.append(f"  {key}: {self.milnor[key]}")

        if self.verdicts:
            lines.append("")
            lines.append("Checks:")
            lines.extend(f"  {v.status:<10} {v.name}  {v.detail}" for v in self.verdicts)

        if self.timing:
            lines.append("")
            total = sum(self.timing.values())
            lines.append(f"Computed in {total:.2f}s")
        return "\n".join(lines) + "\n"

    def render_verdicts(self) -> str:
        """One line per check for ``verify``."""
        return "".join(f"{v.status:<10} {v.name}  {v.detail}\n" for v in self.verdicts)


def _table(truncation: SeriesTruncation) -> Dict[str, object]:
    return {"offset": truncation.offset, "dims": truncation.to_list()}


def structure_summary(s: GjpsStructure) -> Dict[str, object]:
    summary: Dict[str, object] = {
        "lambda": str(s.lam),
        "casimir": str(s.casimir),
        "weights": list(s.weights.weights),
        "mode": s.mode,
        "lambda_degree": s.lambda_degree,
        "casimir_degree": s.casimir_degree,
        "bivector_weight": s.bivector_weight,
        "nominal_shift": s.nominal_shift,
        "modular_field": str(modular_field(s).field),
    }
    if s.planar is not None:
        summary.update({
            "planar_casimir": str(s.planar.casimir.to_string(("x", "y"))),
            "planar_weights": list(s.planar.weights.weights),
            "alpha": s.planar.alpha,
            "r": s.planar.r,
            "c": str(s.planar.c),
            "normalized_casimir": str(s.normalized_casimir),
        })
    return summary


def milnor_summary(s: GjpsStructure, engine: HomologyEngine) -> Dict[str, object]:
    data: Dict[str, object] = {"milnor_number": s.milnor}
    if s.milnor != NON_ISOLATED:
        data["sing_basis"] = [str(Polynomial.monomial(m)) for m in sing_basis(s.casimir, s.weights)]
    if s.planar is not None:
        data["planar_milnor_number"] = milnor_number(s.planar.casimir, s.planar.weights)
        data["sing_prime_basis"] = [str(Polynomial.monomial(m)) for m in engine.sing_prime_basis()]
    return data


def _series_entry(i: int, s: GjpsStructure, computed: SeriesTruncation) -> Dict[str, object]:
    n = len(computed)
    derived = series_from_sequences(i, s)
    entry: Dict[str, object] = {
        "computed": computed.to_list(),
        "sequence": derived.expand(n),
        "sequence_form": str(derived),
        "printed": None,
        "printed_form": None,
    }
    if is_quadratic_case(s):
        printed = closed_form_series(i)
        entry["printed"] = printed.expand(n)
        entry["printed_form"] = str(printed)
    return entry


def build_report(
    spec: ProblemSpec,
    structure: GjpsStructure,
    progress_callback: Optional[ProgressCallback] = None,
    max_workers: Optional[int] = None,
    engine: Optional[HomologyEngine] = None,
) -> Report:
    """Run every check named in ``spec.checks`` and collect the results.

    Args:
        spec: Problem description
        structure: Structure built from ``spec``
        progress_callback: Optional callback(current, total, status)
        max_workers: Worker processes for slice ranks
        engine: Engine to reuse (a fresh one by default)

    Returns:
        Report
    """
    engine = engine or HomologyEngine(structure, spec.max_grade, progress_callback, max_workers)
    checks = set(spec.checks)
    bound = min(spec.lemma_bound, spec.max_grade)
    report = Report(
        problem=spec.to_dict(),
        structure=structure_summary(structure),
        hypotheses=[{"name": h.name, "passed": h.passed, "detail": h.detail} for h in structure.hypotheses],
    )

    def stage(name: str, fn) -> None:
        started = time.perf_counter()
        fn()
        report.timing[name] = time.perf_counter() - started
        logger.info(f"Stage {name} done in {report.timing[name]:.2f}s")

    def homology() -> None:
        engine.precompute_all()
        for i in range(4):
            report.homology[f"PH_{i}"] = _table(engine.homology_dims(i))

    def cohomology() -> None:
        engine.precompute_all()
        for i in range(4):
            report.cohomology[f"PH^{i}"] = _table(engine.cohomology_dims(i))
        report.verdicts.extend(engine.theorem_checks())

    def series() -> None:
        if structure.mode == GENERAL:
            report.verdicts.extend(engine.series_checks())
            return
        grades = range(0, spec.max_grade + 1)
        for i in range(4):
            report.series[f"PH_{i}"] = _series_entry(i, structure, engine.homology_dims(i, grades))
        report.verdicts.extend(engine.series_checks())
        report.verdicts.append(engine.euler_check())

    def kernels() -> None:
        if structure.mode == GENERAL:
            report.verdicts.append(Verdict("kernel_structure", SKIP, "needs the regular-sequence hypotheses"))
            return
        report.verdicts.extend(engine.kernel_structure_suite(bound))

    def milnor() -> None:
        report.milnor = milnor_summary(structure, engine)
        report.verdicts.append(engine.milnor_relation_check())

    stages = [
        ("homology", homology),
        ("cohomology", cohomology),
        ("series", series),
        ("kernels", kernels),
        ("lemmas", lambda: report.verdicts.extend(engine.lemma_suite(bound))),
        ("modular", lambda: report.verdicts.extend([engine.modular_field_check(), engine.modular_triviality_check()])),
        ("milnor", milnor),
        ("koszul", lambda: report.verdicts.append(engine.koszul_exactness_check(bound))),
        ("de_rham", lambda: report.verdicts.append(engine.de_rham_exactness_check(bound))),
        ("duality", lambda: report.verdicts.append(engine.poincare_duality_check())),
        ("identities", lambda: report.verdicts.append(engine.square_zero_check(bound))),
    ]
    for name, fn in stages:
        if name in checks:
            stage(name, fn)

    logger.info(f"Report ready: {len(report.verdicts)} checks, {len(report.failed)} failed")
    return report
