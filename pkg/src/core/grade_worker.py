"""Grade worker for slice-rank computations.

This module provides the GradeWorker class that evaluates the ranks of
many independent graded slices, either in the calling process or fanned
out over a process pool. Results are keyed by job, so the reduction is
the same whatever order workers finish in.
"""

from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from .graded_linalg import GradedOperatorMatrix, operator_matrix, rank_kernel
from .poisson import GjpsStructure
from ..utils.config import MAX_SUPPORTED_GRADE
from ..utils.logger import get_logger

logger = get_logger(__name__)

ProgressCallback = Callable[[int, int, str], None]


class ComputationCancelled(RuntimeError):
    """Raised when a running computation is cancelled."""


@dataclass(frozen=True, order=True)
class SliceJob:
    """One operator restricted to one source grade."""

    op: str
    grade: int


@dataclass(frozen=True)
class SliceResult:
    """Rank and source dimension of a computed slice."""

    rank: int
    ncols: int
    nrows: int

    @property
    def kernel_dim(self) -> int:
        return self.ncols - self.rank


def compute_slice(job: SliceJob, structure: GjpsStructure, max_grade: int = MAX_SUPPORTED_GRADE) -> Tuple[SliceJob, SliceResult]:
    """Build one slice matrix and return its rank (module level so it pickles)."""
    matrix = operator_matrix(job.op, job.grade, structure, max_grade)
    return job, _result(matrix)


def _result(matrix: GradedOperatorMatrix) -> SliceResult:
    rank = rank_kernel(matrix, with_basis=False).rank
    return SliceResult(rank, matrix.ncols, matrix.nrows)


class GradeWorker:
    """Evaluate slice ranks serially or in worker processes.

    Args:
        structure: Structure whose complexes are evaluated
        max_workers: Number of processes; 1 runs in the calling process
        max_grade: Largest grade accepted by operator_matrix
        progress_callback: Optional callback(current, total, status)
    """

    def __init__(
        self,
        structure: GjpsStructure,
        max_workers: int = 1,
        max_grade: int = MAX_SUPPORTED_GRADE,
        progress_callback: Optional[ProgressCallback] = None,
    ):
        self.structure = structure
        self.max_workers = max(1, int(max_workers))
        self.max_grade = max_grade
        self.progress_callback = progress_callback
        self._cancelled = False

        logger.debug(f"GradeWorker initialized with {self.max_workers} worker(s)")

    def cancel(self) -> None:
        """Cancel the running batch; pending jobs are dropped."""
        self._cancelled = True
        logger.info("Grade computation cancelled")

    def _report_progress(self, current: int, total: int, status: str) -> None:
        if self.progress_callback:
            self.progress_callback(current, total, status)

    def run(self, jobs: Iterable[SliceJob]) -> Dict[SliceJob, SliceResult]:
        """Compute every job once.

        Args:
            jobs: Slices to evaluate; duplicates are computed once

        Returns:
            Mapping job -> SliceResult

        Raises:
            ComputationCancelled: If cancel() was called during the batch
        """
        pending: List[SliceJob] = sorted(set(jobs))
        total = len(pending)
        results: Dict[SliceJob, SliceResult] = {}
        if not pending:
            return results

        if self.max_workers == 1 or total == 1:
            for index, job in enumerate(pending, start=1):
                if self._cancelled:
                    raise ComputationCancelled(f"Cancelled after {index - 1}/{total} slices")
                _, result = compute_slice(job, self.structure, self.max_grade)
                results[job] = result
                self._report_progress(index, total, f"{job.op} at grade {job.grade}")
            return results

        logger.info(f"Computing {total} slices on {self.max_workers} processes")
        with ProcessPoolExecutor(max_workers=self.max_workers) as executor:
            futures = [executor.submit(compute_slice, job, self.structure, self.max_grade) for job in pending]
            for index, future in enumerate(as_completed(futures), start=1):
                if self._cancelled:
                    for f in futures:
                        f.cancel()
                    raise ComputationCancelled(f"Cancelled after {index - 1}/{total} slices")
                job, result = future.result()
                results[job] = result
                self._report_progress(index, total, f"{job.op} at grade {job.grade}")
        return results
