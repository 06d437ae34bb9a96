"""Exact fraction-free elimination on sparse rows.

Rows are dicts ``column -> int`` after clearing denominators. Row
operations combine two rows with gcd-reduced integer multipliers and then
divide out the row content, so entries stay integral and small.

The forward pass walks columns left to right and picks, among the rows
not yet used as pivots, the one with the smallest pivot magnitude (ties
broken by row length). That leaves pivot rows in echelon form: the row
chosen for column c has no entries left of c. The optional second pass
clears every pivot column above its pivot, which is what kernel bases
need.
"""

from collections import defaultdict
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import DefaultDict, Dict, Iterable, List, Mapping, Optional, Set, Tuple

SparseVector = Mapping[int, Fraction]
IntRow = Dict[int, int]


def integer_row(vector: Mapping[int, object]) -> IntRow:
    """Scale a rational sparse vector to a primitive integer row."""
    entries = {k: Fraction(v) for k, v in vector.items() if v}
    if not entries:
        return {}
    denominator = reduce(lcm, (v.denominator for v in entries.values()), 1)
    row = {k: int(v * denominator) for k, v in entries.items()}
    return _primitive(row)


def _primitive(row: IntRow) -> IntRow:
    content = reduce(gcd, row.values(), 0)
    if content > 1:
        return {k: v // content for k, v in row.items()}
    return row


def _combine(target: IntRow, source: IntRow, column: int) -> IntRow:
    """Return a primitive multiple of ``target`` with ``column`` cleared by ``source``."""
    a = target[column]
    p = source[column]
    g = gcd(a, p)
    keep = p // g
    take = a // g
    result = {k: v * keep for k, v in target.items()}
    for k, v in source.items():
        value = result.get(k, 0) - v * take
        if value:
            result[k] = value
        else:
            result.pop(k, None)
    return _primitive(result)


class FractionFreeEliminator:
    """Rank, pivots and null space of a sparse rational matrix given by rows.

    Args:
        rows: Sparse rows, ``column -> rational``
        ncols: Number of columns

    Example:
        >>> e = FractionFreeEliminator([{0: 1, 1: 2}, {0: 2, 1: 4}], ncols=2)
        >>> e.rank
        1
    """

    def __init__(self, rows: Iterable[Mapping[int, object]], ncols: int):
        self.ncols = ncols
        self.rows: List[IntRow] = [r for r in (integer_row(row) for row in rows) if r]
        self._column_rows: DefaultDict[int, Set[int]] = defaultdict(set)
        for index, row in enumerate(self.rows):
            for column in row:
                if not 0 <= column < ncols:
                    raise IndexError(f"Column {column} outside 0..{ncols - 1}")
                self._column_rows[column].add(index)
        self.pivots: List[Tuple[int, int]] = []
        self._forward_done = False
        self._reduced = False

    def _replace(self, index: int, new_row: IntRow) -> None:
        old_row = self.rows[index]
        for column in old_row.keys() - new_row.keys():
            self._column_rows[column].discard(index)
        for column in new_row.keys() - old_row.keys():
            self._column_rows[column].add(index)
        self.rows[index] = new_row

    def forward(self) -> "FractionFreeEliminator":
        """First pass: echelon form by columns, smallest-pivot heuristic."""
        if self._forward_done:
            return self
        used: Set[int] = set()
        for column in range(self.ncols):
            candidates = [i for i in self._column_rows.get(column, ()) if i not in used]
            if not candidates:
                continue
            pivot = min(candidates, key=lambda i: (abs(self.rows[i][column]), len(self.rows[i]), i))
            used.add(pivot)
            pivot_row = self.rows[pivot]
            for index in candidates:
                if index != pivot:
                    self._replace(index, _combine(self.rows[index], pivot_row, column))
            self.pivots.append((pivot, column))
        self._forward_done = True
        return self

    def back_substitute(self) -> "FractionFreeEliminator":
        """Second pass: clear each pivot column in the earlier pivot rows."""
        self.forward()
        if self._reduced:
            return self
        for pivot, column in reversed(self.pivots):
            pivot_row = self.rows[pivot]
            for index in list(self._column_rows.get(column, ())):
                if index != pivot:
                    self._replace(index, _combine(self.rows[index], pivot_row, column))
        self._reduced = True
        return self

    @property
    def rank(self) -> int:
        self.forward()
        return len(self.pivots)

    @property
    def pivot_columns(self) -> Tuple[int, ...]:
        self.forward()
        return tuple(column for _, column in self.pivots)

    def kernel_basis(self) -> List[Tuple[Fraction, ...]]:
        """Basis of {v : row . v = 0 for every row}, one vector per free column."""
        self.back_substitute()
        pivot_of = {column: self.rows[row] for row, column in self.pivots}
        free_columns = [c for c in range(self.ncols) if c not in pivot_of]
        basis: List[Tuple[Fraction, ...]] = []
        for free in free_columns:
            vector = [Fraction(0)] * self.ncols
            vector[free] = Fraction(1)
            for column, row in pivot_of.items():
                entry = row.get(free)
                if entry:
                    vector[column] = Fraction(-entry, row[column])
            basis.append(tuple(vector))
        return basis


class RowSpace:
    """Echelon basis of a span of sparse vectors with membership tests.

    Args:
        vectors: Spanning vectors, ``column -> rational``
        ncols: Ambient dimension
    """

    def __init__(self, vectors: Iterable[Mapping[int, object]], ncols: int):
        self.ncols = ncols
        eliminator = FractionFreeEliminator(vectors, ncols).forward()
        self._pivot_rows: Dict[int, IntRow] = {
            column: eliminator.rows[row] for row, column in eliminator.pivots
        }

    @property
    def dimension(self) -> int:
        return len(self._pivot_rows)

    @property
    def pivot_columns(self) -> Tuple[int, ...]:
        return tuple(sorted(self._pivot_rows))

    def reduce(self, vector: Mapping[int, object]) -> IntRow:
        """Remainder of ``vector`` (up to a nonzero scalar) modulo the span."""
        row = integer_row(vector)
        while row:
            column = min(row)
            pivot_row = self._pivot_rows.get(column)
            if pivot_row is None:
                return row
            row = _combine(row, pivot_row, column)
        return row

    def contains(self, vector: Mapping[int, object]) -> bool:
        return not self.reduce(vector)

    def extend(self, vector: Mapping[int, object]) -> bool:
        """Add ``vector`` to the span; True when the dimension grew."""
        remainder = self.reduce(vector)
        if not remainder:
            return False
        self._pivot_rows[min(remainder)] = remainder
        return True


def matrix_rank(rows: Iterable[Mapping[int, object]], ncols: int) -> int:
    return FractionFreeEliminator(rows, ncols).rank


def transpose(columns: Iterable[Mapping[int, object]], nrows: Optional[int] = None) -> List[Dict[int, object]]:
    """Column-major sparse matrix to row-major."""
    rows: DefaultDict[int, Dict[int, object]] = defaultdict(dict)
    for j, column in enumerate(columns):
        for i, value in column.items():
            if value:
                rows[i][j] = value
    count = nrows if nrows is not None else (max(rows) + 1 if rows else 0)
    return [rows.get(i, {}) for i in range(count)]
