#!/usr/bin/env python3
"""Tests for fraction-free elimination against sympy's exact rank."""

import random
from fractions import Fraction

import pytest
import sympy as sp

from src.core.elimination import FractionFreeEliminator, RowSpace, integer_row, matrix_rank, transpose


def random_rows(rng: random.Random, nrows: int, ncols: int, density: float = 0.5):
    rows = []
    for _ in range(nrows):
        row = {}
        for j in range(ncols):
            if rng.random() < density:
                row[j] = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
        rows.append(row)
    return rows


def dense(rows, ncols):
    return sp.Matrix([[sp.Rational(r.get(j, 0).numerator, r.get(j, 0).denominator) if j in r else 0
                       for j in range(ncols)] for r in rows])


def test_rank_matches_sympy_on_random_matrices():
    """Fraction-free rank equals sympy's rational rank."""
    rng = random.Random(2024)
    for trial in range(60):
        nrows, ncols = rng.randint(1, 7), rng.randint(1, 7)
        rows = random_rows(rng, nrows, ncols)
        if trial % 3 == 0 and nrows > 1:
            # force a dependent row
            rows[-1] = {k: v * 3 for k, v in rows[0].items()}
        assert matrix_rank(rows, ncols) == dense(rows, ncols).rank(), f"trial {trial}"


def test_kernel_basis_is_annihilated():
    rng = random.Random(99)
    for _ in range(40):
        nrows, ncols = rng.randint(1, 6), rng.randint(1, 8)
        rows = random_rows(rng, nrows, ncols)
        eliminator = FractionFreeEliminator(rows, ncols)
        kernel = eliminator.kernel_basis()
        assert eliminator.rank + len(kernel) == ncols
        for vector in kernel:
            for row in rows:
                assert sum(v * vector[j] for j, v in row.items()) == 0
        if kernel:
            assert sp.Matrix([list(v) for v in kernel]).rank() == len(kernel)


def test_small_examples():
    e = FractionFreeEliminator([{0: 1, 1: 2}, {0: 2, 1: 4}], ncols=2)
    assert e.rank == 1
    assert e.pivot_columns == (0,)
    assert e.kernel_basis() == [(Fraction(-2), Fraction(1))]

    identity = FractionFreeEliminator([{i: 1} for i in range(4)], ncols=4)
    assert identity.rank == 4
    assert identity.kernel_basis() == []

    assert FractionFreeEliminator([], ncols=0).rank == 0
    with pytest.raises(IndexError):
        FractionFreeEliminator([{3: 1}], ncols=2)


def test_integer_row():
    assert integer_row({0: Fraction(1, 2), 2: Fraction(1, 3)}) == {0: 3, 2: 2}
    assert integer_row({1: 4, 3: 6}) == {1: 2, 3: 3}
    assert integer_row({0: 0}) == {}


def test_row_space_membership_and_extension():
    space = RowSpace([{0: 1, 1: 1}, {1: 1, 2: 1}], ncols=3)
    assert space.dimension == 2
    assert space.contains({0: 1, 2: -1})
    assert not space.contains({2: 1})
    assert space.extend({2: 5})
    assert space.dimension == 3
    assert not space.extend({0: 7, 1: 1})
    assert space.contains({0: Fraction(1, 3)})


def test_transpose():
    columns = [{0: 1}, {1: 2, 2: 3}]
    assert transpose(columns, 3) == [{0: 1}, {1: 2}, {1: 3}]
    assert transpose([], 2) == [{}, {}]
