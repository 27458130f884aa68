from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from joinmirror.linalg import echelon, nullspace, rank, solve


def test_nullspace_of_simple_matrix():
    rows = [[1, 2, 3], [2, 4, 6]]
    basis = nullspace(rows, 3)
    assert len(basis) == 2
    for v in basis:
        assert all(sum(Fraction(a) * b for a, b in zip(r, v)) == 0 for r in rows)


def test_rank_and_solve():
    rows = [[1, 1], [1, -1]]
    assert rank(rows, 2) == 2
    assert solve(rows, [3, 1], 2) == [2, 1]


def test_inconsistent_system():
    with pytest.raises(ValueError):
        solve([[1, 1], [2, 2]], [1, 3], 2)


def test_echelon_pivots():
    _, pivots = echelon([[0, 0, 1], [0, 2, 0]], 3)
    assert pivots == [1, 2]


entries = st.integers(-5, 5)


@given(st.lists(st.lists(entries, min_size=4, max_size=4), min_size=1, max_size=5))
def test_nullspace_vectors_are_killed(rows):
    basis = nullspace(rows, 4)
    assert len(basis) + rank(rows, 4) == 4
    for v in basis:
        for r in rows:
            assert sum(a * b for a, b in zip(r, v)) == 0
