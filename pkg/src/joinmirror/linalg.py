"""Exact linear algebra over the rationals.

Rows are cleared to integers and reduced by fraction-free elimination,
with each row divided by its content after every step so entries stay small.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Sequence, Tuple


def _integer_row(row: Sequence) -> List[int]:
    row = [Fraction(x) for x in row]
    lcm = 1
    for x in row:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in row]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def echelon(rows: Sequence[Sequence], ncols: int) -> Tuple[List[List[int]], List[int]]:
    """Fraction-free row echelon form.

    Returns (reduced rows, pivot columns).  Each returned row has its pivot at
    the matching entry of the pivot list, and zeros in that column below it."""
    mat = [_integer_row(r) for r in rows]
    mat = [r for r in mat if any(r)]
    pivots: List[int] = []
    rank = 0
    for col in range(ncols):
        if rank == len(mat):
            break
        pivot_row = None
        best = None
        for i in range(rank, len(mat)):
            v = mat[i][col]
            if v and (best is None or abs(v) < best):
                pivot_row, best = i, abs(v)
                if best == 1:
                    break
        if pivot_row is None:
            continue
        mat[rank], mat[pivot_row] = mat[pivot_row], mat[rank]
        prow = mat[rank]
        p = prow[col]
        for i in range(rank + 1, len(mat)):
            row = mat[i]
            f = row[col]
            if f:
                mat[i] = [p * a - f * b for a, b in zip(row, prow)]
        pivots.append(col)
        rank += 1
        # dividing each row by its content plays the role of the Bareiss
        # division by the previous pivot and keeps entries small
        for i in range(rank, len(mat)):
            g = 0
            for v in mat[i]:
                g = math.gcd(g, v)
                if g == 1:
                    break
            if g > 1:
                mat[i] = [v // g for v in mat[i]]
    return mat[:rank], pivots


def nullspace(rows: Sequence[Sequence], ncols: int) -> List[List[Fraction]]:
    """Basis of {v : rows * v = 0}, one vector per free column.

    Each basis vector has a 1 in its free column and 0 in the other free
    columns (reduced form), so the basis is canonical."""
    ech, pivots = echelon(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for r in range(len(pivots) - 1, -1, -1):
            row = ech[r]
            pc = pivots[r]
            acc = Fraction(0)
            for c in range(pc + 1, ncols):
                if row[c] and v[c]:
                    acc += row[c] * v[c]
            v[pc] = -acc / row[pc]
        basis.append(v)
    return basis


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    return len(echelon(rows, ncols)[1])


def solve(rows: Sequence[Sequence], rhs: Sequence, ncols: int) -> List[Fraction]:
    """One exact solution of rows * v = rhs (free variables set to 0).

    Raises ValueError if the system is inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    ech, pivots = echelon(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        raise ValueError("inconsistent linear system")
    v = [Fraction(0)] * ncols
    for r in range(len(pivots) - 1, -1, -1):
        row = ech[r]
        pc = pivots[r]
        acc = Fraction(row[ncols])
        for c in range(pc + 1, ncols):
            if row[c] and v[c]:
                acc -= row[c] * v[c]
        v[pc] = acc / row[pc]
    return v
