"""Exact integer linear algebra by Bareiss fraction-free elimination.

All arithmetic is on Python integers, so overflow cannot occur and every
verdict is exact. Each intermediate entry is a minor of the input, so each
division by the previous pivot is exact.
"""
from typing import Any, List

import numpy as np

from lsvlab.errors import PreconditionError


def _as_int_rows(M: Any) -> List[List[int]]:
    arr = np.asarray(M.entries if hasattr(M, "entries") else M)
    if arr.ndim != 2:
        raise PreconditionError(f"expected a 2-d matrix, got shape {arr.shape}")
    if arr.dtype.kind == "f" and not np.all(np.mod(arr, 1) == 0):
        raise PreconditionError("exact elimination needs integer entries")
    if arr.dtype.kind not in "iubfO":
        raise PreconditionError(f"unsupported entry dtype {arr.dtype}")
    return [[int(x) for x in row] for row in arr.tolist()]


def exact_determinant(M: Any) -> int:
    a = _as_int_rows(M)
    n = len(a)
    if any(len(row) != n for row in a):
        raise PreconditionError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1]


def exact_rank(M: Any) -> int:
    a = _as_int_rows(M)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    rank = 0
    prev = 1
    for col in range(cols):
        if rank == rows:
            break
        pivot_row = next((r for r in range(rank, rows) if a[r][col] != 0), None)
        if pivot_row is None:
            continue
        a[rank], a[pivot_row] = a[pivot_row], a[rank]
        pivot = a[rank][col]
        for i in range(rank + 1, rows):
            for j in range(col + 1, cols):
                a[i][j] = (a[i][j] * pivot - a[i][col] * a[rank][j]) // prev
            a[i][col] = 0
        prev = pivot
        rank += 1
    return rank


def exact_singularity(M: Any) -> bool:
    """True iff det(M) = 0, decided without floating point."""
    return exact_determinant(M) == 0
