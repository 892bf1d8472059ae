"""Exact Gaussian elimination over k = F_q(s) on object-dtype arrays."""

from collections.abc import Sequence

import numpy as np

from ..fields.finite import FiniteField
from ..fields.ratfn import RatFn


def to_matrix(rows: Sequence[Sequence[RatFn]]) -> np.ndarray:
    m = len(rows)
    n = len(rows[0]) if m else 0
    A = np.empty((m, n), dtype=object)
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            A[i, j] = x
    return A


def rref(A: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    A = A.copy()
    m, n = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        pivot = None
        for i in range(r, m):
            if not A[i, c].is_zero():
                pivot = i
                break
        if pivot is None:
            continue
        if pivot != r:
            A[[r, pivot], :] = A[[pivot, r], :]
        inv = A[r, c].inverse()
        A[r, :] = A[r, :] * inv
        for i in range(m):
            if i != r and not A[i, c].is_zero():
                f = A[i, c]
                A[i, :] = A[i, :] - A[r, :] * f
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A, pivots


def rank(A: np.ndarray) -> int:
    return len(rref(A)[1])


def kernel_vector(A: np.ndarray, field: FiniteField) -> list[RatFn] | None:
    """A nonzero w with A w = 0, or None when the columns are independent.

    The first free column gets 1 and the other free columns 0, so the last
    nonzero entry of w sits in that free column.
    """
    R, pivots = rref(A)
    n = A.shape[1]
    free = [c for c in range(n) if c not in pivots]
    if not free:
        return None
    f = free[0]
    w = [RatFn.zero(field)] * n
    w[f] = RatFn.one(field)
    for row, c in enumerate(pivots):
        w[c] = -R[row, f]
    return w
