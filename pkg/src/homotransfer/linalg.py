"""Dense exact linear algebra over an :class:`ExactField` (small matrices only)."""
from __future__ import annotations

from typing import List, Sequence, Tuple

from .fields import ExactField

Matrix = List[List[object]]


def _copy(rows: Sequence[Sequence[object]], field: ExactField) -> Matrix:
    return [[field(x) for x in row] for row in rows]


def rref(rows: Sequence[Sequence[object]], field: ExactField) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and the pivot columns."""
    A = _copy(rows, field)
    if not A:
        return A, []
    m, n = len(A), len(A[0])
    q = field.q
    pivots: List[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = field.inv(A[r][c])
        A[r] = [field.normalize(x * inv) for x in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                row_r = A[r]
                A[i] = [(x - f * y) % q if q else x - f * y for x, y in zip(A[i], row_r)]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A, pivots


def rank(rows: Sequence[Sequence[object]], field: ExactField) -> int:
    return len(rref(rows, field)[1])


def nullspace(rows: Sequence[Sequence[object]], ncols: int, field: ExactField) -> Matrix:
    """Basis of ``{x : A x = 0}`` for the ``len(rows) x ncols`` matrix ``A``."""
    if not rows:
        return [[field.one if j == i else field.zero for j in range(ncols)] for i in range(ncols)]
    R, pivots = rref(rows, field)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = field.neg(R[r][fc])
        basis.append(v)
    return basis


def transpose(rows: Sequence[Sequence[object]], ncols: int) -> Matrix:
    return [[row[j] for row in rows] for j in range(ncols)]


def solve(rows: Sequence[Sequence[object]], b: Sequence[object], field: ExactField):
    """One solution ``x`` of ``A x = b`` or ``None``; ``A`` is ``m x n``."""
    m = len(rows)
    if m == 0:
        return []
    n = len(rows[0])
    aug = [list(rows[i]) + [b[i]] for i in range(m)]
    R, pivots = rref(aug, field)
    if n in pivots:
        return None
    x = [field.zero] * n
    for r, pc in enumerate(pivots):
        x[pc] = R[r][n]
    return x


def inverse(rows: Sequence[Sequence[object]], field: ExactField) -> Matrix:
    n = len(rows)
    aug = [list(rows[i]) + [field.one if j == i else field.zero for j in range(n)] for i in range(n)]
    R, pivots = rref(aug, field)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in R]


def in_span(vectors: Sequence[Sequence[object]], v: Sequence[object], field: ExactField) -> bool:
    if not vectors:
        return not any(field(x) for x in v)
    return rank(list(vectors) + [list(v)], field) == rank(vectors, field)
