"""Dense exact linear algebra over the rationals (lists of Fractions)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def to_frac(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    A = to_frac(rows)
    if not A:
        return A, []
    m, n = len(A), len(A[0])
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((i for i in range(r, m) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A, pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    """Basis of ``{x : A x = 0}``."""
    if not rows:
        if ncols is None:
            raise ValueError("ncols needed for an empty matrix")
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    R, pivots = rref(rows)
    n = len(R[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -R[i][fc]
        basis.append(v)
    return basis


def left_kernel(rows: Sequence[Sequence]) -> Matrix:
    """Basis of ``{y : y^T A = 0}``, i.e. linear dependencies among rows."""
    if not rows:
        return []
    return nullspace(transpose(rows))


def transpose(rows: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*rows)]


def det(rows: Sequence[Sequence]) -> Fraction:
    A = to_frac(rows)
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("matrix is not square")
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            d = -d
        d *= A[c][c]
        inv = 1 / A[c][c]
        for i in range(c + 1, n):
            if A[i][c]:
                f = A[i][c] * inv
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return d


def solve(A: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Unique solution of a square nonsingular system."""
    n = len(A)
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ZeroDivisionError("singular system")
    return [R[i][n] for i in range(n)]


def express_in_basis(vectors: Sequence[Sequence], basis: Sequence[Sequence]) -> Matrix:
    """Coordinates ``C`` with ``vectors[i] = sum_j C[i][j] * basis[j]``.

    ``basis`` must be linearly independent and span every vector.
    """
    k = len(basis)
    Bt = transpose(basis)
    out = []
    for v in vectors:
        aug = [list(row) + [x] for row, x in zip(Bt, v)]
        R, pivots = rref(aug)
        if k in pivots:
            raise ValueError("vector not in the span of the basis")
        if pivots != list(range(k)):
            raise ValueError("basis vectors are linearly dependent")
        out.append([R[i][k] for i in range(k)])
    return out


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    Bt = transpose(B)
    return [[sum((Fraction(x) * y for x, y in zip(row, col)), Fraction(0)) for col in Bt] for row in A]
