"""Two-phase dense simplex in exact rational arithmetic (Bland's rule)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class LPInfeasible(ValueError):
    pass


class LPUnbounded(ValueError):
    pass


def _pivot(T: list[list[Fraction]], obj: list[Fraction], r: int, j: int) -> None:
    prow = T[r]
    inv = 1 / prow[j]
    prow[:] = [x * inv for x in prow]
    nz = [c for c, x in enumerate(prow) if x]
    for row in T:
        if row is prow:
            continue
        f = row[j]
        if f:
            for c in nz:
                row[c] -= f * prow[c]
    f = obj[j]
    if f:
        for c in nz:
            obj[c] -= f * prow[c]


def _run(T, obj, basis, allowed: int) -> None:
    """Minimize; ``obj`` holds reduced costs and ``-z`` in its last slot."""
    while True:
        j = next((c for c in range(allowed) if obj[c] < 0), None)
        if j is None:
            return
        best = None
        for i, row in enumerate(T):
            if row[j] > 0:
                ratio = row[-1] / row[j]
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            raise LPUnbounded("objective unbounded")
        r = best[1]
        _pivot(T, obj, r, j)
        basis[r] = j


def linprog_exact(c: Sequence, A_ub: Sequence[Sequence] = (), b_ub: Sequence = (),
                  A_eq: Sequence[Sequence] = (), b_eq: Sequence = (),
                  maximize: bool = False) -> tuple[list[Fraction], Fraction]:
    """Optimize ``c.x`` over ``A_ub x <= b_ub, A_eq x = b_eq, x >= 0``.

    Returns the optimal vertex and objective value, exactly.
    """
    n = len(c)
    c = [Fraction(x) for x in c]
    if maximize:
        c = [-x for x in c]
    n_ub = len(A_ub)
    rows = []
    for i, (a, b) in enumerate(zip(A_ub, b_ub)):
        row = [Fraction(x) for x in a] + [Fraction(int(s == i)) for s in range(n_ub)]
        rows.append((row, Fraction(b)))
    for a, b in zip(A_eq, b_eq):
        rows.append(([Fraction(x) for x in a] + [Fraction(0)] * n_ub, Fraction(b)))
    m = len(rows)
    nstruct = n + n_ub
    T = []
    for i, (row, b) in enumerate(rows):
        if b < 0:
            row, b = [-x for x in row], -b
        T.append(row + [Fraction(int(s == i)) for s in range(m)] + [b])
    basis = [nstruct + i for i in range(m)]
    width = nstruct + m + 1
    obj = [Fraction(0)] * width
    for row in T:
        for col in range(nstruct):
            obj[col] -= row[col]
        obj[-1] -= row[-1]
    _run(T, obj, basis, nstruct)
    if -obj[-1] != 0:
        raise LPInfeasible("constraints are infeasible")
    # drive remaining artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(T):
        if basis[i] >= nstruct:
            j = next((col for col in range(nstruct) if T[i][col]), None)
            if j is None:
                del T[i]
                del basis[i]
                continue
            _pivot(T, obj, i, j)
            basis[i] = j
        i += 1
    cost = c + [Fraction(0)] * (width - 1 - n)
    obj = cost[:nstruct] + [Fraction(0)] * m + [Fraction(0)]
    for i, row in enumerate(T):
        cb = cost[basis[i]]
        if cb:
            for col in range(width):
                obj[col] -= cb * row[col]
    _run(T, obj, basis, nstruct)
    x = [Fraction(0)] * n
    for i, b in enumerate(basis):
        if b < n:
            x[b] = T[i][-1]
    value = sum((ci * xi for ci, xi in zip(c, x)), Fraction(0))
    return x, (-value if maximize else value)
