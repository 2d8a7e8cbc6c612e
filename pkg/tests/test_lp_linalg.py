from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from hypersmt import linalg
from hypersmt.lp import LPInfeasible, LPUnbounded, linprog_exact

small = st.integers(-5, 5)
matrices = st.integers(1, 4).flatmap(
    lambda n: st.integers(1, 4).flatmap(
        lambda m: st.lists(st.lists(small, min_size=m, max_size=m), min_size=n, max_size=n)))


@given(matrices)
def test_rank_and_nullspace_match_sympy(rows):
    M = sympy.Matrix(rows)
    assert linalg.rank(rows) == M.rank()
    ns = linalg.nullspace(rows)
    assert len(ns) == M.cols - M.rank()
    for v in ns:
        assert all(sum(Fraction(a) * b for a, b in zip(row, v)) == 0 for row in rows)


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_det_matches_sympy(rows):
    assert linalg.det(rows) == sympy.Matrix(rows).det()


def test_left_kernel_names_dependency():
    rows = [[1, 0], [0, 1], [0, 2]]
    (k,) = linalg.left_kernel(rows)
    assert [x / k[2] for x in k] == [0, -2, 1]


def test_lp_small_problem():
    # maximize x + y subject to x + 2y <= 4, 3x + y <= 6
    x, val = linprog_exact([1, 1], [[1, 2], [3, 1]], [4, 6], maximize=True)
    assert val == Fraction(14, 5)
    assert x == [Fraction(8, 5), Fraction(6, 5)]


def test_lp_equality_and_errors():
    x, val = linprog_exact([1, 0], A_eq=[[1, 1]], b_eq=[3], A_ub=[[0, 1]], b_ub=[2])
    assert val == 1 and x == [1, 2]
    with pytest.raises(LPInfeasible):
        linprog_exact([1], A_ub=[[1]], b_ub=[-1])
    with pytest.raises(LPUnbounded):
        linprog_exact([1], A_ub=[[-1]], b_ub=[0], maximize=True)


@given(st.lists(st.lists(st.integers(0, 4), min_size=2, max_size=2), min_size=1, max_size=4),
       st.lists(st.integers(1, 9), min_size=4, max_size=4), st.tuples(small, small))
def test_lp_matches_vertex_enumeration(A, b, c):
    """Bounded box plus random <= rows: compare with brute-force vertices."""
    A = A + [[1, 0], [0, 1]]
    b = b[: len(A) - 2] + [5, 5]
    x, val = linprog_exact(list(c), A, b, maximize=True)
    best = None
    import itertools
    for r1, r2 in itertools.combinations(range(len(A) + 2), 2):
        rows = A + [[-1, 0], [0, -1]]
        rhs = b + [0, 0]
        M = [rows[r1], rows[r2]]
        if linalg.det(M) == 0:
            continue
        v = linalg.solve(M, [rhs[r1], rhs[r2]])
        if all(sum(Fraction(a) * xi for a, xi in zip(row, v)) <= bi for row, bi in zip(rows, rhs)):
            obj = c[0] * v[0] + c[1] * v[1]
            best = obj if best is None else max(best, obj)
    assert val == best
