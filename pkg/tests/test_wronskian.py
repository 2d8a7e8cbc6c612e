from __future__ import annotations

import math

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from hypersmt import linalg
from hypersmt.ideal import Variety
from hypersmt.poly import Poly, parse
from hypersmt.wronskian import (
    AdmissibleSet,
    WronskianError,
    find_admissible,
    multi_indices,
    proportionality_constant,
    scaling_check,
    wronskian_det,
)

from conftest import polys, to_sympy, upolys, zpoly

XY = ["x", "y"]


def sympy_wronskian(Phi, alphas, names):
    syms = sympy.symbols(names)
    rows = []
    for a in alphas:
        row = []
        for phi in Phi:
            e = to_sympy(phi, names)
            for s, n in zip(syms, a):
                e = sympy.diff(e, s, n) if n else e
            row.append(e)
        rows.append(row)
    return sympy.expand(sympy.Matrix(rows).det())


def test_univariate_monomials():
    Phi = [zpoly("1"), zpoly("z"), zpoly("z^2")]
    A = find_admissible(Phi, 2)
    assert A.alphas == ((0,), (1,), (2,))
    assert wronskian_det(Phi, A) == Poly.const(2, 1)


def test_bivariate_linear():
    Phi = [parse(s, XY) for s in ("1", "x", "y")]
    A = find_admissible(Phi, 1)
    assert A.alphas == ((0, 0), (1, 0), (0, 1))
    assert wronskian_det(Phi, A) == Poly.const(1, 2)


def test_dependent_input_rejected():
    with pytest.raises(WronskianError):
        find_admissible([zpoly("1"), zpoly("z"), zpoly("2*z + 3")], 2)
    with pytest.raises(WronskianError):
        wronskian_det([zpoly("1"), zpoly("z")], [(0,)])


def test_permutation_and_repeat():
    Phi = [zpoly("1 + z"), zpoly("z^2"), zpoly("z^3 - z")]
    A = find_admissible(Phi, 2)
    W = wronskian_det(Phi, A)
    assert wronskian_det([Phi[1], Phi[0], Phi[2]], A) == -W
    assert wronskian_det([Phi[1], Phi[2], Phi[0]], A) == W
    assert wronskian_det([Phi[0], Phi[0], Phi[2]], A).is_zero()


@pytest.mark.parametrize("k", range(5))
def test_monomial_basis_factorial_product(k):
    Phi = [zpoly(f"z^{j}") for j in range(k + 1)]
    A = find_admissible(Phi, k)
    assert wronskian_det(Phi, A) == Poly.const(math.prod(math.factorial(j) for j in range(k + 1)), 1)


def test_scaling_examples():
    Phi = [zpoly("1"), zpoly("z"), zpoly("z^2")]
    A = find_admissible(Phi, 2)
    assert wronskian_det([zpoly("z"), zpoly("z^2"), zpoly("z^3")], A) == zpoly("2*z^3")
    for h in ("z", "1", "0", "z^2 - 3*z + 1"):
        assert scaling_check(Phi, zpoly(h), A)


@given(polys(nvars=2, max_deg=2, max_terms=3))
def test_scaling_identity_bivariate(h):
    Phi = [parse(s, XY) for s in ("1", "x + y", "x*y")]
    A = find_admissible(Phi, 2)
    assert scaling_check(Phi, h, A)


@given(st.lists(upolys(max_deg=4, nonzero=True), min_size=2, max_size=3))
def test_det_matches_sympy(Phi):
    alphas = [(j,) for j in range(len(Phi))]
    assert to_sympy(wronskian_det(Phi, alphas)) == sympy_wronskian(Phi, alphas, ["z"])


def test_find_admissible_deterministic_and_nonzero():
    Phi = [parse(s, XY) for s in ("x^2", "x*y", "y^2", "x + y")]
    A1, A2 = find_admissible(Phi, 3), find_admissible(Phi, 3)
    assert A1 == A2 and A1.alphas[0] == (0, 0)
    assert sympy_wronskian(Phi, A1.alphas, XY) != 0
    assert all(sum(a) <= 3 for a in A1.alphas)


def test_multi_indices_order():
    assert multi_indices(2, 1) == [(0, 0), (1, 0), (0, 1)]
    assert len(multi_indices(3, 2)) == math.comb(5, 2)


@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=3, max_size=3))
def test_change_of_basis(U):
    Phi = [zpoly("1 + z"), zpoly("z^2 - 1"), zpoly("z^3")]
    A = AdmissibleSet(((0,), (1,), (2,)), 2)
    mixed = [sum((Poly.const(c, 1) * p for c, p in zip(row, Phi)), Poly.zero(1)) for row in U]
    assert wronskian_det(mixed, A) == wronskian_det(Phi, A) * Poly.const(linalg.det(U), 1)


@given(st.integers(-5, 5), st.integers(-5, 5))
def test_multilinear_in_first_slot(a, b):
    Phi = [zpoly("z"), zpoly("z^2 + 1"), zpoly("z^4")]
    other = zpoly("3*z^3 - 1")
    A = AdmissibleSet(((0,), (1,), (2,)), 2)
    combo = Poly.const(a, 1) * Phi[0] + Poly.const(b, 1) * other
    lhs = wronskian_det([combo] + Phi[1:], A)
    rhs = Poly.const(a, 1) * wronskian_det(Phi, A) + Poly.const(b, 1) * wronskian_det([other] + Phi[1:], A)
    assert lhs == rhs


def test_proportionality_examples():
    Phi = [zpoly("1"), zpoly("z"), zpoly("z^2")]
    A = find_admissible(Phi, 2)
    assert proportionality_constant(Phi, Phi, A) == 1
    assert proportionality_constant([Phi[1], Phi[0], Phi[2]], Phi, A) == -1
    with pytest.raises(WronskianError):
        proportionality_constant([Phi[0], Phi[0], Phi[2]], Phi, A)


def test_proportionality_conic():
    # classes on the conic (1, z, z^2): two lines and one completion versus the monomial basis
    X3 = ["x0", "x1", "x2"]
    conic = Variety(2, [parse("x0*x2 - x1^2", X3)], 1)
    f = [zpoly("1"), zpoly("z"), zpoly("z^2")]
    lines = [parse(s, X3) for s in ("6*x0 - 5*x1 + x2", "-8*x0 + 2*x1 + x2", "x0 + 3*x1 - x2")]
    from hypersmt.poly import substitute
    pulled = [substitute(q, f) for q in lines]
    basis = [substitute(b, f) for b in conic.basis_polys(1)]
    A = find_admissible(basis, 2)
    C = proportionality_constant(pulled, basis, A)
    M = sympy.Matrix([[q.coeff(e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))] for q in lines])
    B = sympy.Matrix([[b.coeff(e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))] for b in conic.basis_polys(1)])
    assert C == M.det() / B.det()
    assert to_sympy(wronskian_det(pulled, A)) == sympy.expand(C * sympy_wronskian(basis, A.alphas, ["z"]))
